#ifndef CERTKIT_REPORT_HPP
#define CERTKIT_REPORT_HPP

#include <string>

#include <json.hpp>

// Certification reports shared by the C API and the CLI: a command name,
// echoed inputs, a verdict, and a certificate with the data needed to
// re-verify the verdict offline.
namespace certkit::report {

using json = nlohmann::ordered_json;

struct Report {
    std::string command;
    json inputs = json::object();
    std::string verdict;
    json certificate = json::object();
    long elapsed_ms = 0;

    int exit_code() const;
    std::string render(const std::string& format) const; // "text" or "json"
};

// exact integers travel as decimal strings in reports
std::string num(long long v);

int verdict_exit_code(const std::string& verdict);

} // namespace certkit::report

#endif
