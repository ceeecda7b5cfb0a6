#include "report.hpp"

#include <sstream>

namespace certkit::report {

std::string num(long long v) { return std::to_string(v); }

int verdict_exit_code(const std::string& verdict) {
    if (verdict == "dense" || verdict == "accepted" || verdict == "found" ||
        verdict == "verified")
        return 0;
    if (verdict == "not-dense" || verdict == "rejected" || verdict == "exhausted" ||
        verdict == "failed")
        return 1;
    if (verdict == "inconclusive") return 2;
    return 64;
}

int Report::exit_code() const { return verdict_exit_code(verdict); }

namespace {

void render_text_value(std::ostringstream& os, const json& v, const std::string& prefix) {
    if (v.is_object()) {
        for (const auto& [k, val] : v.items())
            render_text_value(os, val, prefix.empty() ? k : prefix + "." + k);
    } else if (v.is_array()) {
        size_t i = 0;
        for (const auto& val : v) render_text_value(os, val, prefix + "[" + std::to_string(i++) + "]");
        if (v.empty()) os << "  " << prefix << " = []\n";
    } else {
        os << "  " << prefix << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
}

} // namespace

std::string Report::render(const std::string& format) const {
    if (format == "json") {
        json out;
        out["schema"] = 1;
        out["command"] = command;
        out["inputs"] = inputs;
        out["verdict"] = verdict;
        out["certificate"] = certificate;
        out["elapsed_ms"] = elapsed_ms;
        return out.dump();
    }
    std::ostringstream os;
    os << "command: " << command << "\n";
    if (!inputs.empty()) {
        os << "inputs:\n";
        render_text_value(os, inputs, "");
    }
    os << "verdict: " << verdict << "\n";
    if (!certificate.empty()) {
        os << "certificate:\n";
        render_text_value(os, certificate, "");
    }
    return os.str();
}

} // namespace certkit::report
