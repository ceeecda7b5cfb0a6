#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "certkit.h"

using nlohmann::json;

static json render_json(ck_report* rep) {
    char* s = ck_report_render(rep, "json");
    json j = json::parse(s);
    ck_string_free(s);
    return j;
}

TEST_CASE("g-invariant round trip") {
    ck_report* rep = nullptr;
    REQUIRE(ck_g_invariant(-1, 5, "none", &rep) == CK_OK);
    auto j = render_json(rep);
    CHECK(j["schema"] == 1);
    CHECK(j["command"] == "g-invariant");
    CHECK(j["certificate"]["g"] == "1");
    CHECK(ck_report_exit_code(rep) == 0);
    ck_report_free(rep);
}

TEST_CASE("verdict strings and exit codes") {
    ck_report* rep = nullptr;
    REQUIRE(ck_density_check(-7, 2, "5", "none", &rep) == CK_OK);
    CHECK(std::string(ck_report_verdict(rep)) == "dense");
    CHECK(ck_report_exit_code(rep) == 0);
    ck_report_free(rep);

    REQUIRE(ck_density_check(-7, 2, "", "none", &rep) == CK_OK);
    CHECK(std::string(ck_report_verdict(rep)) == "not-dense");
    CHECK(ck_report_exit_code(rep) == 1);
    ck_report_free(rep);
}

TEST_CASE("invalid arguments are reported, not crashed") {
    ck_report* rep = nullptr;
    CHECK(ck_g_invariant(12, 5, "none", &rep) == CK_ERR_INVALID); // 12 not squarefree
    CHECK(std::strlen(ck_last_error()) > 0);
    CHECK(ck_g_invariant(-1, 6, "none", &rep) == CK_ERR_INVALID); // 6 not prime
    CHECK(ck_isogclass(2, 2, &rep) == CK_ERR_INVALID);
    CHECK(ck_weil(10, 2, 2, 0, &rep) == CK_ERR_INVALID); // real roots
    CHECK(ck_g_invariant(-1, 5, "bogus", &rep) == CK_ERR_INVALID);
}

TEST_CASE("json output is deterministic apart from timing") {
    auto strip = [](json j) {
        j.erase("elapsed_ms");
        return j;
    };
    ck_report *a = nullptr, *b = nullptr;
    REQUIRE(ck_witness(-1, 5, "none", 100, "", &a) == CK_OK);
    REQUIRE(ck_witness(-1, 5, "none", 100, "", &b) == CK_OK);
    CHECK(strip(render_json(a)) == strip(render_json(b)));
    ck_report_free(a);
    ck_report_free(b);
}

TEST_CASE("weil and isogclass reports") {
    ck_report* rep = nullptr;
    REQUIRE(ck_isogclass(2, 3, &rep) == CK_OK);
    auto j = render_json(rep);
    CHECK(j["verdict"] == "verified");
    CHECK(j["certificate"]["dim"] == "3");
    CHECK(j["certificate"]["center_d"] == "-7");
    ck_report_free(rep);

    REQUIRE(ck_weil(0, 2, 1, 1, &rep) == CK_OK);
    auto jr = render_json(rep);
    CHECK(jr["certificate"]["center_d"] == "2");
    CHECK(jr["certificate"]["dim"] == "2");
    ck_report_free(rep);
}

TEST_CASE("topgen search and rejection") {
    ck_report* rep = nullptr;
    REQUIRE(ck_topgen(5, 0, "", &rep) == CK_OK);
    auto j = render_json(rep);
    CHECK(j["verdict"] == "found");
    CHECK(j["certificate"]["l"] == "2");
    ck_report_free(rep);

    REQUIRE(ck_topgen(5, 7, "", &rep) == CK_OK);
    CHECK(std::string(ck_report_verdict(rep)) == "rejected");
    CHECK(ck_report_exit_code(rep) == 1);
    ck_report_free(rep);
}

TEST_CASE("fiber and unitary index") {
    ck_report* rep = nullptr;
    REQUIRE(ck_fiber(-1, 5, &rep) == CK_OK);
    auto j = render_json(rep);
    CHECK(j["certificate"]["kind"] == "Multiplicative");
    ck_report_free(rep);

    REQUIRE(ck_unitary_index(-1, 5, 13, 2, &rep) == CK_OK);
    auto ju = render_json(rep);
    CHECK(ju.contains("certificate"));
    ck_report_free(rep);
}

TEST_CASE("text rendering carries the verdict") {
    ck_report* rep = nullptr;
    REQUIRE(ck_fiber(-1, 3, &rep) == CK_OK);
    char* s = ck_report_render(rep, "text");
    CHECK(std::string(s).find("verdict:") != std::string::npos);
    ck_string_free(s);
    ck_report_free(rep);
}
