#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fingroup.hpp"

using namespace certkit::fingroup;

// (Z/n)^* as a string group
static FinGroup units_mod(long n) {
    return {"1", [n](const Elt& x, const Elt& y) {
                return std::to_string(std::stol(x) * std::stol(y) % n);
            }};
}

// Z/a x Z/b written additively as "i,j"
static FinGroup prod_cyclic(long a, long b) {
    return {"0,0", [a, b](const Elt& x, const Elt& y) {
                auto c = x.find(','), d = y.find(',');
                long i = (std::stol(x.substr(0, c)) + std::stol(y.substr(0, d))) % a;
                long j = (std::stol(x.substr(c + 1)) + std::stol(y.substr(d + 1))) % b;
                return std::to_string(i) + "," + std::to_string(j);
            }};
}

TEST_CASE("closure of cyclic subgroups") {
    auto G = units_mod(16);
    auto H = closure(G, {"5"});
    CHECK(H == std::set<Elt>{"1", "13", "5", "9"});
    auto full = closure(G, {"3", "15"});
    CHECK(full.size() == 8);

    auto G25 = units_mod(25);
    CHECK(closure(G25, {"7"}).size() == 4); // ord(7 mod 25) = 4
    CHECK(closure(G25, {"2"}).size() == 20);
    CHECK(closure(G25, {}).size() == 1);
}

TEST_CASE("closure respects the cap") {
    auto G = units_mod(101);
    CHECK_THROWS_AS(closure(G, {"2"}, 10), std::runtime_error);
}

TEST_CASE("element powers and orders") {
    auto G = units_mod(101);
    CHECK(element_pow(G, "2", 100) == "1");
    CHECK(element_pow(G, "2", 50) == "100"); // -1
    CHECK(element_order(G, "2") == 100);
    CHECK(element_order(G, "100") == 2);
    CHECK(element_order(G, "1") == 1);
    // cyclic group oracle: order of k mod n divides the group order
    for (long n : {10, 24, 36, 101, 243, 1000}) {
        auto Gn = units_mod(n);
        auto U = closure(Gn, [&] {
            std::vector<Elt> gens;
            for (long k = 2; k < n; ++k)
                if (std::gcd(k, n) == 1) gens.push_back(std::to_string(k));
            return gens;
        }());
        for (const auto& x : U) CHECK(U.size() % element_order(Gn, x) == 0);
    }
}

TEST_CASE("inverse inside a subgroup") {
    auto G = units_mod(25);
    auto U = closure(G, {"2"});
    for (const auto& x : U) CHECK(G.op(x, inverse_in(G, U, x)) == "1");
}

TEST_CASE("minimal generator counts") {
    auto G8 = units_mod(8); // Z/2 x Z/2
    CHECK(min_generators(G8, closure(G8, {"3", "5", "7"})) == 2);

    auto G15 = units_mod(15); // Z/4 x Z/2
    CHECK(min_generators(G15, closure(G15, {"2", "14"})) == 2);

    auto C = prod_cyclic(10, 5);
    auto all = closure(C, {"1,0", "0,1"});
    CHECK(all.size() == 50);
    CHECK(min_generators(C, all) == 2);

    auto trivial = closure(C, {});
    CHECK(min_generators(C, trivial) == 0);

    // cyclic groups always need one generator
    for (long n : {7, 9, 12, 30}) {
        auto Z = prod_cyclic(n, 1);
        CHECK(min_generators(Z, closure(Z, {"1,0"})) == 1);
    }
}

TEST_CASE("extend_subgroup and product sizes") {
    auto C = prod_cyclic(10, 5);
    auto N = closure(C, {"2,0"}); // order 5
    auto H = extend_subgroup(C, N, {"0,1"});
    CHECK(H.size() == 25);
    CHECK(product_size(N, closure(C, {"5,0"})) == 10); // Z/5 * Z/2, trivial meet
    CHECK(product_size(H, H) == 25);
    CHECK(extend_subgroup(C, N, {}) == N);
}

TEST_CASE("quotients") {
    auto C = prod_cyclic(10, 5);
    auto all = closure(C, {"1,0", "0,1"});
    auto N = closure(C, {"5,0"}); // order 2
    auto Q = quotient(C, all, N);
    CHECK(Q.elements.size() == 25);
    CHECK(min_generators(Q.group, Q.elements) == 2); // Z/5 x Z/5
    // coset reps are idempotent and constant on cosets
    for (const auto& x : all) {
        auto r = coset_rep(C, N, x);
        CHECK(coset_rep(C, N, r) == r);
        for (const auto& n : N) CHECK(coset_rep(C, N, C.op(x, n)) == r);
    }

    auto G16 = units_mod(16);
    auto U = closure(G16, {"3", "15"});
    auto Q2 = quotient(G16, U, closure(G16, {"9"}));
    CHECK(Q2.elements.size() == 4);
    CHECK(min_generators(Q2.group, Q2.elements) == 2);
}

TEST_CASE("closure is idempotent") {
    auto G = units_mod(35);
    auto H = closure(G, {"2", "34"});
    std::vector<Elt> regen(H.begin(), H.end());
    CHECK(closure(G, regen) == H);
}
