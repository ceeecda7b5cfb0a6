#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>

#include "quaternion.hpp"

using namespace certkit::quaternion;

static Vec4 v4(long a, long b, long c, long d) { return {Rat(a), Rat(b), Rat(c), Rat(d)}; }

TEST_CASE("quaternion arithmetic identities") {
    QuatAlgebra A{-1, -1};
    Vec4 i = v4(0, 1, 0, 0), j = v4(0, 0, 1, 0), k = v4(0, 0, 0, 1);
    CHECK(qmul(A, i, i) == v4(-1, 0, 0, 0));
    CHECK(qmul(A, j, j) == v4(-1, 0, 0, 0));
    CHECK(qmul(A, i, j) == k);
    CHECK(qmul(A, j, i) == v4(0, 0, 0, -1));
    CHECK(qmul(A, k, k) == v4(-1, 0, 0, 0)); // k^2 = -ab

    QuatAlgebra B{-2, -3};
    Vec4 x = v4(1, 2, -1, 3), y = v4(0, 1, 4, -2);
    // Nrd is multiplicative, Trd(xy) = Trd(yx)
    CHECK(qnrd(B, qmul(B, x, y)) == qnrd(B, x) * qnrd(B, y));
    CHECK(qtrd(qmul(B, x, y)) == qtrd(qmul(B, y, x)));
    // x * conj(x) = Nrd(x)
    CHECK(qmul(B, x, qconj(x)) == Vec4{qnrd(B, x), 0, 0, 0});
    CHECK(qtrd(x) == Rat(2));
}

TEST_CASE("maximal orders for small ramified primes") {
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L}) {
        auto O = make_bpinf(p);
        CHECK(O.disc == p);
        // multiplication table closes over the integer basis
        for (int i = 0; i < 4; ++i) {
            auto prod = qmul(O.alg, O.basis[i], O.basis[i]);
            auto c = O.coords(prod);
            CHECK(c.has_value());
        }
        // 1 lies in the order
        auto one = O.coords(v4(1, 0, 0, 0));
        REQUIRE(one.has_value());
    }
}

TEST_CASE("norm forms take the expected unit counts") {
    // units of the maximal order: 24 for p = 2 (Hurwitz), 12 for p = 3, 4 beyond
    CHECK(norm_elements(make_bpinf(2), 1).size() == 24);
    CHECK(norm_elements(make_bpinf(3), 1).size() == 12);
    CHECK(norm_elements(make_bpinf(5), 1).size() == 6);
    CHECK(norm_elements(make_bpinf(7), 1).size() == 4);
    CHECK(norm_elements(make_bpinf(13), 1).size() == 2);
}

TEST_CASE("Hurwitz norm counts follow the divisor sum") {
    // number of Hurwitz quaternions of norm n is 24 * sum of odd divisors
    auto O = make_bpinf(2);
    for (long n = 1; n <= 20; ++n) {
        long s = 0;
        for (long d = 1; d <= n; ++d)
            if (n % d == 0 && d % 2 == 1) s += d;
        CHECK(norm_elements(O, n).size() == static_cast<size_t>(24 * s));
    }
}

TEST_CASE("norm elements really have the claimed norm") {
    auto O = make_bpinf(5);
    for (long n : {1L, 2L, 3L, 4L, 11L}) {
        auto es = norm_elements(O, n);
        for (const auto& c : es) CHECK(O.nrd_at(c) == n);
    }
    // the ramified prime has elements of norm p (the uniformizer)
    CHECK(!norm_elements(O, 5).empty());
}

TEST_CASE("local unit groups") {
    auto O = make_bpinf(3);
    auto L = local_units(O, 3, 2, 1000000);
    // |(O/9)^*| = 3^8 (1 - 1/9) for the ramified local order
    CHECK(L.units.size() == 5832);
    for (const auto& u : L.units) {
        auto c = L.parse(u);
        CHECK(L.nrd_mod(c) % 3 != 0);
        auto inv = L.inverse(c);
        CHECK(L.group.op(u, L.key(inv)) == L.group.id);
    }
}

TEST_CASE("closure equals the norm-controlled subgroup at p=3, l=2") {
    auto rep = closure_check(3, 2, 2, 4);
    CHECK(rep.equal);
    CHECK(rep.index == 1);
    CHECK(rep.h_order == rep.p_order);
    CHECK(rep.stabilized);
    CHECK(rep.units_order == 5832); // |(O/9)^*| over B_{3,inf}
}

TEST_CASE("norm condition cuts index two at p=2, l=5") {
    // H equals the norm-controlled subgroup, which itself sits with index 2
    // in the full unit group (norms land in <5> = 1 mod 4)
    auto rep = closure_check(2, 5, 3, 4);
    CHECK(rep.equal);
    CHECK(rep.index == 1);
    CHECK(rep.h_order == rep.p_order);
    CHECK(rep.p_order * 2 == rep.units_order);
}

TEST_CASE("closure is always inside the norm subgroup") {
    // level 1 for p >= 5: (O/p^2)^* is too large to enumerate quickly
    for (auto [p, l, m] : std::vector<std::array<long, 3>>{{3, 5, 2}, {5, 2, 1}, {5, 3, 1}, {7, 2, 1}}) {
        auto rep = closure_check(p, l, m, 3);
        CHECK(rep.h_order <= rep.p_order);
        CHECK(rep.p_order % rep.h_order == 0);
        CHECK(rep.index >= 1);
    }
}
