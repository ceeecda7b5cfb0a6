#ifndef CERTKIT_QUATERNION_HPP
#define CERTKIT_QUATERNION_HPP

#include <array>
#include <optional>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "fingroup.hpp"

// Maximal orders in definite rational quaternion algebras ramified at one
// finite prime, reduced-norm lattice enumeration, and finite-level closure
// of S-unit images inside the local unit group.
namespace certkit::quaternion {

using Int = mpz_class;
using Rat = mpq_class;
using Vec4 = std::array<Rat, 4>; // coordinates over the basis 1, i, j, ij

struct QuatAlgebra {
    long a = -1, b = -1; // i^2 = a, j^2 = b, ij = -ji; both negative
};

Vec4 qmul(const QuatAlgebra& A, const Vec4& x, const Vec4& y);
Vec4 qconj(const Vec4& x);
Rat qtrd(const Vec4& x);
Rat qnrd(const QuatAlgebra& A, const Vec4& x);

struct QuatOrder {
    QuatAlgebra alg;
    std::array<Vec4, 4> basis;
    long disc = 0; // reduced discriminant, equal to p for make_bpinf

    // integer structure data over the basis
    long long gamma[4][4][4] = {};   // e_i e_j = sum_k gamma[i][j][k] e_k
    long long conjmat[4][4] = {};    // conj(e_i) = sum_k conjmat[i][k] e_k
    long long trd[4] = {};           // Trd(e_i)
    long long nrd_form[4][4] = {};   // Nrd(c.e) = sum_{i<=j} nrd_form[i][j] c_i c_j
    std::array<long long, 4> one = {}; // coordinates of 1

    // basis coordinates of x if x lies in the order
    std::optional<std::array<Int, 4>> coords(const Vec4& x) const;
    Int nrd_at(const std::array<long long, 4>& c) const;
};

// maximal order in the quaternion algebra ramified exactly at p and
// infinity, found by saturating Z<1,i,j,ij> and certified by disc = p
QuatOrder make_bpinf(long p);

// all order elements of reduced norm n, as basis coordinate vectors
std::vector<std::array<long long, 4>> norm_elements(const QuatOrder& O, long n);

// unit group of O/p^m O with elements as coordinate vectors mod p^m
struct LocalUnits {
    QuatOrder O;
    long p = 0, m = 1;
    long long mod = 1;
    fingroup::FinGroup group;
    std::set<fingroup::Elt> units;

    std::string key(const std::array<long long, 4>& c) const;
    std::array<long long, 4> parse(const fingroup::Elt& s) const;
    long long nrd_mod(const std::array<long long, 4>& c) const;
    std::array<long long, 4> inverse(const std::array<long long, 4>& c) const;
};

LocalUnits local_units(const QuatOrder& O, long p, long m, size_t cap = 10000000);

struct ClosureReport {
    long p = 0, l = 0, m = 1, k_max = 1;
    unsigned long units_order = 0;
    unsigned long x_order = 0;        // |<l mod p^m>|
    std::vector<std::pair<long, unsigned long>> growth; // (K, |H_K|)
    bool stabilized = false;
    unsigned long h_order = 0;        // closure of the S-unit images
    unsigned long p_order = 0;        // norm-controlled target subgroup
    long index = 1;                   // [P : H]
    bool equal = false;
};

// H = closure of {norm-1 units, norm-l^k elements (k <= k_max), l^{-1}};
// P = {u : Nrd(u) in <l> mod p^m}; H <= P always, equality is the checked
// statement
ClosureReport closure_check(long p, long l, long m, long k_max);

} // namespace certkit::quaternion

#endif
