#ifndef CERTKIT_LOCALUNITS_HPP
#define CERTKIT_LOCALUNITS_HPP

#include <set>
#include <string>
#include <utility>

#include "fingroup.hpp"
#include "quadfield.hpp"

// Finite approximations of local unit groups: the residue rings O/P^m of a
// quadratic field at a prime, their unit groups, and the quotient of the
// local units by p-th powers of principal units.
namespace certkit::localunits {

using quadfield::QuadField;
using quadfield::QuadElt;
using quadfield::PrimeSplitting;

// O/P^m with elements as canonical pairs (u, v), 0 <= u < A, 0 <= v < C,
// where P^m has HNF basis {A, B + C*omega}.  Size A*C = p^(f*m).
struct ResidueRing {
    QuadField F;
    PrimeSplitting P;
    long level = 0;
    long long A = 1, B = 0, C = 1;
    long long t = 0, n = 0;   // omega^2 = t*omega - n
    long long pa = 0, pb = 0; // HNF of P itself (pc = P.ideal.c)
    long long pc = 1;

    size_t size() const { return static_cast<size_t>(A) * C; }
    std::pair<long long, long long> reduce(long long u, long long v) const;
    std::pair<long long, long long> mul(std::pair<long long, long long> x,
                                        std::pair<long long, long long> y) const;
    bool is_unit(std::pair<long long, long long> x) const;      // x not in P
    bool is_one_unit(std::pair<long long, long long> x) const;  // x = 1 mod P
    std::string key(std::pair<long long, long long> x) const;
    std::pair<long long, long long> parse(const std::string& s) const;

    // image of a global element whose coordinate denominators are prime to p
    std::pair<long long, long long> image(const QuadElt& x) const;

    fingroup::FinGroup unit_fingroup() const;
    std::set<fingroup::Elt> units(size_t cap = 10000000) const;
    std::set<fingroup::Elt> principal_units(size_t cap = 10000000) const;
};

ResidueRing make_ring(const QuadField& F, const PrimeSplitting& P, long level);

// order of the p-torsion roots of unity in the completion at P
long mu_p_order(const QuadField& F, const PrimeSplitting& P);

// U / closure of { x^p : x a principal unit }, computed at the first level
// where the quotient order reaches its predicted stable value
struct UnitQuotient {
    ResidueRing ring;        // ring at the stabilized level
    std::set<fingroup::Elt> units;    // full unit group of the ring
    std::set<fingroup::Elt> kernel;   // p-th powers of principal units
    fingroup::Quotient Q;    // units / kernel
    long level = 0;
    unsigned long order = 0;
    long mu_p = 1;
    unsigned long predicted = 0;
};

UnitQuotient unit_quotient(const QuadField& F, const PrimeSplitting& P);

} // namespace certkit::localunits

#endif
