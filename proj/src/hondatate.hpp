#ifndef CERTKIT_HONDATATE_HPP
#define CERTKIT_HONDATATE_HPP

#include <utility>
#include <vector>

#include "quadfield.hpp"

// Isogeny-class invariants of quadratic Weil numbers: center field, local
// Brauer invariants at the primes over p and at the real places, dimension,
// geometric simplicity.
namespace certkit::hondatate {

using quadfield::QuadField;
using quadfield::QuadElt;

// element of Q/Z as a reduced fraction num/den, 0 <= num < den
struct Invariant {
    long num = 0;
    long den = 1;
    long order() const { return den; }
    bool operator==(const Invariant&) const = default;
};

Invariant make_invariant(long num, long den);

struct WeilClass {
    long t = 0;     // trace (0 for the real sqrt(p^a) class)
    long p = 0;
    long a = 1;     // q = p^a
    bool real_center = false;
    QuadField field;
    QuadElt pi;     // a root of the Weil polynomial inside field
    std::vector<std::pair<quadfield::Ideal, Invariant>> finite_invariants;
    std::vector<Invariant> real_invariants; // one per real place of the center
    long e = 1;     // lcm of the invariant orders
    long dim = 1;   // e * [K:Q] / 2
    bool geom_simple = false;
};

// f = x^2 - t*x + p^a; rejects t^2 >= 4 p^a (rational or repeated roots)
WeilClass weil_class(long t, long p, long a);

// the real class pi = sqrt(p^a), a odd: center Q(sqrt(p)), both real
// invariants 1/2, dim 2
WeilClass weil_real(long p, long a);

// the family f = x^2 - p*x + p^n (n >= 3): imaginary center, p split,
// invariants 1/n and (n-1)/n, dim n, geometrically simple; all of this is
// asserted and a failure is a hard error
WeilClass isogclass(long p, long n);

bool is_geom_simple(const WeilClass& W);

} // namespace certkit::hondatate

#endif
