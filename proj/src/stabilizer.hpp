#ifndef CERTKIT_STABILIZER_HPP
#define CERTKIT_STABILIZER_HPP

#include <optional>
#include <vector>

#include "hondatate.hpp"
#include "localunits.hpp"
#include "quadfield.hpp"

// Finite-level density certificates for stabilizer-group statements: the
// effective topological-generator test in Z_p^*, the modular curve
// certificate through the isogeny-class family, the unitary-torus search,
// and the special-fiber classifier.
namespace certkit::stabilizer {

using quadfield::QuadField;
using quadfield::QuadElt;

struct TopGenCertificate {
    long l = 0, p = 0;
    // (k, l^(p(p-1)/k) mod p^2) for the primes k | p(p-1); p odd only
    std::vector<std::pair<long, long>> checks;
    long p2_residue = 0; // l mod 8 when p = 2
    bool accepted = false;
};

TopGenCertificate is_topological_generator(long l, long p);

// smallest accepted prime l not in exclusions; throws past the cap
long find_topgen(long p, const std::vector<long>& exclude = {}, long cap = 1000000);

struct Modular1Certificate {
    long p = 0, n = 0, l = 0;
    hondatate::WeilClass weil;
    TopGenCertificate topgen;
    bool rejected = false; // l failed the topological-generator test
    quadfield::Ideal completion_prime; // split factor used for Z/p^m
    std::vector<std::pair<long, bool>> levels; // (m, image full in (Z/p^m)^*)
    bool all_full = false;
};

Modular1Certificate modular1_certificate(long p, long n, std::optional<long> l, long m_max);

struct TorusSearchResult {
    bool found = false;
    long l = 0;
    QuadElt pi, beta;             // beta = pi / conj(pi), norm 1
    long level = 0;               // stabilized level of the unit quotient
    unsigned long closure_order = 0; // subgroup generated by mu and beta
    unsigned long target_order = 0;  // the full quotient order
    long bound = 0;
    std::vector<long> skipped;    // primes l with no norm-l element
};

// scans primes l <= bound for one whose norm solution pi gives a dense
// torus subgroup at finite level
TorusSearchResult torus_generator_search(const QuadField& F, long p, long bound);

// index of the closure of <beta> in (Z/p^m)^* under the split identification
long unitary_index(const QuadField& F, long p, long l, long m);

enum class FiberKind { Multiplicative, NormOneTorus, AdditiveTimesMu2 };
const char* fiber_name(FiberKind k);
FiberKind torus_fiber(const QuadField& F, long p);

} // namespace certkit::stabilizer

#endif
