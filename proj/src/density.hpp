#ifndef CERTKIT_DENSITY_HPP
#define CERTKIT_DENSITY_HPP

#include <optional>
#include <vector>

#include "localunits.hpp"
#include "quadfield.hpp"

// Density of S-unit subgroups in local unit groups: the group E+ of
// Sigma-positive units, the invariant g, the density decision at finite
// level, and the witness-prime search.
namespace certkit::density {

using quadfield::QuadField;
using quadfield::QuadElt;
using quadfield::PrimeSplitting;
using quadfield::SigmaSet;

// generators of E+ = units positive at every place of Sigma
std::vector<QuadElt> e_plus(const QuadField& F, const SigmaSet& sigma);

struct GInvariant {
    localunits::UnitQuotient UQ;
    std::set<fingroup::Elt> sub;   // subgroup gen. by kernel and E+ images
    long g = 0;
    unsigned long quotient_order = 1; // |U / sub|
    unsigned long exponent = 1;       // exponent of the quotient
    std::vector<long> factors;        // invariant factors (computed for g <= 2)
    std::vector<fingroup::Elt> generator_images; // E+ images in the ring
};

GInvariant g_invariant(const QuadField& F, const PrimeSplitting& P, const SigmaSet& sigma);
// same, reusing a prebuilt unit quotient (the expensive part)
GInvariant g_invariant(const QuadField& F, const localunits::UnitQuotient& UQ,
                       const SigmaSet& sigma);

struct SUnitEntry {
    long l = 0;              // rational prime
    quadfield::Ideal ideal;  // chosen prime above l
    long power = 1;          // smallest power with a usable generator
    QuadElt gen;             // Sigma-positive generator of ideal^power
};

struct SUnitBasis {
    std::vector<QuadElt> torsion; // E+ generators
    std::vector<SUnitEntry> s_entries;
    bool full_group = true;  // false when some prime needed a power > 1
    bool complete = true;    // false when some prime yielded no generator
};

SUnitBasis s_unit_basis(const QuadField& F, const std::vector<long>& S,
                        const SigmaSet& sigma, const PrimeSplitting& P,
                        long gen_bound = 1000000);

enum class DenseStatus { Dense, NotDense, Inconclusive };

struct DensityResult {
    DenseStatus status = DenseStatus::Inconclusive;
    SUnitBasis basis;
    localunits::UnitQuotient UQ;
    unsigned long closure_order = 0;  // |closure of the basis images|
    unsigned long target_order = 0;   // |U|, density means the two agree
    std::vector<fingroup::Elt> images;
};

DensityResult is_dense(const QuadField& F, const std::vector<long>& S,
                       const SigmaSet& sigma, const PrimeSplitting& P,
                       long gen_bound = 1000000);

struct WitnessResult {
    bool found = false;
    long g = 0;
    std::vector<SUnitEntry> S;        // size g on success
    std::vector<fingroup::Elt> targets; // the generating tuple aimed at
    std::vector<bool> matched;        // per-target progress on exhaustion
    long bound = 0;
};

WitnessResult witness_primes(const QuadField& F, const PrimeSplitting& P,
                             const SigmaSet& sigma, long bound,
                             const std::vector<long>& exclude = {},
                             long gen_bound = 100000);

} // namespace certkit::density

#endif
