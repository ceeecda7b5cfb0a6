#ifndef CERTKIT_QUADFIELD_HPP
#define CERTKIT_QUADFIELD_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

// Exact arithmetic in quadratic fields Q(sqrt(d)): elements in the basis
// (1, omega) of the ring of integers, ideals in two-element HNF, prime
// splitting, fundamental units, principality and norm equations.
namespace certkit::quadfield {

using Int = mpz_class;
using Rat = mpq_class;

struct QuadField {
    long d = 0;        // squarefree, not 0 or 1
    long disc = 0;     // fundamental discriminant: d if d=1 (4), else 4d
    int signature = 0; // number of real embeddings: 2 (d>0) or 0 (d<0)

    bool imaginary() const { return d < 0; }
    // omega = (1+sqrt(d))/2 when d=1 (4), else omega = sqrt(d)
    bool half_basis() const { return ((d % 4) + 4) % 4 == 1; }
    // minimal polynomial of omega: x^2 - t*x + n
    long omega_trace() const { return half_basis() ? 1 : 0; }
    long omega_norm() const { return half_basis() ? (1 - d) / 4 : -d; }
};

// throws std::invalid_argument for d in {0,1} or d not squarefree
QuadField make_field(long d);

// a + b*omega with exact rational coordinates
struct QuadElt {
    Rat a, b;

    QuadElt() : a(0), b(0) {}
    QuadElt(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) { a.canonicalize(); b.canonicalize(); }
    QuadElt(long a_, long b_) : a(a_), b(b_) {}

    bool operator==(const QuadElt&) const = default;
    bool is_integral() const { return a.get_den() == 1 && b.get_den() == 1; }
    bool is_zero() const { return a == 0 && b == 0; }
};

QuadElt add(const QuadElt& x, const QuadElt& y);
QuadElt sub(const QuadElt& x, const QuadElt& y);
QuadElt neg(const QuadElt& x);
QuadElt mul(const QuadField& F, const QuadElt& x, const QuadElt& y);
QuadElt conj(const QuadField& F, const QuadElt& x); // Galois conjugate
QuadElt inverse(const QuadField& F, const QuadElt& x);
QuadElt pow(const QuadField& F, QuadElt x, unsigned long e);
Rat norm(const QuadField& F, const QuadElt& x);  // x * conj(x)
Rat trace(const QuadField& F, const QuadElt& x);

// serialization used in reports: "a+b*w" with exact rationals
std::string to_string(const QuadElt& x);

// real embeddings; the first sends sqrt(d) to the positive root
enum class RealPlace { First = 0, Second = 1 };
// sign of x under the embedding (d > 0 required), in {-1, 0, +1}
int sign_at(const QuadField& F, const QuadElt& x, RealPlace v);

// Integral ideal in two-element HNF: Z*a + Z*(b + c*omega) with
// c | a, c | b and 0 <= b < a.  The zero ideal is not representable.
struct Ideal {
    Int a, b, c;

    bool operator==(const Ideal&) const = default;
    Int norm() const { return a * c; }
    std::string to_string() const;
};

// HNF from an arbitrary list of Z-module generators (u + v*omega pairs)
Ideal ideal_from_basis(std::vector<std::pair<Int, Int>> gens);
Ideal ideal_principal(const QuadField& F, const QuadElt& g); // g integral, nonzero
Ideal ideal_mul(const QuadField& F, const Ideal& I, const Ideal& J);
Ideal ideal_pow(const QuadField& F, Ideal I, unsigned long k);
bool ideal_contains(const Ideal& I, const QuadElt& x); // x integral
// lexicographic (a, b, c) order, used for deterministic prime choices
bool ideal_less(const Ideal& I, const Ideal& J);

enum class SplitKind { Split, Inert, Ramified };

struct PrimeSplitting {
    SplitKind kind = SplitKind::Split;
    int e = 1; // ramification index
    int f = 1; // residue degree
    long p = 0;
    Ideal ideal; // one prime above p (smallest HNF when split)
};

const char* split_kind_name(SplitKind k);

PrimeSplitting splitting_type(const QuadField& F, long p);
// both primes above p in HNF order (one entry unless p splits)
std::vector<Ideal> primes_above(const QuadField& F, long p);

// valuation of x at the prime P (x nonzero; rational coordinates allowed)
long valuation(const QuadField& F, const PrimeSplitting& P, const QuadElt& x);

struct UnitGroup {
    long w = 2;                          // order of the roots of unity
    std::optional<QuadElt> fundamental;  // real case only, normalized > 1 at First
    std::array<int, 2> sign_pattern{1, 1}; // signs of fundamental at both places
    // generator of the torsion part (i, primitive 6th root, or -1)
    QuadElt torsion_gen{-1, 0};
};

// real case: fundamental unit via continued fraction of omega (period cap
// 10^4, exceeding it throws); imaginary case: roots of unity only
UnitGroup unit_group(const QuadField& F);

// places required positive; ignored for imaginary fields
struct SigmaSet {
    bool first = false;
    bool second = false;

    bool empty() const { return !first && !second; }
    static SigmaSet none() { return {false, false}; }
    static SigmaSet all() { return {true, true}; }
};

bool sigma_positive(const QuadField& F, const QuadElt& x, const SigmaSet& sigma);

enum class PrincipalStatus {
    Found,
    NotPrincipal,        // proven (imaginary fields)
    NoPositiveGenerator, // principal, but no generator positive on Sigma
    BoundExceeded        // real-field search ran out; principality unknown
};

struct PrincipalResult {
    PrincipalStatus status = PrincipalStatus::BoundExceeded;
    std::optional<QuadElt> gen;
};

// generator of I positive at all places of Sigma, if one exists.
// Imaginary fields decide principality exactly via reduced binary forms;
// real fields search generators with coordinate bound `bound`.
PrincipalResult principal_generator(const QuadField& F, const Ideal& I,
                                    const SigmaSet& sigma, long bound = 1000000);

// pi with N(pi) = l, or nothing (F imaginary, l prime)
std::optional<QuadElt> cornacchia(const QuadField& F, long l);

// --- binary quadratic forms (imaginary case) ---
struct BinForm {
    Int A, B, C;
    Int disc() const { return B * B - 4 * A * C; }
    bool operator==(const BinForm&) const = default;
};
BinForm form_of_ideal(const QuadField& F, const Ideal& I); // I primitive
BinForm reduce_form(BinForm f);                            // disc < 0
BinForm principal_form(long disc);

// small helpers shared by other modules
bool is_prime(long n);
bool is_squarefree(long n);
long squarefree_part(long n); // sign-preserving
Int power_mod(Int base, Int exp, const Int& mod);

} // namespace certkit::quadfield

#endif
