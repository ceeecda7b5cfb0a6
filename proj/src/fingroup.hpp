#ifndef CERTKIT_FINGROUP_HPP
#define CERTKIT_FINGROUP_HPP

#include <functional>
#include <set>
#include <string>
#include <vector>

// Generic finite groups with elements encoded as canonical strings.  Callers
// supply the multiplication; closure, orders, minimal generator counts and
// quotients are computed by enumeration.
namespace certkit::fingroup {

using Elt = std::string;

struct FinGroup {
    Elt id;
    std::function<Elt(const Elt&, const Elt&)> op;
};

// smallest subgroup (as a set) containing gens; throws if it would exceed cap
std::set<Elt> closure(const FinGroup& G, const std::vector<Elt>& gens,
                      size_t cap = 10000000);

Elt element_pow(const FinGroup& G, Elt x, unsigned long e);

// inverse inside a known finite subgroup: x^(|H|-1)
Elt inverse_in(const FinGroup& G, const std::set<Elt>& H, const Elt& x);

// order of x given the ambient set it lives in
unsigned long element_order(const FinGroup& G, const Elt& x);

// minimal number of generators of a finite abelian group, via the q-ranks
// log_q |H / H^q| over primes q dividing |H|
long min_generators(const FinGroup& G, const std::set<Elt>& H);

// subgroup generated by the subgroup N together with extra generators,
// computed by closure seeded with all of N
std::set<Elt> extend_subgroup(const FinGroup& G, const std::set<Elt>& N,
                              const std::vector<Elt>& gens, size_t cap = 10000000);

// size of the product subgroup A*B of two subgroups of an abelian group
unsigned long product_size(const std::set<Elt>& A, const std::set<Elt>& B);

// canonical coset representative of x modulo the subgroup N (abelian use)
Elt coset_rep(const FinGroup& G, const std::set<Elt>& N, const Elt& x);

// quotient of H by the subgroup N: elements are canonical coset reps
struct Quotient {
    FinGroup group;
    std::set<Elt> elements;
};
Quotient quotient(const FinGroup& G, const std::set<Elt>& H, const std::set<Elt>& N);

} // namespace certkit::fingroup

#endif
