#include "fingroup.hpp"

#include <deque>
#include <stdexcept>

namespace certkit::fingroup {

std::set<Elt> closure(const FinGroup& G, const std::vector<Elt>& gens, size_t cap) {
    std::set<Elt> seen{G.id};
    std::deque<Elt> frontier{G.id};
    while (!frontier.empty()) {
        Elt x = std::move(frontier.front());
        frontier.pop_front();
        for (const Elt& g : gens) {
            Elt y = G.op(x, g);
            if (seen.insert(y).second) {
                if (seen.size() > cap)
                    throw std::runtime_error("fingroup: closure cap exceeded");
                frontier.push_back(std::move(y));
            }
        }
    }
    return seen;
}

Elt element_pow(const FinGroup& G, Elt x, unsigned long e) {
    Elt r = G.id;
    while (e) {
        if (e & 1) r = G.op(r, x);
        x = G.op(x, x);
        e >>= 1;
    }
    return r;
}

Elt inverse_in(const FinGroup& G, const std::set<Elt>& H, const Elt& x) {
    return element_pow(G, x, H.size() - 1);
}

unsigned long element_order(const FinGroup& G, const Elt& x) {
    Elt y = x;
    unsigned long n = 1;
    while (y != G.id) {
        y = G.op(y, x);
        ++n;
        if (n > 100000000UL) throw std::runtime_error("fingroup: element order runaway");
    }
    return n;
}

long min_generators(const FinGroup& G, const std::set<Elt>& H) {
    unsigned long n = H.size();
    if (n == 1) return 0;
    long best = 0;
    unsigned long m = n;
    for (unsigned long q = 2; q * q <= m; ++q) {
        if (m % q) continue;
        while (m % q == 0) m /= q;
        std::set<Elt> powers;
        for (const Elt& x : H) powers.insert(element_pow(G, x, q));
        unsigned long idx = n / powers.size();
        long rank = 0;
        while (idx > 1) { idx /= q; ++rank; }
        best = std::max(best, rank);
    }
    if (m > 1) {
        unsigned long q = m;
        std::set<Elt> powers;
        for (const Elt& x : H) powers.insert(element_pow(G, x, q));
        unsigned long idx = n / powers.size();
        long rank = 0;
        while (idx > 1) { idx /= q; ++rank; }
        best = std::max(best, rank);
    }
    return best;
}

std::set<Elt> extend_subgroup(const FinGroup& G, const std::set<Elt>& N,
                              const std::vector<Elt>& gens, size_t cap) {
    std::set<Elt> seen = N;
    std::deque<Elt> frontier(N.begin(), N.end());
    while (!frontier.empty()) {
        Elt x = std::move(frontier.front());
        frontier.pop_front();
        for (const Elt& g : gens) {
            Elt y = G.op(x, g);
            if (seen.insert(y).second) {
                if (seen.size() > cap)
                    throw std::runtime_error("fingroup: closure cap exceeded");
                frontier.push_back(std::move(y));
            }
        }
    }
    return seen;
}

unsigned long product_size(const std::set<Elt>& A, const std::set<Elt>& B) {
    const std::set<Elt>& small = A.size() <= B.size() ? A : B;
    const std::set<Elt>& big = A.size() <= B.size() ? B : A;
    unsigned long inter = 0;
    for (const Elt& x : small)
        if (big.count(x)) ++inter;
    return A.size() / inter * B.size(); // |A| * |B| / |A meet B|
}

Elt coset_rep(const FinGroup& G, const std::set<Elt>& N, const Elt& x) {
    Elt best;
    bool have = false;
    for (const Elt& h : N) {
        Elt y = G.op(x, h);
        if (!have || y < best) {
            best = std::move(y);
            have = true;
        }
    }
    return best;
}

Quotient quotient(const FinGroup& G, const std::set<Elt>& H, const std::set<Elt>& N) {
    Quotient Q;
    Q.group.id = coset_rep(G, N, G.id);
    // capture by value so the quotient outlives the inputs
    Q.group.op = [G, N](const Elt& x, const Elt& y) { return coset_rep(G, N, G.op(x, y)); };
    for (const Elt& x : H) Q.elements.insert(coset_rep(G, N, x));
    return Q;
}

} // namespace certkit::fingroup
