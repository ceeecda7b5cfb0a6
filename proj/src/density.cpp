#include "density.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace certkit::density {

namespace qf = certkit::quadfield;
namespace fg = certkit::fingroup;

std::vector<QuadElt> e_plus(const QuadField& F, const SigmaSet& sigma) {
    qf::UnitGroup U = qf::unit_group(F);
    if (F.imaginary()) return {U.torsion_gen};
    const QuadElt& eps = *U.fundamental;
    if (sigma.empty()) return {QuadElt(-1, 0), eps};
    if (qf::sigma_positive(F, eps, sigma)) return {eps};
    QuadElt meps = qf::neg(eps);
    if (qf::sigma_positive(F, meps, sigma)) return {meps};
    return {qf::mul(F, eps, eps)}; // squares are totally positive
}

GInvariant g_invariant(const QuadField& F, const localunits::UnitQuotient& UQ,
                       const SigmaSet& sigma) {
    GInvariant out;
    out.UQ = UQ;
    fg::FinGroup G = UQ.ring.unit_fingroup();
    std::vector<fg::Elt> imgs;
    for (const QuadElt& u : e_plus(F, sigma))
        imgs.push_back(UQ.ring.key(UQ.ring.image(u)));
    out.generator_images = imgs;
    out.sub = fg::extend_subgroup(G, UQ.kernel, imgs);
    unsigned long n = UQ.units.size() / out.sub.size();
    out.quotient_order = n;

    // q-ranks of U/sub without materializing the quotient
    long g = 0;
    unsigned long m = n;
    auto rank_at = [&](unsigned long q) {
        std::set<fg::Elt> Uq;
        for (const fg::Elt& x : UQ.units) Uq.insert(fg::element_pow(G, x, q));
        unsigned long joined = fg::product_size(out.sub, Uq);
        unsigned long idx = UQ.units.size() / joined;
        long r = 0;
        while (idx > 1) { idx /= q; ++r; }
        return r;
    };
    for (unsigned long q = 2; q * q <= m; ++q) {
        if (m % q) continue;
        while (m % q == 0) m /= q;
        g = std::max(g, rank_at(q));
    }
    if (m > 1) g = std::max(g, rank_at(m));
    out.g = g;

    // invariant factors by coset orders, for rings small enough to scan
    if (n > 1 && UQ.units.size() <= 10000) {
        unsigned long e = 1;
        for (const fg::Elt& x : UQ.units) {
            fg::Elt y = x;
            unsigned long k = 1;
            while (!out.sub.count(y)) {
                y = G.op(y, x);
                ++k;
            }
            e = std::lcm(e, k);
        }
        out.exponent = e;
        if (g == 1) out.factors = {static_cast<long>(n)};
        else if (g == 2) out.factors = {static_cast<long>(e), static_cast<long>(n / e)};
    } else if (n == 1) {
        out.exponent = 1;
    }
    return out;
}

GInvariant g_invariant(const QuadField& F, const PrimeSplitting& P, const SigmaSet& sigma) {
    return g_invariant(F, localunits::unit_quotient(F, P), sigma);
}

namespace {

// smallest power of Q with a generator positive on Sigma; falls back to the
// square of any generator (totally positive) when signs cannot be fixed
std::optional<SUnitEntry> basis_entry(const QuadField& F, long l, const qf::Ideal& Q,
                                      const SigmaSet& sigma, long gen_bound,
                                      bool& full_group, bool& complete) {
    qf::Ideal Qk = Q;
    for (long k = 1; k <= 24; ++k) {
        if (k > 1) Qk = qf::ideal_mul(F, Qk, Q);
        auto res = qf::principal_generator(F, k == 1 ? Q : Qk, sigma, gen_bound);
        if (res.status == qf::PrincipalStatus::Found) {
            if (k > 1) full_group = false;
            return SUnitEntry{l, Q, k, *res.gen};
        }
        if (res.status == qf::PrincipalStatus::NotPrincipal) continue;
        if (res.status == qf::PrincipalStatus::NoPositiveGenerator) {
            auto any = qf::principal_generator(F, k == 1 ? Q : Qk, SigmaSet::none(), gen_bound);
            full_group = false;
            if (any.status != qf::PrincipalStatus::Found) break;
            return SUnitEntry{l, Q, 2 * k, qf::mul(F, *any.gen, *any.gen)};
        }
        break; // bound exceeded
    }
    full_group = false;
    complete = false;
    return std::nullopt;
}

} // namespace

SUnitBasis s_unit_basis(const QuadField& F, const std::vector<long>& S,
                        const SigmaSet& sigma, const PrimeSplitting& P, long gen_bound) {
    SUnitBasis basis;
    basis.torsion = e_plus(F, sigma);
    std::vector<long> primes = S;
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (long l : primes) {
        if (!qf::is_prime(l)) throw std::invalid_argument("density: S must consist of primes");
        std::vector<qf::Ideal> chosen;
        if (l == P.p) {
            if (P.kind != qf::SplitKind::Split)
                throw std::invalid_argument("density: S meets the place of the target prime");
            for (const auto& Q : qf::primes_above(F, l))
                if (!(Q == P.ideal)) chosen.push_back(Q);
        } else {
            chosen = qf::primes_above(F, l);
        }
        for (const auto& Q : chosen) {
            auto entry = basis_entry(F, l, Q, sigma, gen_bound, basis.full_group, basis.complete);
            if (entry) basis.s_entries.push_back(*entry);
        }
    }
    return basis;
}

DensityResult is_dense(const QuadField& F, const std::vector<long>& S,
                       const SigmaSet& sigma, const PrimeSplitting& P, long gen_bound) {
    DensityResult out;
    out.basis = s_unit_basis(F, S, sigma, P, gen_bound);
    out.UQ = localunits::unit_quotient(F, P);
    fg::FinGroup G = out.UQ.ring.unit_fingroup();
    std::vector<fg::Elt> imgs;
    for (const QuadElt& u : out.basis.torsion)
        imgs.push_back(out.UQ.ring.key(out.UQ.ring.image(u)));
    for (const auto& e : out.basis.s_entries)
        imgs.push_back(out.UQ.ring.key(out.UQ.ring.image(e.gen)));
    out.images = imgs;
    std::set<fg::Elt> sub = fg::extend_subgroup(G, out.UQ.kernel, imgs);
    out.closure_order = sub.size();
    out.target_order = out.UQ.units.size();
    if (out.closure_order == out.target_order)
        out.status = DenseStatus::Dense;
    else if (out.basis.full_group && out.basis.complete)
        out.status = DenseStatus::NotDense;
    else
        out.status = DenseStatus::Inconclusive;
    return out;
}

WitnessResult witness_primes(const QuadField& F, const PrimeSplitting& P,
                             const SigmaSet& sigma, long bound,
                             const std::vector<long>& exclude, long gen_bound) {
    WitnessResult out;
    out.bound = bound;
    GInvariant gi = g_invariant(F, P, sigma);
    out.g = gi.g;
    if (gi.g == 0) {
        out.found = true;
        return out;
    }
    fg::FinGroup G = gi.UQ.ring.unit_fingroup();
    const std::set<fg::Elt>& U = gi.UQ.units;

    // greedy minimal generating tuple of U/sub: repeatedly take the element
    // whose coset has maximal order
    std::set<fg::Elt> cur = gi.sub;
    while (cur.size() < U.size()) {
        const fg::Elt* best = nullptr;
        std::set<fg::Elt> best_ext;
        for (const fg::Elt& x : U) {
            if (cur.count(x)) continue;
            std::set<fg::Elt> ext = fg::extend_subgroup(G, cur, {x});
            if (!best || ext.size() > best_ext.size()) {
                best = &x;
                best_ext = std::move(ext);
            }
        }
        out.targets.push_back(*best);
        cur = std::move(best_ext);
    }
    out.matched.assign(out.targets.size(), false);

    std::vector<fg::Elt> target_inv;
    for (const auto& t : out.targets) target_inv.push_back(fg::inverse_in(G, U, t));

    size_t remaining = out.targets.size();
    for (long l = 2; l <= bound && remaining > 0; ++l) {
        if (!qf::is_prime(l) || l == P.p) continue;
        if (std::find(exclude.begin(), exclude.end(), l) != exclude.end()) continue;
        auto split = qf::splitting_type(F, l);
        if (split.kind == qf::SplitKind::Inert) continue; // need degree one
        for (const auto& Q : qf::primes_above(F, l)) {
            auto res = qf::principal_generator(F, Q, sigma, gen_bound);
            if (res.status != qf::PrincipalStatus::Found) continue;
            fg::Elt img = gi.UQ.ring.key(gi.UQ.ring.image(*res.gen));
            for (size_t i = 0; i < out.targets.size(); ++i) {
                if (out.matched[i]) continue;
                if (!gi.sub.count(G.op(img, target_inv[i]))) continue;
                out.matched[i] = true;
                out.S.push_back(SUnitEntry{l, Q, 1, *res.gen});
                --remaining;
                break;
            }
            if (remaining == 0) break;
        }
    }
    out.found = remaining == 0;
    return out;
}

} // namespace certkit::density
