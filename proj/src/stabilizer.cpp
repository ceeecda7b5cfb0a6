#include "stabilizer.hpp"

#include <stdexcept>

namespace certkit::stabilizer {

namespace qf = certkit::quadfield;
namespace fg = certkit::fingroup;
namespace lu = certkit::localunits;
namespace ht = certkit::hondatate;

TopGenCertificate is_topological_generator(long l, long p) {
    if (!qf::is_prime(l) || !qf::is_prime(p) || l == p)
        throw std::invalid_argument("stabilizer: l and p must be distinct primes");
    TopGenCertificate cert;
    cert.l = l;
    cert.p = p;
    if (p == 2) {
        cert.p2_residue = l % 8;
        cert.accepted = cert.p2_residue == 3 || cert.p2_residue == 5;
        return cert;
    }
    long p2 = p * p;
    long order = p * (p - 1);
    cert.accepted = true;
    long m = order;
    std::vector<long> ks;
    for (long k = 2; k * k <= m; ++k) {
        if (m % k) continue;
        ks.push_back(k);
        while (m % k == 0) m /= k;
    }
    if (m > 1) ks.push_back(m);
    for (long k : ks) {
        long alpha = qf::power_mod(l, order / k, p2).get_si();
        cert.checks.push_back({k, alpha});
        if (alpha == 1) cert.accepted = false;
    }
    return cert;
}

long find_topgen(long p, const std::vector<long>& exclude, long cap) {
    for (long l = 2; l <= cap; ++l) {
        if (!qf::is_prime(l) || l == p) continue;
        bool skip = false;
        for (long e : exclude)
            if (e == l) skip = true;
        if (skip) continue;
        if (is_topological_generator(l, p).accepted) return l;
    }
    throw std::runtime_error("stabilizer: no topological generator below cap");
}

Modular1Certificate modular1_certificate(long p, long n, std::optional<long> l, long m_max) {
    Modular1Certificate cert;
    cert.p = p;
    cert.n = n;
    cert.weil = ht::isogclass(p, n);
    cert.l = l ? *l : find_topgen(p);
    cert.topgen = is_topological_generator(cert.l, p);
    if (!cert.topgen.accepted) {
        cert.rejected = true;
        return cert;
    }
    const QuadField& K = cert.weil.field;
    qf::PrimeSplitting P = qf::splitting_type(K, p);
    if (P.kind != qf::SplitKind::Split)
        throw std::runtime_error("stabilizer: completion prime not split");
    cert.completion_prime = P.ideal;
    QuadElt mu_gen = qf::unit_group(K).torsion_gen;
    cert.all_full = true;
    for (long m = 1; m <= m_max; ++m) {
        lu::ResidueRing R = lu::make_ring(K, P, m);
        fg::FinGroup G = R.unit_fingroup();
        std::vector<fg::Elt> gens = {R.key(R.image(mu_gen)), R.key(R.image(QuadElt(cert.l, 0)))};
        std::set<fg::Elt> H = fg::closure(G, gens);
        bool full = H.size() == R.units().size();
        cert.levels.push_back({m, full});
        if (!full) cert.all_full = false;
    }
    return cert;
}

TorusSearchResult torus_generator_search(const QuadField& F, long p, long bound) {
    if (!F.imaginary())
        throw std::invalid_argument("stabilizer: torus search needs an imaginary field");
    qf::PrimeSplitting P = qf::splitting_type(F, p);
    if (P.kind != qf::SplitKind::Split)
        throw std::invalid_argument("stabilizer: p must split");
    lu::UnitQuotient UQ = lu::unit_quotient(F, P);
    fg::FinGroup G = UQ.ring.unit_fingroup();
    QuadElt mu_gen = qf::unit_group(F).torsion_gen;

    TorusSearchResult out;
    out.bound = bound;
    out.level = UQ.level;
    out.target_order = UQ.order;
    for (long l = 2; l <= bound; ++l) {
        if (!qf::is_prime(l) || l == p) continue;
        auto pi = qf::cornacchia(F, l);
        if (!pi) {
            out.skipped.push_back(l);
            continue;
        }
        QuadElt beta = qf::mul(F, *pi, qf::inverse(F, qf::conj(F, *pi)));
        if (qf::norm(F, beta) != 1)
            throw std::runtime_error("stabilizer: beta not of norm 1");
        std::vector<fg::Elt> gens = {UQ.ring.key(UQ.ring.image(mu_gen)),
                                     UQ.ring.key(UQ.ring.image(beta))};
        std::set<fg::Elt> sub = fg::extend_subgroup(G, UQ.kernel, gens);
        unsigned long closure_order = sub.size() / UQ.kernel.size();
        if (closure_order == UQ.order) {
            out.found = true;
            out.l = l;
            out.pi = *pi;
            out.beta = beta;
            out.closure_order = closure_order;
            return out;
        }
    }
    return out;
}

long unitary_index(const QuadField& F, long p, long l, long m) {
    qf::PrimeSplitting P = qf::splitting_type(F, p);
    if (P.kind != qf::SplitKind::Split)
        throw std::invalid_argument("stabilizer: p must split");
    auto pi = qf::cornacchia(F, l);
    if (!pi) throw std::invalid_argument("stabilizer: no norm-l element");
    QuadElt beta = qf::mul(F, *pi, qf::inverse(F, qf::conj(F, *pi)));
    lu::ResidueRing R = lu::make_ring(F, P, m);
    fg::FinGroup G = R.unit_fingroup();
    std::set<fg::Elt> H = fg::closure(G, {R.key(R.image(beta))});
    return static_cast<long>(R.units().size() / H.size());
}

const char* fiber_name(FiberKind k) {
    switch (k) {
        case FiberKind::Multiplicative: return "Multiplicative";
        case FiberKind::NormOneTorus: return "NormOneTorus";
        default: return "AdditiveTimesMu2";
    }
}

FiberKind torus_fiber(const QuadField& F, long p) {
    switch (qf::splitting_type(F, p).kind) {
        case qf::SplitKind::Split: return FiberKind::Multiplicative;
        case qf::SplitKind::Inert: return FiberKind::NormOneTorus;
        default: return FiberKind::AdditiveTimesMu2;
    }
}

} // namespace certkit::stabilizer
