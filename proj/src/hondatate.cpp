#include "hondatate.hpp"

#include <numeric>
#include <stdexcept>

namespace certkit::hondatate {

namespace qf = certkit::quadfield;
using qf::Int;

Invariant make_invariant(long num, long den) {
    if (den <= 0) throw std::invalid_argument("hondatate: invariant denominator");
    num %= den;
    if (num < 0) num += den;
    long g = std::gcd(num == 0 ? den : num, den);
    return {num / g, den / g};
}

namespace {

long lpow(long p, long a) {
    long r = 1;
    for (long i = 0; i < a; ++i) r *= p;
    return r;
}

qf::PrimeSplitting splitting_for_ideal(const QuadField& F, long p, const qf::Ideal& I) {
    qf::PrimeSplitting S = qf::splitting_type(F, p);
    S.ideal = I;
    return S;
}

void fill_invariants(WeilClass& W) {
    const QuadField& F = W.field;
    long q_exp = W.a;
    std::vector<long> vals;
    long lcm_e = 1;
    for (const auto& P : qf::primes_above(F, W.p)) {
        qf::PrimeSplitting S = splitting_for_ideal(F, W.p, P);
        long v = qf::valuation(F, S, W.pi);
        vals.push_back(v);
        // inv = (v(pi)/v(q)) * [K_v:Q_p] = v*f/a mod 1
        Invariant inv = make_invariant(v * S.f, q_exp);
        W.finite_invariants.push_back({P, inv});
        lcm_e = std::lcm(lcm_e, inv.order());
    }
    for (const Invariant& inv : W.real_invariants) lcm_e = std::lcm(lcm_e, inv.order());
    W.e = lcm_e;
    W.dim = W.e * 2 / 2; // [K:Q] = 2
    // Brauer reciprocity
    long snum = 0, sden = 1;
    for (const auto& [P, inv] : W.finite_invariants) {
        snum = snum * inv.den + inv.num * sden;
        sden *= inv.den;
    }
    for (const Invariant& inv : W.real_invariants) {
        snum = snum * inv.den + inv.num * sden;
        sden *= inv.den;
    }
    if (snum % sden != 0)
        throw std::runtime_error("hondatate: invariant sum nonzero in Q/Z");
    // geometric simplicity: distinct valuations of pi and its conjugate at
    // some prime suffice; otherwise test whether pi/conj(pi) is a root of unity
    bool distinct = false;
    size_t i = 0;
    for (const auto& P : qf::primes_above(F, W.p)) {
        qf::PrimeSplitting S = splitting_for_ideal(F, W.p, P);
        long v = vals[i++];
        long vbar = S.e * q_exp - v; // v(pi) + v(conj pi) = v(q)
        if (v != vbar) distinct = true;
    }
    if (distinct) {
        W.geom_simple = true;
    } else {
        QuadElt beta = qf::mul(F, W.pi, qf::inverse(F, qf::conj(F, W.pi)));
        W.geom_simple = !(qf::pow(F, beta, 12) == QuadElt(1, 0));
    }
}

} // namespace

WeilClass weil_class(long t, long p, long a) {
    if (!qf::is_prime(p) || a < 1) throw std::invalid_argument("hondatate: bad p or a");
    long q = lpow(p, a);
    long disc = t * t - 4 * q;
    if (disc >= 0) throw std::invalid_argument("hondatate: not a quadratic Weil class");
    long d = qf::squarefree_part(disc);
    WeilClass W;
    W.t = t;
    W.p = p;
    W.a = a;
    W.field = qf::make_field(d);
    // pi = (t + s*sqrt(d))/2 with disc = s^2 d
    long s = 1;
    while (s * s * d != disc) ++s;
    if (W.field.half_basis())
        W.pi = QuadElt((t - s) / 2, s); // sqrt(d) = 2*omega - 1
    else
        W.pi = QuadElt(t / 2, s / 2);
    if (qf::norm(W.field, W.pi) != q || qf::trace(W.field, W.pi) != t)
        throw std::runtime_error("hondatate: root reconstruction failed");
    fill_invariants(W);
    return W;
}

WeilClass weil_real(long p, long a) {
    if (!qf::is_prime(p) || a < 1 || a % 2 == 0)
        throw std::invalid_argument("hondatate: real class needs odd a");
    WeilClass W;
    W.t = 0;
    W.p = p;
    W.a = a;
    W.real_center = true;
    W.field = qf::make_field(p);
    // pi = p^((a-1)/2) * sqrt(p)
    long s = lpow(p, (a - 1) / 2);
    if (W.field.half_basis())
        W.pi = QuadElt(Int(-s), Int(2 * s)); // sqrt(p) = 2*omega - 1
    else
        W.pi = QuadElt(Int(0), Int(s));
    if (qf::norm(W.field, W.pi) != -lpow(p, a))
        throw std::runtime_error("hondatate: root reconstruction failed");
    W.real_invariants = {make_invariant(1, 2), make_invariant(1, 2)};
    fill_invariants(W);
    return W;
}

WeilClass isogclass(long p, long n) {
    if (n < 3) throw std::invalid_argument("hondatate: isogclass needs n >= 3");
    WeilClass W = weil_class(p, p, n);
    if (!W.field.imaginary())
        throw std::runtime_error("hondatate: isogclass center not imaginary");
    if (qf::splitting_type(W.field, p).kind != qf::SplitKind::Split)
        throw std::runtime_error("hondatate: isogclass p not split");
    std::vector<Invariant> want = {make_invariant(1, n), make_invariant(n - 1, n)};
    std::vector<Invariant> got;
    for (const auto& [P, inv] : W.finite_invariants) got.push_back(inv);
    if (!((got[0] == want[0] && got[1] == want[1]) || (got[0] == want[1] && got[1] == want[0])))
        throw std::runtime_error("hondatate: isogclass invariants unexpected");
    if (W.dim != n) throw std::runtime_error("hondatate: isogclass dimension unexpected");
    if (!W.geom_simple) throw std::runtime_error("hondatate: isogclass not geometrically simple");
    return W;
}

bool is_geom_simple(const WeilClass& W) { return W.geom_simple; }

} // namespace certkit::hondatate
