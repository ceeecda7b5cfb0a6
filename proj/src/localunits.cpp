#include "localunits.hpp"

#include <stdexcept>

namespace certkit::localunits {

namespace {

using quadfield::Int;

long long llmod(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

constexpr size_t kRingCap = 10000000;

} // namespace

std::pair<long long, long long> ResidueRing::reduce(long long u, long long v) const {
    long long v2 = llmod(v, C);
    long long k = (v - v2) / C;
    long long u2 = llmod(u - k * B, A);
    return {u2, v2};
}

std::pair<long long, long long> ResidueRing::mul(std::pair<long long, long long> x,
                                                 std::pair<long long, long long> y) const {
    // products stay within 64 bits at desk-scale ring sizes
    long long u = x.first * y.first - n * x.second * y.second;
    long long v = x.first * y.second + x.second * y.first + t * x.second * y.second;
    return reduce(u, v);
}

bool ResidueRing::is_unit(std::pair<long long, long long> x) const {
    if (x.second % pc != 0) return true;
    return llmod(x.first - (x.second / pc) * pb, pa) != 0;
}

bool ResidueRing::is_one_unit(std::pair<long long, long long> x) const {
    long long u = x.first - 1, v = x.second;
    if (llmod(v, pc) != 0) return false;
    long long v2 = llmod(v, pc);
    long long k = (v - v2) / pc;
    return llmod(u - k * pb, pa) == 0;
}

std::string ResidueRing::key(std::pair<long long, long long> x) const {
    return std::to_string(x.first) + ":" + std::to_string(x.second);
}

std::pair<long long, long long> ResidueRing::parse(const std::string& s) const {
    size_t pos = s.find(':');
    return {std::stoll(s.substr(0, pos)), std::stoll(s.substr(pos + 1))};
}

std::pair<long long, long long> ResidueRing::image(const QuadElt& x) const {
    Int den = lcm(x.a.get_den(), x.b.get_den());
    Int yu = x.a.get_num() * (den / x.a.get_den());
    Int yv = x.b.get_num() * (den / x.b.get_den());
    Int mC(static_cast<long>(C)), mA(static_cast<long>(A)), mB(static_cast<long>(B));
    Int v0, k, u0;
    mpz_fdiv_r(v0.get_mpz_t(), yv.get_mpz_t(), mC.get_mpz_t());
    k = (yv - v0) / mC;
    Int ured = yu - k * mB;
    mpz_fdiv_r(u0.get_mpz_t(), ured.get_mpz_t(), mA.get_mpz_t());
    std::pair<long long, long long> r{u0.get_si(), v0.get_si()};
    if (den == 1) return reduce(r.first, r.second);
    Int inv;
    if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mA.get_mpz_t()))
        throw std::invalid_argument("localunits: denominator not prime to the residue ring");
    return mul(reduce(r.first, r.second), {inv.get_si(), 0});
}

fingroup::FinGroup ResidueRing::unit_fingroup() const {
    fingroup::FinGroup G;
    G.id = key(reduce(1, 0));
    ResidueRing self = *this;
    G.op = [self](const fingroup::Elt& x, const fingroup::Elt& y) {
        return self.key(self.mul(self.parse(x), self.parse(y)));
    };
    return G;
}

std::set<fingroup::Elt> ResidueRing::units(size_t cap) const {
    if (size() > cap) throw std::runtime_error("localunits: residue ring too large");
    std::set<fingroup::Elt> out;
    for (long long u = 0; u < A; ++u)
        for (long long v = 0; v < C; ++v)
            if (is_unit({u, v})) out.insert(key({u, v}));
    return out;
}

std::set<fingroup::Elt> ResidueRing::principal_units(size_t cap) const {
    if (size() > cap) throw std::runtime_error("localunits: residue ring too large");
    std::set<fingroup::Elt> out;
    for (long long u = 0; u < A; ++u)
        for (long long v = 0; v < C; ++v)
            if (is_one_unit({u, v})) out.insert(key({u, v}));
    return out;
}

ResidueRing make_ring(const QuadField& F, const PrimeSplitting& P, long level) {
    ResidueRing R;
    R.F = F;
    R.P = P;
    R.level = level;
    quadfield::Ideal L = quadfield::ideal_pow(F, P.ideal, level);
    if (!L.a.fits_slong_p() || !Int(L.a * L.c).fits_slong_p())
        throw std::runtime_error("localunits: residue ring too large");
    R.A = L.a.get_si();
    R.B = L.b.get_si();
    R.C = L.c.get_si();
    if (static_cast<size_t>(R.A) * R.C > kRingCap)
        throw std::runtime_error("localunits: residue ring too large");
    R.t = F.omega_trace();
    R.n = F.omega_norm();
    R.pa = P.ideal.a.get_si();
    R.pb = P.ideal.b.get_si();
    R.pc = P.ideal.c.get_si();
    return R;
}

long mu_p_order(const QuadField& F, const PrimeSplitting& P) {
    long p = P.p;
    // genuine p-torsion needs (p-1) | e; with e <= 2 that rules out p >= 5
    if (p >= 5) return 1;
    long e0 = P.e;
    long L = e0 + 3;
    ResidueRing high = make_ring(F, P, L);
    ResidueRing low = make_ring(F, P, L - e0);
    fingroup::FinGroup G = high.unit_fingroup();
    std::set<fingroup::Elt> images;
    for (const auto& k : high.units()) {
        if (fingroup::element_pow(G, k, p) != G.id) continue;
        // spurious kernel elements collapse after dropping e levels
        auto x = high.parse(k);
        images.insert(low.key(low.reduce(x.first, x.second)));
    }
    return static_cast<long>(images.size());
}

UnitQuotient unit_quotient(const QuadField& F, const PrimeSplitting& P) {
    long p = P.p;
    long degree = P.e * P.f;
    unsigned long q = 1;
    for (int i = 0; i < P.f; ++i) q *= p;
    long mu = mu_p_order(F, P);
    unsigned long predicted = q - 1;
    for (int i = 0; i < degree; ++i) predicted *= p;
    predicted *= mu;

    for (long M = 1; M <= 12; ++M) {
        ResidueRing R = make_ring(F, P, M);
        fingroup::FinGroup G = R.unit_fingroup();
        std::set<fingroup::Elt> U = R.units();
        std::set<fingroup::Elt> ker;
        for (const auto& k : U) {
            if (!R.is_one_unit(R.parse(k))) continue;
            ker.insert(fingroup::element_pow(G, k, p));
        }
        unsigned long order = U.size() / ker.size();
        if (order != predicted) continue; // monotone in M, keep raising the level
        UnitQuotient out;
        out.ring = R;
        out.units = U;
        out.kernel = ker;
        out.Q = fingroup::quotient(G, U, ker);
        out.level = M;
        out.order = order;
        out.mu_p = mu;
        out.predicted = predicted;
        return out;
    }
    throw std::runtime_error("localunits: unit quotient did not stabilize by level 12");
}

} // namespace certkit::localunits
