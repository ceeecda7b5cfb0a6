#include "quadfield.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace certkit::quadfield {

namespace {

Int gcd(const Int& x, const Int& y) {
    Int r;
    mpz_gcd(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return r;
}

Int fdiv(const Int& x, const Int& y) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return q;
}

Int fmod(const Int& x, const Int& y) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
    return r;
}

bool perfect_square(const Int& x, Int& root) {
    if (x < 0) return false;
    mpz_sqrt(root.get_mpz_t(), x.get_mpz_t());
    return root * root == x;
}

} // namespace

bool is_prime(long n) {
    if (n < 2) return false;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

bool is_squarefree(long n) {
    if (n == 0) return false;
    n = std::labs(n);
    for (long q = 2; q * q <= n; ++q) {
        if (n % (q * q) == 0) return false;
    }
    return true;
}

long squarefree_part(long n) {
    long sign = n < 0 ? -1 : 1;
    n = std::labs(n);
    long out = 1;
    for (long q = 2; q * q <= n; ++q) {
        while (n % (q * q) == 0) n /= q * q;
        if (n % q == 0) {
            out *= q;
            n /= q;
        }
    }
    return sign * out * n;
}

Int power_mod(Int base, Int exp, const Int& mod) {
    Int r;
    mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return r;
}

QuadField make_field(long d) {
    if (d == 0 || d == 1)
        throw std::invalid_argument("quadfield: d must not be 0 or 1");
    if (!is_squarefree(d))
        throw std::invalid_argument("quadfield: d must be squarefree");
    QuadField F;
    F.d = d;
    F.disc = F.half_basis() ? d : 4 * d;
    F.signature = d > 0 ? 2 : 0;
    return F;
}

QuadElt add(const QuadElt& x, const QuadElt& y) { return QuadElt(x.a + y.a, x.b + y.b); }
QuadElt sub(const QuadElt& x, const QuadElt& y) { return QuadElt(x.a - y.a, x.b - y.b); }
QuadElt neg(const QuadElt& x) { return QuadElt(-x.a, -x.b); }

QuadElt mul(const QuadField& F, const QuadElt& x, const QuadElt& y) {
    // omega^2 = t*omega - n
    Rat t(F.omega_trace()), n(F.omega_norm());
    Rat bb = x.b * y.b;
    return QuadElt(x.a * y.a - n * bb, x.a * y.b + x.b * y.a + t * bb);
}

QuadElt conj(const QuadField& F, const QuadElt& x) {
    // conj(omega) = t - omega
    return QuadElt(x.a + Rat(F.omega_trace()) * x.b, -x.b);
}

Rat norm(const QuadField& F, const QuadElt& x) {
    Rat t(F.omega_trace()), n(F.omega_norm());
    Rat r = x.a * x.a + t * x.a * x.b + n * x.b * x.b;
    r.canonicalize();
    return r;
}

Rat trace(const QuadField& F, const QuadElt& x) {
    Rat r = 2 * x.a + Rat(F.omega_trace()) * x.b;
    r.canonicalize();
    return r;
}

QuadElt inverse(const QuadField& F, const QuadElt& x) {
    Rat N = norm(F, x);
    if (N == 0) throw std::invalid_argument("quadfield: inverse of zero");
    QuadElt c = conj(F, x);
    return QuadElt(c.a / N, c.b / N);
}

QuadElt pow(const QuadField& F, QuadElt x, unsigned long e) {
    QuadElt r(1, 0);
    while (e) {
        if (e & 1) r = mul(F, r, x);
        x = mul(F, x, x);
        e >>= 1;
    }
    return r;
}

std::string to_string(const QuadElt& x) {
    std::ostringstream os;
    os << x.a.get_str() << "+" << x.b.get_str() << "*w";
    return os.str();
}

int sign_at(const QuadField& F, const QuadElt& x, RealPlace v) {
    if (F.d < 0) throw std::invalid_argument("quadfield: sign_at needs a real field");
    // write x = u + s*sqrt(d) with rational u, s
    Rat u = x.a, s = x.b;
    if (F.half_basis()) {
        u += x.b / 2;
        s = x.b / 2;
    }
    if (v == RealPlace::Second) s = -s;
    if (s == 0) return sgn(u);
    if (u == 0) return sgn(s);
    // |u| vs |s|*sqrt(d): compare u^2 with s^2*d
    Rat diff = u * u - s * s * F.d;
    if (sgn(u) == sgn(s)) return sgn(u);
    return diff > 0 ? sgn(u) : sgn(s);
}

std::string Ideal::to_string() const {
    std::ostringstream os;
    os << "[" << a.get_str() << ", " << b.get_str() << "+" << c.get_str() << "*w]";
    return os.str();
}

Ideal ideal_from_basis(std::vector<std::pair<Int, Int>> gens) {
    // second row: integer combination (wu, wv) with wv = gcd of all omega-coords
    Int wu = 0, wv = 0;
    for (auto& [u, v] : gens) {
        if (v == 0) continue;
        Int g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), wv.get_mpz_t(), v.get_mpz_t());
        wu = s * wu + t * u;
        wv = g;
    }
    if (wv == 0) throw std::invalid_argument("quadfield: generators span rank < 2");
    if (wv < 0) { wv = -wv; wu = -wu; }
    Int a = 0;
    for (auto& [u, v] : gens) {
        Int residue = u - (v / wv) * wu;
        a = gcd(a, residue);
    }
    if (a == 0) throw std::invalid_argument("quadfield: generators span rank < 2");
    if (a < 0) a = -a;
    Ideal I;
    I.a = a;
    I.c = wv;
    I.b = fmod(wu, a);
    return I;
}

Ideal ideal_principal(const QuadField& F, const QuadElt& g) {
    if (!g.is_integral() || g.is_zero())
        throw std::invalid_argument("quadfield: ideal_principal needs a nonzero integral element");
    Int u = g.a.get_num(), v = g.b.get_num();
    Int t(F.omega_trace()), n(F.omega_norm());
    // g and g*omega
    return ideal_from_basis({{u, v}, {-n * v, u + t * v}});
}

Ideal ideal_mul(const QuadField& F, const Ideal& I, const Ideal& J) {
    Int t(F.omega_trace()), n(F.omega_norm());
    auto elt_mul = [&](std::pair<Int, Int> x, std::pair<Int, Int> y) {
        return std::pair<Int, Int>{x.first * y.first - n * x.second * y.second,
                                   x.first * y.second + x.second * y.first + t * x.second * y.second};
    };
    std::vector<std::pair<Int, Int>> gi = {{I.a, 0}, {I.b, I.c}};
    std::vector<std::pair<Int, Int>> gj = {{J.a, 0}, {J.b, J.c}};
    std::vector<std::pair<Int, Int>> prods;
    for (auto& x : gi)
        for (auto& y : gj) prods.push_back(elt_mul(x, y));
    return ideal_from_basis(std::move(prods));
}

Ideal ideal_pow(const QuadField& F, Ideal I, unsigned long k) {
    if (k == 0) return Ideal{1, 0, 1};
    Ideal r = I;
    for (unsigned long i = 1; i < k; ++i) r = ideal_mul(F, r, I);
    return r;
}

bool ideal_contains(const Ideal& I, const QuadElt& x) {
    if (!x.is_integral()) return false;
    Int u = x.a.get_num(), v = x.b.get_num();
    if (fmod(v, I.c) != 0) return false;
    return fmod(u - (v / I.c) * I.b, I.a) == 0;
}

bool ideal_less(const Ideal& I, const Ideal& J) {
    if (I.a != J.a) return I.a < J.a;
    if (I.b != J.b) return I.b < J.b;
    return I.c < J.c;
}

const char* split_kind_name(SplitKind k) {
    switch (k) {
        case SplitKind::Split: return "split";
        case SplitKind::Inert: return "inert";
        default: return "ramified";
    }
}

std::vector<Ideal> primes_above(const QuadField& F, long p) {
    if (!is_prime(p)) throw std::invalid_argument("quadfield: p must be prime");
    long t = F.omega_trace(), n = F.omega_norm();
    std::vector<long> roots;
    for (long r = 0; r < p; ++r)
        if (((r * r - t * r + n) % p + p) % p == 0) roots.push_back(r);
    if (roots.empty()) return {Ideal{Int(p), Int(0), Int(p)}}; // inert
    std::vector<Ideal> out;
    for (long r : roots) {
        // (p, omega - r)
        Ideal P{Int(p), Int(((-r) % p + p) % p), Int(1)};
        out.push_back(P);
    }
    std::sort(out.begin(), out.end(), ideal_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

PrimeSplitting splitting_type(const QuadField& F, long p) {
    if (!is_prime(p)) throw std::invalid_argument("quadfield: p must be prime");
    Int D(F.disc);
    int k = mpz_kronecker_si(D.get_mpz_t(), p);
    PrimeSplitting S;
    S.p = p;
    if (k == 1) {
        S.kind = SplitKind::Split;
        S.e = 1;
        S.f = 1;
    } else if (k == -1) {
        S.kind = SplitKind::Inert;
        S.e = 1;
        S.f = 2;
    } else {
        S.kind = SplitKind::Ramified;
        S.e = 2;
        S.f = 1;
    }
    S.ideal = primes_above(F, p).front();
    return S;
}

long valuation(const QuadField& F, const PrimeSplitting& P, const QuadElt& x) {
    if (x.is_zero()) throw std::invalid_argument("quadfield: valuation of zero");
    Int den = lcm(x.a.get_den(), x.b.get_den());
    QuadElt y(x.a * den, x.b * den);
    long vden = 0;
    {
        Int m = den;
        while (fmod(m, P.p) == 0) {
            ++vden;
            m /= P.p;
        }
    }
    long vy = 0;
    Ideal Pk = P.ideal;
    while (ideal_contains(Pk, y)) {
        ++vy;
        Pk = ideal_mul(F, Pk, P.ideal);
    }
    return vy - static_cast<long>(P.e) * vden;
}

UnitGroup unit_group(const QuadField& F) {
    UnitGroup U;
    if (F.imaginary()) {
        if (F.d == -1) {
            U.w = 4;
            U.torsion_gen = QuadElt(0, 1); // i
        } else if (F.d == -3) {
            U.w = 6;
            U.torsion_gen = QuadElt(0, 1); // (1+sqrt(-3))/2, a primitive 6th root
        } else {
            U.w = 2;
            U.torsion_gen = QuadElt(-1, 0);
        }
        return U;
    }
    U.w = 2;
    U.torsion_gen = QuadElt(-1, 0);
    // continued fraction of omega = (P0 + sqrt(D)) / Q0; the first convergent
    // giving |N| = 1 yields the fundamental unit
    Int D(F.d), P(0), Q(1);
    if (F.half_basis()) {
        P = 1;
        Q = 2;
    }
    Int sq;
    mpz_sqrt(sq.get_mpz_t(), D.get_mpz_t());
    Int h1 = 1, h0 = 0, q1 = 0, q0 = 1; // convergent recurrences, shifted one step
    long t = F.omega_trace();
    const int kPeriodCap = 10000;
    for (int step = 0; step < kPeriodCap; ++step) {
        Int a = fdiv(P + sq, Q);
        Int h2 = a * h1 + h0, q2 = a * q1 + q0;
        h0 = h1; h1 = h2; q0 = q1; q1 = q2;
        P = a * Q - P;
        Q = (D - P * P) / Q;
        // candidate h - q*conj(omega) = (h - q*t) + q*omega
        QuadElt eta(Rat(h1 - q1 * t), Rat(q1));
        Rat N = norm(F, eta);
        if (N == 1 || N == -1) {
            if (sign_at(F, eta, RealPlace::First) < 0) eta = neg(eta);
            if (sign_at(F, sub(eta, QuadElt(1, 0)), RealPlace::First) < 0) {
                eta = inverse(F, eta);
                if (sign_at(F, eta, RealPlace::First) < 0) eta = neg(eta);
            }
            U.fundamental = eta;
            U.sign_pattern = {sign_at(F, eta, RealPlace::First), sign_at(F, eta, RealPlace::Second)};
            return U;
        }
    }
    throw std::runtime_error("quadfield: continued fraction period cap exceeded");
}

bool sigma_positive(const QuadField& F, const QuadElt& x, const SigmaSet& sigma) {
    if (F.imaginary()) return true;
    if (sigma.first && sign_at(F, x, RealPlace::First) <= 0) return false;
    if (sigma.second && sign_at(F, x, RealPlace::Second) <= 0) return false;
    return true;
}

BinForm form_of_ideal(const QuadField& F, const Ideal& I) {
    if (I.c != 1) throw std::invalid_argument("quadfield: form_of_ideal needs a primitive ideal");
    Int a = I.a, b = I.b;
    BinForm f;
    if (F.half_basis()) {
        f = {a, 2 * b + 1, (b * b + b + Int(F.omega_norm())) / a};
    } else {
        f = {a, 2 * b, (b * b + Int(F.omega_norm())) / a};
    }
    return f;
}

BinForm reduce_form(BinForm f) {
    if (f.disc() >= 0) throw std::invalid_argument("quadfield: reduce_form needs disc < 0");
    for (;;) {
        // normalize: -A < B <= A
        if (f.B > f.A || f.B <= -f.A) {
            Int shift = fdiv(f.A - f.B, 2 * f.A);
            Int B2 = f.B + 2 * shift * f.A;
            f.C = f.C + shift * f.B + shift * shift * f.A;
            f.B = B2;
        }
        if (f.A > f.C) {
            std::swap(f.A, f.C);
            f.B = -f.B;
            continue;
        }
        break;
    }
    if (f.B < 0 && (f.A == f.C || f.B == -f.A)) f.B = -f.B;
    return f;
}

BinForm principal_form(long disc) {
    long t = ((disc % 2) + 2) % 2;
    return {Int(1), Int(t), (Int(t) * t - disc) / 4};
}

namespace {

// all solutions (x, y) of A x^2 + B xy + C y^2 = s for a definite form;
// returns the first found (any solution suffices for generator recovery)
std::optional<std::pair<Int, Int>> solve_definite(const BinForm& f, const Int& s) {
    Int D = f.disc(); // < 0
    Int ymax2 = 4 * f.A * s; // y^2 <= 4As/|D|
    Int bound = ymax2 / (-D);
    Int ymax;
    mpz_sqrt(ymax.get_mpz_t(), bound.get_mpz_t());
    for (Int y = 0; y <= ymax + 1; ++y) {
        for (int sy = 0; sy < (y == 0 ? 1 : 2); ++sy) {
            Int yy = sy ? -y : y;
            Int delta = yy * yy * D + 4 * f.A * s;
            Int root;
            if (!perfect_square(delta, root)) continue;
            for (int sr = 0; sr < (root == 0 ? 1 : 2); ++sr) {
                Int num = -f.B * yy + (sr ? -root : root);
                if (fmod(num, 2 * f.A) != 0) continue;
                return std::pair<Int, Int>{num / (2 * f.A), yy};
            }
        }
    }
    return std::nullopt;
}

} // namespace

PrincipalResult principal_generator(const QuadField& F, const Ideal& I,
                                    const SigmaSet& sigma, long bound) {
    // strip the content: I = c * [a/c, b/c + omega]
    Ideal prim{I.a / I.c, I.b / I.c, Int(1)};
    Int content = I.c;
    BinForm f = form_of_ideal(F, prim);
    PrincipalResult res;
    if (F.imaginary()) {
        BinForm red = reduce_form(f);
        if (!(red == principal_form(F.disc))) {
            res.status = PrincipalStatus::NotPrincipal;
            return res;
        }
        auto sol = solve_definite(f, Int(1));
        if (!sol) throw std::runtime_error("quadfield: principal form without representation of 1");
        auto [x, y] = *sol;
        QuadElt g(Rat(content * (x * prim.a + y * prim.b)), Rat(content * y));
        if (!(ideal_principal(F, g) == I))
            throw std::runtime_error("quadfield: generator check failed");
        res.status = PrincipalStatus::Found;
        res.gen = g;
        return res;
    }
    // real case: search elements of I with |norm| = N(I), coordinate bound on y
    Int D = f.disc(); // > 0
    std::optional<QuadElt> found;
    for (Int y = 0; y <= bound && !found; ++y) {
        for (int sy = 0; sy < (y == 0 ? 1 : 2) && !found; ++sy) {
            Int yy = sy ? -y : y;
            for (int s = 1; s >= -1 && !found; s -= 2) {
                Int delta = yy * yy * D + 4 * f.A * s;
                Int root;
                if (!perfect_square(delta, root)) continue;
                for (int sr = 0; sr < (root == 0 ? 1 : 2); ++sr) {
                    Int num = -f.B * yy + (sr ? -root : root);
                    if (fmod(num, 2 * f.A) != 0) continue;
                    Int x = num / (2 * f.A);
                    if (x == 0 && yy == 0) continue;
                    found = QuadElt(Rat(content * (x * prim.a + yy * prim.b)), Rat(content * yy));
                    break;
                }
            }
        }
    }
    if (!found) {
        res.status = PrincipalStatus::BoundExceeded;
        return res;
    }
    if (!(ideal_principal(F, *found) == I))
        throw std::runtime_error("quadfield: generator check failed");
    // adjust by the unit sign classes {1, -1, eps, -eps}
    UnitGroup U = unit_group(F);
    std::vector<QuadElt> classes = {QuadElt(1, 0), QuadElt(-1, 0), *U.fundamental,
                                    neg(*U.fundamental)};
    for (const auto& u : classes) {
        QuadElt g = mul(F, u, *found);
        if (sigma_positive(F, g, sigma)) {
            res.status = PrincipalStatus::Found;
            res.gen = g;
            return res;
        }
    }
    res.status = PrincipalStatus::NoPositiveGenerator;
    return res;
}

std::optional<QuadElt> cornacchia(const QuadField& F, long l) {
    if (!F.imaginary()) throw std::invalid_argument("quadfield: cornacchia needs an imaginary field");
    if (!is_prime(l)) throw std::invalid_argument("quadfield: l must be prime");
    // N(pi) = l means pi generates a degree-one prime above l
    auto primes = primes_above(F, l);
    for (const auto& P : primes) {
        if (P.c != 1) continue; // inert
        auto res = principal_generator(F, P, SigmaSet::none());
        if (res.status == PrincipalStatus::Found) return res.gen;
    }
    return std::nullopt;
}

} // namespace certkit::quadfield
