#include "quaternion.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

#include "quadfield.hpp"

namespace certkit::quaternion {

namespace qf = certkit::quadfield;

// this gmpxx build lacks long long constructors; all values here fit in long
static long lc(long long v) { return static_cast<long>(v); }

Vec4 qmul(const QuatAlgebra& A, const Vec4& x, const Vec4& y) {
    Rat a(A.a), b(A.b);
    Vec4 z;
    z[0] = x[0] * y[0] + a * x[1] * y[1] + b * x[2] * y[2] - a * b * x[3] * y[3];
    z[1] = x[0] * y[1] + x[1] * y[0] - b * x[2] * y[3] + b * x[3] * y[2];
    z[2] = x[0] * y[2] + x[2] * y[0] + a * x[1] * y[3] - a * x[3] * y[1];
    z[3] = x[0] * y[3] + x[3] * y[0] + x[1] * y[2] - x[2] * y[1];
    for (auto& c : z) c.canonicalize();
    return z;
}

Vec4 qconj(const Vec4& x) { return {x[0], -x[1], -x[2], -x[3]}; }

Rat qtrd(const Vec4& x) { return 2 * x[0]; }

Rat qnrd(const QuatAlgebra& A, const Vec4& x) {
    Rat r = x[0] * x[0] - A.a * x[1] * x[1] - A.b * x[2] * x[2] + Rat(A.a) * A.b * x[3] * x[3];
    r.canonicalize();
    return r;
}

namespace {

bool is_integer(const Rat& r) { return r.get_den() == 1; }

// solve sum_i c_i rows[i] = target over the rationals
std::optional<Vec4> solve_rows(const std::array<Vec4, 4>& rows, const Vec4& target) {
    // system A c = t with A[j][i] = rows[i][j]
    Rat M[4][5];
    for (int j = 0; j < 4; ++j) {
        for (int i = 0; i < 4; ++i) M[j][i] = rows[i][j];
        M[j][4] = target[j];
    }
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (M[r][col] != 0) { piv = r; break; }
        if (piv < 0) return std::nullopt;
        if (piv != col)
            for (int k = 0; k < 5; ++k) std::swap(M[piv][k], M[col][k]);
        for (int r = 0; r < 4; ++r) {
            if (r == col || M[r][col] == 0) continue;
            Rat f = M[r][col] / M[col][col];
            for (int k = col; k < 5; ++k) {
                M[r][k] -= f * M[col][k];
                M[r][k].canonicalize();
            }
        }
    }
    Vec4 c;
    for (int i = 0; i < 4; ++i) {
        c[i] = M[i][4] / M[i][i];
        c[i].canonicalize();
    }
    return c;
}

Rat det4(Rat M[4][4]) {
    Rat det = 1;
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (M[r][col] != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != col) {
            for (int k = 0; k < 4; ++k) std::swap(M[piv][k], M[col][k]);
            det = -det;
        }
        det *= M[col][col];
        for (int r = col + 1; r < 4; ++r) {
            if (M[r][col] == 0) continue;
            Rat f = M[r][col] / M[col][col];
            for (int k = col; k < 4; ++k) {
                M[r][k] -= f * M[col][k];
                M[r][k].canonicalize();
            }
        }
    }
    det.canonicalize();
    return det;
}

// reduced discriminant: |det Trd(e_i e_j)| = disc^2
Int reduced_disc(const QuatAlgebra& A, const std::array<Vec4, 4>& basis) {
    Rat T[4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) T[i][j] = qtrd(qmul(A, basis[i], basis[j]));
    Rat det = det4(T);
    if (!is_integer(det)) throw std::runtime_error("quaternion: non-integral trace form");
    Int d2 = abs(det.get_num());
    Int d;
    mpz_sqrt(d.get_mpz_t(), d2.get_mpz_t());
    if (d * d != d2) throw std::runtime_error("quaternion: discriminant not a square");
    return d;
}

// echelon (upper triangular) basis of an integer row lattice of rank 4
std::array<std::array<long long, 4>, 4> hnf_rows(std::vector<std::array<long long, 4>> rows) {
    std::array<std::array<long long, 4>, 4> H{};
    size_t r = 0;
    for (int col = 0; col < 4 && r < 4; ++col) {
        for (;;) {
            size_t best = rows.size();
            for (size_t i = r; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                if (best == rows.size() ||
                    std::llabs(rows[i][col]) < std::llabs(rows[best][col]))
                    best = i;
            }
            if (best == rows.size()) break;
            std::swap(rows[r], rows[best]);
            bool clean = true;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                long long q = rows[i][col] / rows[r][col];
                for (int k = 0; k < 4; ++k) rows[i][k] -= q * rows[r][k];
                if (rows[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (r < rows.size() && rows[r][col] != 0) {
            if (rows[r][col] < 0)
                for (int k = 0; k < 4; ++k) rows[r][k] = -rows[r][k];
            H[r] = rows[r];
            ++r;
        }
    }
    if (r != 4) throw std::runtime_error("quaternion: lattice rank deficient");
    return H;
}

std::array<Vec4, 4> hnf_lattice(const std::vector<Vec4>& gens) {
    Int den = 1;
    for (const Vec4& g : gens)
        for (const Rat& c : g) den = lcm(den, c.get_den());
    std::vector<std::array<long long, 4>> rows;
    for (const Vec4& g : gens) {
        std::array<long long, 4> row;
        for (int k = 0; k < 4; ++k) {
            Rat v = g[k] * den;
            v.canonicalize();
            row[k] = v.get_num().get_si();
        }
        rows.push_back(row);
    }
    auto H = hnf_rows(rows);
    std::array<Vec4, 4> out;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            out[i][k] = Rat(lc(H[i][k])) / Rat(den);
            out[i][k].canonicalize();
        }
    return out;
}

bool lattice_contains(const std::array<Vec4, 4>& basis, const Vec4& x) {
    auto c = solve_rows(basis, x);
    if (!c) return false;
    for (const Rat& v : *c)
        if (!is_integer(v)) return false;
    return true;
}

bool closed_under_mult(const QuatAlgebra& A, const std::array<Vec4, 4>& basis) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!lattice_contains(basis, qmul(A, basis[i], basis[j]))) return false;
    return true;
}

long smallest_prime_factor(const Int& n) {
    for (long r = 2;; ++r)
        if (n % r == 0) return r;
}

QuatAlgebra pick_algebra(long p) {
    if (p == 2) return {-1, -1};
    if (p % 4 == 3) return {-1, -p};
    if (p % 8 == 5) return {-2, -p};
    // p = 1 mod 8: smallest prime q = 3 mod 4 that is a nonresidue mod p
    for (long q = 3;; q += 4) {
        if (!qf::is_prime(q)) continue;
        Int Q(q);
        if (mpz_kronecker_si(Q.get_mpz_t(), p) == -1) return {-q, -p};
    }
}

} // namespace

std::optional<std::array<Int, 4>> QuatOrder::coords(const Vec4& x) const {
    auto c = solve_rows(basis, x);
    if (!c) return std::nullopt;
    std::array<Int, 4> out;
    for (int i = 0; i < 4; ++i) {
        if (!is_integer((*c)[i])) return std::nullopt;
        out[i] = (*c)[i].get_num();
    }
    return out;
}

Int QuatOrder::nrd_at(const std::array<long long, 4>& c) const {
    Int n = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) n += Int(lc(nrd_form[i][j])) * lc(c[i]) * lc(c[j]);
    return n;
}

QuatOrder make_bpinf(long p) {
    if (!qf::is_prime(p)) throw std::invalid_argument("quaternion: p must be prime");
    QuatOrder O;
    O.alg = pick_algebra(p);
    O.basis = {Vec4{1, 0, 0, 0}, Vec4{0, 1, 0, 0}, Vec4{0, 0, 1, 0}, Vec4{0, 0, 0, 1}};
    Int d = reduced_disc(O.alg, O.basis);
    while (d != p) {
        if (d % p != 0)
            throw std::runtime_error("quaternion: algebra not ramified at p");
        long r = smallest_prime_factor(d / p);
        bool adopted = false;
        std::array<long, 4> c{};
        for (c[0] = 0; c[0] < r && !adopted; ++c[0])
            for (c[1] = 0; c[1] < r && !adopted; ++c[1])
                for (c[2] = 0; c[2] < r && !adopted; ++c[2])
                    for (c[3] = 0; c[3] < r && !adopted; ++c[3]) {
                        if (c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0) continue;
                        Vec4 x{0, 0, 0, 0};
                        for (int s = 0; s < 4; ++s)
                            for (int k = 0; k < 4; ++k) x[k] += Rat(c[s]) * O.basis[s][k];
                        for (auto& v : x) {
                            v /= r;
                            v.canonicalize();
                        }
                        if (!is_integer(qtrd(x)) || !is_integer(qnrd(O.alg, x))) continue;
                        std::vector<Vec4> gens(O.basis.begin(), O.basis.end());
                        gens.push_back(x);
                        auto bigger = hnf_lattice(gens);
                        if (!closed_under_mult(O.alg, bigger)) continue;
                        O.basis = bigger;
                        d = reduced_disc(O.alg, O.basis);
                        adopted = true;
                    }
        if (!adopted)
            throw std::runtime_error("quaternion: saturation stuck above target discriminant");
    }
    O.disc = d.get_si();

    auto icoords = [&](const Vec4& x) {
        auto co = O.coords(x);
        if (!co) throw std::runtime_error("quaternion: order not closed");
        std::array<long long, 4> out;
        for (int k = 0; k < 4; ++k) out[k] = (*co)[k].get_si();
        return out;
    };
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            auto g = icoords(qmul(O.alg, O.basis[i], O.basis[j]));
            for (int k = 0; k < 4; ++k) O.gamma[i][j][k] = g[k];
        }
        auto cj = icoords(qconj(O.basis[i]));
        for (int k = 0; k < 4; ++k) O.conjmat[i][k] = cj[k];
        Rat tr = qtrd(O.basis[i]);
        if (!is_integer(tr)) throw std::runtime_error("quaternion: non-integral trace");
        O.trd[i] = tr.get_num().get_si();
    }
    for (int i = 0; i < 4; ++i) {
        Rat nii = qnrd(O.alg, O.basis[i]);
        O.nrd_form[i][i] = nii.get_num().get_si();
        for (int j = i + 1; j < 4; ++j) {
            Rat s = qtrd(qmul(O.alg, O.basis[i], qconj(O.basis[j])));
            if (!is_integer(s)) throw std::runtime_error("quaternion: non-integral norm form");
            O.nrd_form[i][j] = s.get_num().get_si();
        }
    }
    O.one = icoords(Vec4{1, 0, 0, 0});
    return O;
}

std::vector<std::array<long long, 4>> norm_elements(const QuatOrder& O, long n) {
    if (n < 1) throw std::invalid_argument("quaternion: norm target must be positive");
    // Q(c) = c^T A c; exact LDL bounds drive the lattice enumeration
    Rat A[4][4];
    for (int i = 0; i < 4; ++i) {
        A[i][i] = lc(O.nrd_form[i][i]);
        for (int j = i + 1; j < 4; ++j) A[i][j] = A[j][i] = Rat(lc(O.nrd_form[i][j])) / 2;
    }
    Rat D[4], L[4][4];
    for (int i = 0; i < 4; ++i) {
        D[i] = A[i][i];
        if (D[i] <= 0) throw std::runtime_error("quaternion: norm form not definite");
        for (int j = i + 1; j < 4; ++j) {
            L[i][j] = A[i][j] / D[i];
            L[i][j].canonicalize();
        }
        for (int j = i + 1; j < 4; ++j)
            for (int k = j; k < 4; ++k) {
                A[j][k] -= A[i][j] * A[i][k] / D[i];
                A[k][j] = A[j][k];
            }
    }
    std::vector<std::array<long long, 4>> out;
    std::array<long long, 4> c{};
    auto rec = [&](auto&& self, int i, Rat t) -> void {
        if (i < 0) {
            if (t == 0) out.push_back(c);
            return;
        }
        Rat u = 0;
        for (int j = i + 1; j < 4; ++j) u += L[i][j] * lc(c[j]);
        u.canonicalize();
        double ud = u.get_d();
        double bd = std::sqrt(std::max(0.0, Rat(t / D[i]).get_d())) + 1e-6;
        long long lo = static_cast<long long>(std::floor(-ud - bd)) - 1;
        long long hi = static_cast<long long>(std::ceil(-ud + bd)) + 1;
        for (long long v = lo; v <= hi; ++v) {
            Rat term = D[i] * (lc(v) + u) * (lc(v) + u);
            term.canonicalize();
            if (term > t) continue;
            c[i] = v;
            self(self, i - 1, t - term);
        }
        c[i] = 0;
    };
    rec(rec, 3, Rat(n));
    return out;
}

std::string LocalUnits::key(const std::array<long long, 4>& c) const {
    std::string s;
    for (int k = 0; k < 4; ++k) {
        if (k) s += ':';
        s += std::to_string(((c[k] % mod) + mod) % mod);
    }
    return s;
}

std::array<long long, 4> LocalUnits::parse(const fingroup::Elt& s) const {
    std::array<long long, 4> c{};
    size_t pos = 0;
    for (int k = 0; k < 4; ++k) {
        size_t next = s.find(':', pos);
        c[k] = std::stoll(s.substr(pos, next - pos));
        pos = next == std::string::npos ? s.size() : next + 1;
    }
    return c;
}

long long LocalUnits::nrd_mod(const std::array<long long, 4>& c) const {
    long long n = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j)
            n = (n + O.nrd_form[i][j] % mod * (c[i] * c[j] % mod)) % mod;
    return ((n % mod) + mod) % mod;
}

std::array<long long, 4> LocalUnits::inverse(const std::array<long long, 4>& c) const {
    Int n(lc(nrd_mod(c))), M(lc(mod)), ninv;
    if (!mpz_invert(ninv.get_mpz_t(), n.get_mpz_t(), M.get_mpz_t()))
        throw std::invalid_argument("quaternion: not a local unit");
    long long s = ninv.get_si();
    std::array<long long, 4> cj{};
    for (int k = 0; k < 4; ++k) {
        for (int i = 0; i < 4; ++i) cj[k] += c[i] % mod * (O.conjmat[i][k] % mod) % mod;
        cj[k] = ((cj[k] % mod) + mod) % mod * s % mod;
    }
    return cj;
}

LocalUnits local_units(const QuatOrder& O, long p, long m, size_t cap) {
    if (O.disc != p) throw std::invalid_argument("quaternion: p must be the ramified prime");
    LocalUnits R;
    R.O = O;
    R.p = p;
    R.m = m;
    R.mod = 1;
    for (long i = 0; i < m; ++i) R.mod *= p;
    double total = std::pow(static_cast<double>(R.mod), 4);
    if (total > static_cast<double>(cap))
        throw std::runtime_error("quaternion: local ring too large");

    const long long mod = R.mod;
    long long gmod[4][4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                gmod[i][j][k] = ((O.gamma[i][j][k] % mod) + mod) % mod;
    auto gcopy = std::make_shared<std::array<std::array<std::array<long long, 4>, 4>, 4>>();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) (*gcopy)[i][j][k] = gmod[i][j][k];

    R.group.op = [gcopy, mod](const fingroup::Elt& xs, const fingroup::Elt& ys) {
        std::array<long long, 4> x{}, y{}, z{};
        size_t pos = 0;
        for (int k = 0; k < 4; ++k) {
            size_t next = xs.find(':', pos);
            x[k] = std::stoll(xs.substr(pos, next - pos));
            pos = next + 1;
        }
        pos = 0;
        for (int k = 0; k < 4; ++k) {
            size_t next = ys.find(':', pos);
            y[k] = std::stoll(ys.substr(pos, next - pos));
            pos = next + 1;
        }
        for (int i = 0; i < 4; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < 4; ++j) {
                if (y[j] == 0) continue;
                long long f = x[i] * y[j] % mod;
                for (int k = 0; k < 4; ++k) z[k] = (z[k] + f * (*gcopy)[i][j][k]) % mod;
            }
        }
        std::string s;
        for (int k = 0; k < 4; ++k) {
            if (k) s += ':';
            s += std::to_string(z[k]);
        }
        return s;
    };
    R.group.id = R.key({O.one[0], O.one[1], O.one[2], O.one[3]});

    std::array<long long, 4> c{};
    for (c[0] = 0; c[0] < mod; ++c[0])
        for (c[1] = 0; c[1] < mod; ++c[1])
            for (c[2] = 0; c[2] < mod; ++c[2])
                for (c[3] = 0; c[3] < mod; ++c[3])
                    if (R.nrd_mod(c) % p != 0) R.units.insert(R.key(c));
    return R;
}

ClosureReport closure_check(long p, long l, long m, long k_max) {
    if (!qf::is_prime(l) || l == p)
        throw std::invalid_argument("quaternion: l must be a prime distinct from p");
    ClosureReport rep;
    rep.p = p;
    rep.l = l;
    rep.m = m;
    rep.k_max = k_max;
    QuatOrder O = make_bpinf(p);
    LocalUnits R = local_units(O, p, m);
    rep.units_order = R.units.size();
    const long long mod = R.mod;

    // allowed norms: the cyclic subgroup <l> of (Z/p^m)^*
    std::set<long long> lpowers;
    long long v = 1 % mod;
    do {
        lpowers.insert(v);
        v = v * (l % mod) % mod;
    } while (!lpowers.count(v));
    rep.x_order = lpowers.size();

    std::set<fingroup::Elt> P;
    for (const auto& u : R.units)
        if (lpowers.count(R.nrd_mod(R.parse(u)))) P.insert(u);
    rep.p_order = P.size();

    // l^{-1} acts as a central scalar
    Int linv, lm(lc(l % mod)), M(lc(mod));
    mpz_invert(linv.get_mpz_t(), lm.get_mpz_t(), M.get_mpz_t());
    std::array<long long, 4> inv_scalar;
    for (int k = 0; k < 4; ++k)
        inv_scalar[k] = ((O.one[k] % mod) + mod) % mod * linv.get_si() % mod;

    std::vector<fingroup::Elt> base_gens;
    for (const auto& e : norm_elements(O, 1)) base_gens.push_back(R.key(e));
    base_gens.push_back(R.key(inv_scalar));

    std::set<fingroup::Elt> H{R.group.id};
    long norm_target = 1;
    for (long K = 1; K <= k_max; ++K) {
        norm_target *= l;
        std::set<fingroup::Elt> kg;
        for (const auto& e : norm_elements(O, norm_target)) kg.insert(R.key(e));
        std::vector<fingroup::Elt> gens = base_gens;
        gens.insert(gens.end(), kg.begin(), kg.end());
        H = fingroup::extend_subgroup(R.group, H, gens);
        if (!rep.growth.empty() && rep.growth.back().second == H.size()) rep.stabilized = true;
        rep.growth.push_back({K, static_cast<unsigned long>(H.size())});
    }
    rep.h_order = H.size();

    for (const auto& h : H)
        if (!P.count(h)) throw std::runtime_error("quaternion: closure escaped the norm subgroup");
    rep.index = static_cast<long>(P.size() / H.size());
    rep.equal = rep.index == 1;
    return rep;
}

} // namespace certkit::quaternion
