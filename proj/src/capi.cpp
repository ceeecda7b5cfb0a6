#include "certkit.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "density.hpp"
#include "hondatate.hpp"
#include "localunits.hpp"
#include "quadfield.hpp"
#include "quaternion.hpp"
#include "report.hpp"
#include "stabilizer.hpp"

namespace qf = certkit::quadfield;
namespace lu = certkit::localunits;
namespace de = certkit::density;
namespace ht = certkit::hondatate;
namespace st = certkit::stabilizer;
namespace qa = certkit::quaternion;
namespace rp = certkit::report;

using rp::json;
using rp::num;

struct ck_report {
    rp::Report rep;
};

namespace {

thread_local std::string g_last_error;

qf::SigmaSet parse_sigma(const char* s) {
    std::string v = s ? s : "none";
    if (v.empty() || v == "none") return qf::SigmaSet::none();
    if (v == "all") return qf::SigmaSet::all();
    qf::SigmaSet sigma;
    std::stringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "1") sigma.first = true;
        else if (tok == "2") sigma.second = true;
        else throw std::invalid_argument("sigma must be none, all, or a list from {1,2}");
    }
    return sigma;
}

std::vector<long> parse_csv(const char* s) {
    std::vector<long> out;
    if (!s) return out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        out.push_back(std::stol(tok));
    }
    return out;
}

std::string sigma_str(const qf::SigmaSet& s) {
    if (s.empty()) return "none";
    if (s.first && s.second) return "all";
    return s.first ? "1" : "2";
}

json invariant_json(const ht::Invariant& inv) {
    json j;
    j["num"] = num(inv.num);
    j["den"] = num(inv.den);
    return j;
}

json weil_json(const ht::WeilClass& W) {
    json j;
    j["t"] = num(W.t);
    j["p"] = num(W.p);
    j["a"] = num(W.a);
    j["center_d"] = num(W.field.d);
    j["center_disc"] = num(W.field.disc);
    j["real_center"] = W.real_center;
    j["pi"] = qf::to_string(W.pi);
    json fin = json::array();
    for (const auto& [P, inv] : W.finite_invariants) {
        json e = invariant_json(inv);
        e["prime"] = P.to_string();
        fin.push_back(e);
    }
    j["finite_invariants"] = fin;
    json re = json::array();
    for (const auto& inv : W.real_invariants) re.push_back(invariant_json(inv));
    j["real_invariants"] = re;
    j["e"] = num(W.e);
    j["dim"] = num(W.dim);
    j["geom_simple"] = W.geom_simple;
    return j;
}

json basis_json(const de::SUnitBasis& basis, const qf::QuadField& F) {
    (void)F;
    json j;
    json tor = json::array();
    for (const auto& t : basis.torsion) tor.push_back(qf::to_string(t));
    j["torsion"] = tor;
    json entries = json::array();
    for (const auto& e : basis.s_entries) {
        json je;
        je["l"] = num(e.l);
        je["prime"] = e.ideal.to_string();
        je["power"] = num(e.power);
        je["generator"] = qf::to_string(e.gen);
        entries.push_back(je);
    }
    j["s_generators"] = entries;
    j["full_group"] = basis.full_group;
    j["complete"] = basis.complete;
    return j;
}

ck_status run(std::function<rp::Report()> fn, ck_report** out) {
    if (!out) {
        g_last_error = "null output pointer";
        return CK_ERR_INVALID;
    }
    *out = nullptr;
    try {
        auto t0 = std::chrono::steady_clock::now();
        rp::Report rep = fn();
        auto t1 = std::chrono::steady_clock::now();
        rep.elapsed_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        *out = new ck_report{std::move(rep)};
        g_last_error.clear();
        return CK_OK;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return CK_ERR_INVALID;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return CK_ERR_RUNTIME;
    }
}

} // namespace

extern "C" {

ck_status ck_g_invariant(long d, long p, const char* sigma, ck_report** out) {
    return run([=] {
        qf::SigmaSet S = parse_sigma(sigma);
        qf::QuadField F = qf::make_field(d);
        qf::PrimeSplitting P = qf::splitting_type(F, p);
        de::GInvariant gi = de::g_invariant(F, P, S);
        rp::Report rep;
        rep.command = "g-invariant";
        rep.inputs["d"] = num(d);
        rep.inputs["p"] = num(p);
        rep.inputs["sigma"] = sigma_str(S);
        rep.verdict = "verified";
        rep.certificate["prime"] = P.ideal.to_string();
        rep.certificate["splitting"] = qf::split_kind_name(P.kind);
        rep.certificate["level"] = num(gi.UQ.level);
        rep.certificate["unit_quotient_order"] = num(gi.UQ.order);
        rep.certificate["predicted_order"] = num(gi.UQ.predicted);
        rep.certificate["mu_p"] = num(gi.UQ.mu_p);
        rep.certificate["quotient_order"] = num(gi.quotient_order);
        rep.certificate["g"] = num(gi.g);
        if (!gi.factors.empty()) {
            json f = json::array();
            for (long v : gi.factors) f.push_back(num(v));
            rep.certificate["invariant_factors"] = f;
        }
        json imgs = json::array();
        for (const auto& s : gi.generator_images) imgs.push_back(s);
        rep.certificate["generator_images"] = imgs;
        return rep;
    }, out);
}

ck_status ck_density_check(long d, long p, const char* primes_csv, const char* sigma,
                           ck_report** out) {
    return run([=] {
        qf::SigmaSet S = parse_sigma(sigma);
        std::vector<long> primes = parse_csv(primes_csv);
        qf::QuadField F = qf::make_field(d);
        qf::PrimeSplitting P = qf::splitting_type(F, p);
        de::DensityResult res = de::is_dense(F, primes, S, P);
        rp::Report rep;
        rep.command = "density-check";
        rep.inputs["d"] = num(d);
        rep.inputs["p"] = num(p);
        rep.inputs["S"] = primes_csv ? primes_csv : "";
        rep.inputs["sigma"] = sigma_str(S);
        switch (res.status) {
            case de::DenseStatus::Dense: rep.verdict = "dense"; break;
            case de::DenseStatus::NotDense: rep.verdict = "not-dense"; break;
            default: rep.verdict = "inconclusive"; break;
        }
        rep.certificate["prime"] = P.ideal.to_string();
        rep.certificate["level"] = num(res.UQ.level);
        rep.certificate["basis"] = basis_json(res.basis, F);
        rep.certificate["closure_order"] = num(res.closure_order);
        rep.certificate["target_order"] = num(res.target_order);
        json imgs = json::array();
        for (const auto& s : res.images) imgs.push_back(s);
        rep.certificate["generator_images"] = imgs;
        return rep;
    }, out);
}

ck_status ck_witness(long d, long p, const char* sigma, long bound,
                     const char* exclude_csv, ck_report** out) {
    return run([=] {
        qf::SigmaSet S = parse_sigma(sigma);
        std::vector<long> exclude = parse_csv(exclude_csv);
        qf::QuadField F = qf::make_field(d);
        qf::PrimeSplitting P = qf::splitting_type(F, p);
        de::WitnessResult res = de::witness_primes(F, P, S, bound, exclude);
        rp::Report rep;
        rep.command = "witness";
        rep.inputs["d"] = num(d);
        rep.inputs["p"] = num(p);
        rep.inputs["sigma"] = sigma_str(S);
        rep.inputs["bound"] = num(bound);
        rep.verdict = res.found ? "found" : "exhausted";
        rep.certificate["prime"] = P.ideal.to_string();
        rep.certificate["g"] = num(res.g);
        json s = json::array();
        for (const auto& e : res.S) {
            json je;
            je["l"] = num(e.l);
            je["prime"] = e.ideal.to_string();
            je["generator"] = qf::to_string(e.gen);
            s.push_back(je);
        }
        rep.certificate["S"] = s;
        json targets = json::array();
        for (const auto& t : res.targets) targets.push_back(t);
        rep.certificate["targets"] = targets;
        json matched = json::array();
        for (bool b : res.matched) matched.push_back(b);
        rep.certificate["matched"] = matched;
        return rep;
    }, out);
}

ck_status ck_weil(long t, long p, long a, int real_center, ck_report** out) {
    return run([=] {
        ht::WeilClass W = real_center ? ht::weil_real(p, a) : ht::weil_class(t, p, a);
        rp::Report rep;
        rep.command = "weil";
        rep.inputs["t"] = num(real_center ? 0 : t);
        rep.inputs["p"] = num(p);
        rep.inputs["a"] = num(a);
        rep.inputs["real"] = real_center != 0;
        rep.verdict = "verified";
        rep.certificate = weil_json(W);
        return rep;
    }, out);
}

ck_status ck_isogclass(long p, long n, ck_report** out) {
    return run([=] {
        ht::WeilClass W = ht::isogclass(p, n);
        rp::Report rep;
        rep.command = "isogclass";
        rep.inputs["p"] = num(p);
        rep.inputs["n"] = num(n);
        rep.verdict = "verified";
        rep.certificate = weil_json(W);
        return rep;
    }, out);
}

ck_status ck_modular1(long p, long n, long l, long m_max, ck_report** out) {
    return run([=] {
        std::optional<long> lopt;
        if (l > 0) lopt = l;
        st::Modular1Certificate cert = st::modular1_certificate(p, n, lopt, m_max);
        rp::Report rep;
        rep.command = "modular1";
        rep.inputs["p"] = num(p);
        rep.inputs["n"] = num(n);
        rep.inputs["l"] = num(cert.l);
        rep.inputs["m_max"] = num(m_max);
        if (cert.rejected) rep.verdict = "rejected";
        else rep.verdict = cert.all_full ? "verified" : "failed";
        rep.certificate["center_d"] = num(cert.weil.field.d);
        json checks = json::array();
        for (const auto& [k, alpha] : cert.topgen.checks) {
            json c;
            c["k"] = num(k);
            c["alpha"] = num(alpha);
            checks.push_back(c);
        }
        rep.certificate["topgen_checks"] = checks;
        if (cert.p == 2) rep.certificate["l_mod_8"] = num(cert.topgen.p2_residue);
        rep.certificate["topgen_accepted"] = cert.topgen.accepted;
        if (!cert.rejected) {
            rep.certificate["completion_prime"] = cert.completion_prime.to_string();
            json levels = json::array();
            for (const auto& [m, full] : cert.levels) {
                json e;
                e["m"] = num(m);
                e["full"] = full;
                levels.push_back(e);
            }
            rep.certificate["levels"] = levels;
        }
        return rep;
    }, out);
}

ck_status ck_topgen(long p, long l, const char* exclude_csv, ck_report** out) {
    return run([=] {
        rp::Report rep;
        rep.command = "topgen";
        rep.inputs["p"] = num(p);
        if (l > 0) {
            st::TopGenCertificate cert = st::is_topological_generator(l, p);
            rep.inputs["l"] = num(l);
            rep.verdict = cert.accepted ? "accepted" : "rejected";
            json checks = json::array();
            for (const auto& [k, alpha] : cert.checks) {
                json c;
                c["k"] = num(k);
                c["alpha"] = num(alpha);
                checks.push_back(c);
            }
            rep.certificate["checks"] = checks;
            if (p == 2) rep.certificate["l_mod_8"] = num(cert.p2_residue);
        } else {
            std::vector<long> exclude = parse_csv(exclude_csv);
            try {
                long found = st::find_topgen(p, exclude);
                rep.verdict = "found";
                rep.certificate["l"] = num(found);
            } catch (const std::runtime_error&) {
                rep.verdict = "exhausted";
            }
        }
        return rep;
    }, out);
}

ck_status ck_torus_search(long d, long p, long bound, ck_report** out) {
    return run([=] {
        qf::QuadField F = qf::make_field(d);
        st::TorusSearchResult res = st::torus_generator_search(F, p, bound);
        rp::Report rep;
        rep.command = "torus-search";
        rep.inputs["d"] = num(d);
        rep.inputs["p"] = num(p);
        rep.inputs["bound"] = num(bound);
        rep.verdict = res.found ? "found" : "exhausted";
        rep.certificate["level"] = num(res.level);
        rep.certificate["target_order"] = num(res.target_order);
        if (res.found) {
            rep.certificate["l"] = num(res.l);
            rep.certificate["pi"] = qf::to_string(res.pi);
            rep.certificate["beta"] = qf::to_string(res.beta);
            rep.certificate["closure_order"] = num(res.closure_order);
        }
        rep.certificate["primes_without_norm_solution"] = num(res.skipped.size());
        return rep;
    }, out);
}

ck_status ck_unitary_index(long d, long p, long l, long m, ck_report** out) {
    return run([=] {
        qf::QuadField F = qf::make_field(d);
        long index = st::unitary_index(F, p, l, m);
        long w = qf::unit_group(F).w;
        rp::Report rep;
        rep.command = "unitary-index";
        rep.inputs["d"] = num(d);
        rep.inputs["p"] = num(p);
        rep.inputs["l"] = num(l);
        rep.inputs["m"] = num(m);
        rep.verdict = "verified";
        rep.certificate["index"] = num(index);
        rep.certificate["mu_order"] = num(w);
        rep.certificate["within_mu_bound"] = index <= w;
        return rep;
    }, out);
}

ck_status ck_fiber(long d, long p, ck_report** out) {
    return run([=] {
        qf::QuadField F = qf::make_field(d);
        st::FiberKind kind = st::torus_fiber(F, p);
        rp::Report rep;
        rep.command = "fiber";
        rep.inputs["d"] = num(d);
        rep.inputs["p"] = num(p);
        rep.verdict = "verified";
        rep.certificate["kind"] = st::fiber_name(kind);
        rep.certificate["splitting"] = qf::split_kind_name(qf::splitting_type(F, p).kind);
        return rep;
    }, out);
}

ck_status ck_quaternion_verify(long p, long l, long m, long k_max, ck_report** out) {
    return run([=] {
        qa::ClosureReport res = qa::closure_check(p, l, m, k_max);
        rp::Report rep;
        rep.command = "quaternion-verify";
        rep.inputs["p"] = num(p);
        rep.inputs["l"] = num(l);
        rep.inputs["m"] = num(m);
        rep.inputs["k_max"] = num(k_max);
        rep.verdict = res.equal ? "verified" : "failed";
        rep.certificate["units_order"] = num(res.units_order);
        rep.certificate["allowed_norms"] = num(res.x_order);
        json growth = json::array();
        for (const auto& [K, size] : res.growth) {
            json e;
            e["K"] = num(K);
            e["order"] = num(size);
            growth.push_back(e);
        }
        rep.certificate["growth"] = growth;
        rep.certificate["stabilized"] = res.stabilized;
        rep.certificate["closure_order"] = num(res.h_order);
        rep.certificate["norm_subgroup_order"] = num(res.p_order);
        rep.certificate["index"] = num(res.index);
        return rep;
    }, out);
}

const char* ck_report_verdict(const ck_report* r) {
    return r ? r->rep.verdict.c_str() : "";
}

int ck_report_exit_code(const ck_report* r) { return r ? r->rep.exit_code() : 64; }

char* ck_report_render(const ck_report* r, const char* format) {
    if (!r) return nullptr;
    std::string s = r->rep.render(format ? format : "text");
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void ck_string_free(char* s) { std::free(s); }

void ck_report_free(ck_report* r) { delete r; }

const char* ck_last_error(void) { return g_last_error.c_str(); }

} // extern "C"
