// Command-line front end over the public C API.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "certkit.h"

namespace {

int emit(ck_status st, ck_report* rep, const std::string& format) {
    if (st != CK_OK) {
        std::fprintf(stderr, "error: %s\n", ck_last_error());
        return st == CK_ERR_INVALID ? 64 : 1;
    }
    char* text = ck_report_render(rep, format.c_str());
    std::fputs(text, stdout);
    std::fputc('\n', stdout);
    ck_string_free(text);
    int code = ck_report_exit_code(rep);
    ck_report_free(rep);
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certkit: finite-level certification of unit-group density statements"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string sigma = "none";
    std::string s_list, exclude;
    long d = 0, p = 0, n = 3, l = 0, m = 3, t = 0, a = 1, bound = 10000, kmax = 4;
    bool real_center = false;

    auto add_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format: text or json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    auto* gi = app.add_subcommand("g-invariant", "minimal generator count of the local unit quotient modulo Sigma-positive units");
    gi->add_option("-d", d, "field: Q(sqrt(d))")->required();
    gi->add_option("-p", p, "residue characteristic")->required();
    gi->add_option("--sigma", sigma, "real places required positive: none, all, or list from {1,2}");
    add_format(gi);

    auto* dc = app.add_subcommand("density-check", "decide density of the S-unit subgroup at finite level");
    dc->add_option("-d", d)->required();
    dc->add_option("-p", p)->required();
    dc->add_option("-S", s_list, "comma list of rational primes");
    dc->add_option("--sigma", sigma);
    add_format(dc);

    auto* wi = app.add_subcommand("witness", "search witness primes realizing a minimal dense S");
    wi->add_option("-d", d)->required();
    wi->add_option("-p", p)->required();
    wi->add_option("--sigma", sigma);
    wi->add_option("--bound", bound, "largest prime scanned");
    wi->add_option("--exclude", exclude, "comma list of primes to skip");
    add_format(wi);

    auto* we = app.add_subcommand("weil", "isogeny-class invariants of a quadratic Weil number");
    we->add_option("-t", t, "trace of the Weil polynomial");
    we->add_option("-p", p)->required();
    we->add_option("-a", a, "exponent: q = p^a");
    we->add_flag("--real", real_center, "use the sqrt(p^a) class instead of x^2 - tx + p^a");
    add_format(we);

    auto* ic = app.add_subcommand("isogclass", "the x^2 - px + p^n family of geometrically simple classes");
    ic->add_option("-p", p)->required();
    ic->add_option("-n", n, "dimension parameter, n >= 3")->required();
    add_format(ic);

    auto* mo = app.add_subcommand("modular1", "finite-level density certificate through the isogeny-class family");
    mo->add_option("-p", p)->required();
    mo->add_option("-n", n)->required();
    mo->add_option("-l", l, "auxiliary prime; omitted means search");
    mo->add_option("-m,--m-max", m, "largest level checked")->default_val(5L);
    add_format(mo);

    auto* tg = app.add_subcommand("topgen", "topological-generator test or search in Z_p^*");
    tg->add_option("-p", p)->required();
    tg->add_option("-l", l, "candidate prime; omitted means search");
    tg->add_option("--exclude", exclude);
    add_format(tg);

    auto* ts = app.add_subcommand("torus-search", "find a prime giving a dense norm-one torus subgroup");
    ts->add_option("-d", d)->required();
    ts->add_option("-p", p)->required();
    ts->add_option("--bound", bound);
    add_format(ts);

    auto* ui = app.add_subcommand("unitary-index", "index of the closure of <beta> at level m");
    ui->add_option("-d", d)->required();
    ui->add_option("-p", p)->required();
    ui->add_option("-l", l)->required();
    ui->add_option("-m", m)->required();
    add_format(ui);

    auto* fi = app.add_subcommand("fiber", "special fiber of the norm-one torus");
    fi->add_option("-d", d)->required();
    fi->add_option("-p", p)->required();
    add_format(fi);

    auto* qv = app.add_subcommand("quaternion-verify", "closure comparison in the local units of a maximal quaternion order");
    qv->add_option("-p", p)->required();
    qv->add_option("-l", l)->required();
    qv->add_option("-m", m)->required();
    qv->add_option("-K,--k-max", kmax, "largest norm power used for generators");
    add_format(qv);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    // the call must complete before rep is read, so sequence it explicitly
    ck_report* rep = nullptr;
    ck_status st;
    if (gi->parsed()) st = ck_g_invariant(d, p, sigma.c_str(), &rep);
    else if (dc->parsed()) st = ck_density_check(d, p, s_list.c_str(), sigma.c_str(), &rep);
    else if (wi->parsed()) st = ck_witness(d, p, sigma.c_str(), bound, exclude.c_str(), &rep);
    else if (we->parsed()) st = ck_weil(t, p, a, real_center ? 1 : 0, &rep);
    else if (ic->parsed()) st = ck_isogclass(p, n, &rep);
    else if (mo->parsed()) st = ck_modular1(p, n, l, m, &rep);
    else if (tg->parsed()) st = ck_topgen(p, l, exclude.c_str(), &rep);
    else if (ts->parsed()) st = ck_torus_search(d, p, bound, &rep);
    else if (ui->parsed()) st = ck_unitary_index(d, p, l, m, &rep);
    else if (fi->parsed()) st = ck_fiber(d, p, &rep);
    else if (qv->parsed()) st = ck_quaternion_verify(p, l, m, kmax, &rep);
    else return 64;
    return emit(st, rep, format);
}
