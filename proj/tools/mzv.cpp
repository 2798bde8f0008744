// mzv — evaluate the parametrized multiple zeta-star series and verify the
// cyclic-sum identities they satisfy.
//
// Exit codes: 0 success / identity passed; 1 identity failed; 2 usage or
// validation error; 3 divergence or resource guard.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>

#include "mzv/suite.hpp"
#include "report_io.hpp"

namespace {

using namespace mzv;

struct Options {
    std::string k_str;
    std::string alpha_str, beta_str, gamma_str;
    int a = 2, b = 0, c = 0;
    long m = -1, n = -1, j = -1, d = -1, N = -1;
    long prec = kDefaultPrecisionBits;
    long max_terms = -1;  // -1: per-command default
    int levels = 8;
    double eps = 1e-8;
    std::string format = "text";
    std::string out_path;
    bool rational = false;
    int jobs = 1;
    std::string only;
    unsigned long long seed = 20240814;
};

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--k", o.k_str, "composition k1,k2,... (positive integers, no spaces)");
    sub->add_option("--alpha", o.alpha_str, "parameter alpha (integer, p/q, decimal or a+bi)");
    sub->add_option("--beta", o.beta_str, "parameter beta");
    sub->add_option("--gamma", o.gamma_str, "parameter gamma");
    sub->add_option("--a", o.a, "exponent a of Z(a|b|c)");
    sub->add_option("--b", o.b, "exponent b");
    sub->add_option("--c", o.c, "exponent c");
    sub->add_option("--m", o.m, "index m (lemmas, recurrences, decompositions)");
    sub->add_option("--n", o.n, "index n (lemmas, finite identity; l for dec1/dec2)");
    sub->add_option("--j", o.j, "transport offset j (trans1)");
    sub->add_option("--d", o.d, "depth d (set lemma)");
    sub->add_option("--N", o.N, "truncation bound N (set lemma)");
    sub->add_option("--prec", o.prec, "working precision in bits (>= 64)");
    sub->add_option("--max-terms", o.max_terms, "largest truncation M");
    sub->add_option("--levels", o.levels, "extrapolation levels over M, M/2, ...");
    sub->add_option("--eps", o.eps, "target tolerance");
    sub->add_option("--format", o.format, "output format: text|json|csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sub->add_option("--out", o.out_path, "write the report to this path instead of stdout");
    sub->add_flag("--rational", o.rational, "exact rational mode (truncated sums, exact checks)");
    sub->add_option("--jobs", o.jobs, "suite worker threads");
}

void emit(const Options& o, const std::string& text) {
    if (o.out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        if (!text.empty() && text.back() != '\n') std::fputc('\n', stdout);
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary);
    if (!f) throw contract_error("cannot open output path '" + o.out_path + "'");
    f << text;
}

Backend backend_of(const Options& o) {
    return o.rational ? Backend::RATIONAL : Backend::BIGFLOAT;
}

ComplexValue param_or(const Options& o, const std::string& given, const char* rational_default,
                      const char* float_default) {
    const std::string& text =
        !given.empty() ? given : std::string(o.rational ? rational_default : float_default);
    return parse_number(text, backend_of(o), o.prec);
}

ParameterTriple triple_of(const Options& o) {
    return ParameterTriple(param_or(o, o.alpha_str, "7/10", "0.7"),
                           param_or(o, o.beta_str, "13/10", "1.3"),
                           param_or(o, o.gamma_str, "9/10", "0.9"));
}

TruncationPolicy policy_of(const Options& o, long default_terms = 1L << 16) {
    // Rational mode sums the exact truncation; extrapolation levels are moot
    // and must not constrain small M.
    int levels = o.rational ? 1 : o.levels;
    long terms = o.max_terms > 0 ? o.max_terms : default_terms;
    return TruncationPolicy(terms, o.eps, levels, o.prec);
}

std::size_t out_digits(const Options& o) {
    return static_cast<std::size_t>(std::max(20.0, 0.302 * static_cast<double>(o.prec)));
}

int run_eval(const Options& o, const std::string& series) {
    // The coupling kernel of h costs O(M^2); its default budget is smaller.
    TruncationPolicy pol = policy_of(o, series == "h" ? 1L << 12 : 1L << 16);
    SeriesValue v;
    if (series == "ztriple") {
        v = z_triple(ExponentTriple(o.a, o.b, o.c), triple_of(o), pol);
    } else if (series == "zdouble") {
        v = z_double(o.a, o.b, param_or(o, o.alpha_str, "7/10", "0.7"),
                     param_or(o, o.beta_str, "13/10", "1.3"), pol);
    } else if (series == "z1star2") {
        if (o.k_str.empty()) throw contract_error("z1star2 requires --k");
        v = z1_star2(Composition::from_string(o.k_str), param_or(o, o.alpha_str, "7/10", "0.7"),
                     param_or(o, o.beta_str, "13/10", "1.3"), pol);
    } else if (series == "z1star3") {
        if (o.k_str.empty()) throw contract_error("z1star3 requires --k");
        v = z1_star3(Composition::from_string(o.k_str), triple_of(o), pol);
    } else if (series == "z2star") {
        if (o.k_str.empty()) throw contract_error("z2star requires --k");
        v = z2_star(Composition::from_string(o.k_str), triple_of(o), pol);
    } else if (series == "f") {
        if (o.m < 0 || o.n < 0) throw contract_error("f requires --m and --n");
        v = f_sum(o.m, o.n, triple_of(o), pol);
    } else if (series == "h") {
        if (o.k_str.empty()) throw contract_error("h requires --k");
        v = h_sum(Composition::from_string(o.k_str), triple_of(o), pol);
    } else if (series == "zetastar") {
        if (o.k_str.empty()) throw contract_error("zetastar requires --k");
        if (o.rational) throw contract_error("zetastar is a big-float evaluation");
        v = zeta_star(Composition::from_string(o.k_str), pol);
    } else {
        throw config_error("unknown series '" + series +
                           "' (expected ztriple|zdouble|z1star2|z1star3|z2star|f|h|zetastar)");
    }

    std::string value_str = format_number(v.value, out_digits(o));
    if (o.format == "json") {
        nlohmann::json jv;
        jv["series"] = series;
        jv["value"] = value_str;
        jv["err"] = mzv_cli::double_str(v.err.magnitude);
        jv["terms"] = v.terms_used;
        jv["levels"] = v.levels_used;
        emit(o, jv.dump(2));
    } else if (o.format == "csv") {
        emit(o, "series,value,err,terms,levels\n" + series + "," +
                    mzv_cli::csv_escape(value_str) + "," + mzv_cli::double_str(v.err.magnitude) +
                    "," + std::to_string(v.terms_used) + "," + std::to_string(v.levels_used));
    } else {
        emit(o, "value  = " + value_str + "\nerr    = " + mzv_cli::double_str(v.err.magnitude) +
                    "\nterms  = " + std::to_string(v.terms_used) +
                    "\nlevels = " + std::to_string(v.levels_used));
    }
    return 0;
}

std::string case_aux(const IdentityCase& c) {
    std::string aux;
    auto aux_add = [&](const char* name, long v) {
        if (v >= 0) aux += std::string(aux.empty() ? "" : ";") + name + "=" + std::to_string(v);
    };
    aux_add("m", c.m);
    aux_add("n", c.n);
    aux_add("j", c.j);
    aux_add("d", c.d);
    aux_add("N", c.N);
    aux_add("M", c.M);
    return aux;
}

CaseRecord record_of_case(const IdentityCase& c) {
    CaseRecord rec;
    rec.id = c.id;
    if (c.k) rec.k = c.k->to_string();
    if (c.alpha) rec.alpha = format_number(*c.alpha, 17);
    if (c.beta) rec.beta = format_number(*c.beta, 17);
    if (c.gamma) rec.gamma = format_number(*c.gamma, 17);
    rec.aux = case_aux(c);
    return rec;
}

CaseRecord record_of_residual(const IdentityCase& c, const Residual& r, std::size_t digits) {
    CaseRecord rec = record_of_case(c);
    rec.exact = false;
    rec.pass = r.pass;
    rec.lhs = format_number(r.lhs, digits);
    rec.rhs = format_number(r.rhs, digits);
    rec.abs_diff = r.abs_diff;
    rec.err_bound = r.combined_err;
    rec.terms = r.terms;
    rec.time_ms = r.time_ms;
    return rec;
}

int run_verify(const Options& o, const std::string& id_name) {
    IdentityId id = identity_from_name(id_name);
    IdentityCase c;
    c.id = id;
    const bool kernel_heavy = id == IdentityId::TRANS1 || id == IdentityId::TRANS2 ||
                              id == IdentityId::TRANS3;
    c.policy = policy_of(o, kernel_heavy ? 1L << 12 : 1L << 16);
    const bool exact = identity_is_exact(id);

    // Exact identities check in rational arithmetic; numeric ones in
    // big-floats. Parameters default to the generic point.
    Options po = o;
    po.rational = exact || o.rational;
    if (exact && !po.rational) po.rational = true;
    if (!o.k_str.empty()) c.k = Composition::from_string(o.k_str);
    const bool parameter_free = id == IdentityId::OW || id == IdentityId::SET1 ||
                                id == IdentityId::SET2 || id == IdentityId::SET3;
    if (!parameter_free) {
        c.alpha = param_or(po, o.alpha_str, "7/10", "0.7");
        c.beta = param_or(po, o.beta_str, "13/10", "1.3");
        bool beta_gamma_tied = id == IdentityId::IGARASHI || id == IdentityId::RHS_COLLAPSE ||
                               id == IdentityId::Z2_Z1_BRIDGE ||
                               id == IdentityId::BETA_GAMMA_FINITE || id == IdentityId::DEC1;
        if (!beta_gamma_tied) c.gamma = param_or(po, o.gamma_str, "9/10", "0.9");
    }

    switch (id) {
        case IdentityId::OW:
            if (!c.k) c.k = Composition({2});
            break;
        case IdentityId::IGARASHI:
            if (!c.k) c.k = Composition({2, 2});
            break;
        case IdentityId::MAIN:
            if (!c.k) c.k = Composition({2, 2});
            break;
        case IdentityId::RHS_COLLAPSE:
            if (!c.k) c.k = Composition({2, 3});
            break;
        case IdentityId::Z2_Z1_BRIDGE:
            if (!c.k) c.k = Composition({2, 2});
            break;
        case IdentityId::LEMMA31:
            c.m = o.m >= 0 ? o.m : 1;
            c.n = o.n >= 0 ? o.n : 2;
            break;
        case IdentityId::LEMMA32:
            c.m = o.m >= 0 ? o.m : 2;
            c.n = o.n >= 0 ? o.n : 4;
            break;
        case IdentityId::TRANS1:
            if (!c.k) c.k = Composition({3, 3});
            c.j = o.j >= 0 ? o.j : 0;
            break;
        case IdentityId::TRANS2:
            if (!c.k) c.k = Composition({4, 2});
            break;
        case IdentityId::TRANS3:
            if (!c.k) c.k = Composition({3, 3});
            break;
        case IdentityId::REC1:
        case IdentityId::REC2:
        case IdentityId::REC3:
        case IdentityId::PI_G:
            c.m = o.m >= 0 ? o.m : 5;
            break;
        case IdentityId::DEC1:
            c.m = o.m >= 0 ? o.m : 1;
            c.l = o.n >= 0 ? o.n : 3;  // --n carries the paper's l
            break;
        case IdentityId::DEC2:
            c.m = o.m >= 0 ? o.m : 1;
            c.l = o.n >= 0 ? o.n : 3;
            break;
        case IdentityId::BETA_GAMMA_FINITE:
            c.n = o.n >= 0 ? o.n : 6;
            break;
        case IdentityId::SET1:
        case IdentityId::SET2:
        case IdentityId::SET3:
            c.d = o.d >= 0 ? o.d : 3;
            c.N = o.N >= 0 ? o.N : 4;
            break;
        case IdentityId::H_REMARK:
            if (!c.k) c.k = Composition({1, 3});
            c.M = (o.max_terms > 0 && o.max_terms <= 64) ? o.max_terms : 10;
            break;
    }

    CaseRecord rec;
    if (exact) {
        ExactResult r = verify_exact(c);
        rec = record_of_case(c);
        rec.exact = true;
        rec.pass = r.ok;
        rec.note = r.witness;
        rec.terms = r.cases_checked;
        rec.time_ms = r.time_ms;
    } else {
        Residual r = verify_numeric(c);
        rec = record_of_residual(c, r, out_digits(o));
    }

    if (o.format == "json") {
        emit(o, mzv_cli::record_json(rec, true).dump(2));
    } else if (o.format == "csv") {
        emit(o, "id,k,alpha,beta,gamma,aux,lhs,rhs,abs_diff,err_bound,pass,terms,time_ms,note\n" +
                    mzv_cli::record_csv_row(rec));
    } else {
        emit(o, mzv_cli::record_text(rec));
    }
    return rec.pass ? 0 : 1;
}

int run_suite_cmd(const Options& o, bool policy_overridden) {
    SuiteConfig cfg;
    cfg.jobs = o.jobs;
    cfg.seed = o.seed;
    if (policy_overridden) cfg.policy = policy_of(o);
    if (!o.only.empty()) {
        std::size_t pos = 0;
        while (pos < o.only.size()) {
            std::size_t comma = o.only.find(',', pos);
            if (comma == std::string::npos) comma = o.only.size();
            cfg.only.push_back(identity_from_name(o.only.substr(pos, comma - pos)));
            pos = comma + 1;
        }
    }
    Report rep = run_suite(cfg);
    if (o.format == "json") {
        emit(o, mzv_cli::report_json(rep).dump(2));
    } else if (o.format == "csv") {
        emit(o, mzv_cli::report_csv(rep));
    } else {
        std::string out;
        for (const auto& r : rep.records) out += mzv_cli::record_text(r) + "\n";
        out += rep.overall_pass ? "suite: PASS" : "suite: FAIL";
        out += " (" + std::to_string(rep.passed) + " passed, " + std::to_string(rep.failed) +
               " failed)";
        emit(o, out);
    }
    return rep.overall_pass ? 0 : 1;
}

int run_list(const Options& o) {
    std::string out = "series:\n";
    for (const char* s :
         {"ztriple", "zdouble", "z1star2", "z1star3", "z2star", "f", "h", "zetastar"})
        out += std::string("  ") + s + "\n";
    out += "identities:\n";
    for (IdentityId id : list_identities()) out += "  " + identity_name(id) + "\n";
    emit(o, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"high-precision evaluation of parametrized multiple zeta-star series and "
                 "verification of their cyclic-sum identities"};
    app.require_subcommand(1);

    std::string series_id, identity_id;
    auto* eval = app.add_subcommand("eval", "evaluate one series");
    eval->add_option("series", series_id,
                     "ztriple|zdouble|z1star2|z1star3|z2star|f|h|zetastar")
        ->required();
    add_common(eval, o);

    auto* verify = app.add_subcommand("verify", "check one identity");
    verify->add_option("identity", identity_id, "identity id (see `mzv list`)")->required();
    add_common(verify, o);

    auto* suite = app.add_subcommand("suite", "run the default case grid for every identity");
    suite->add_option("--only", o.only, "comma-separated identity ids");
    add_common(suite, o);

    auto* list = app.add_subcommand("list", "list series and identity ids");
    add_common(list, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval->parsed()) return run_eval(o, series_id);
        if (verify->parsed()) return run_verify(o, identity_id);
        if (suite->parsed()) {
            bool policy_overridden = suite->count("--prec") || suite->count("--max-terms") ||
                                     suite->count("--levels") || suite->count("--eps");
            return run_suite_cmd(o, policy_overridden);
        }
        return run_list(o);
    } catch (const mzv::divergence_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const mzv::resource_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
