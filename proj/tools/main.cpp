// Command-line front end: every operation and verification suite is reachable
// from here, with deterministic seeded runs, json/csv/text output and a
// content-addressed result cache keyed by (argv, version).

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "ffharm/charsums.hpp"
#include "ffharm/experiments.hpp"
#include "ffharm/parallel.hpp"
#include "ffharm/rng.hpp"
#include "ffharm/serialize.hpp"
#include "ffharm/version.hpp"

namespace fs = std::filesystem;
using namespace ffharm;

namespace {

struct Output {
    int code = 0;
    std::string payload;
};

struct CommonOpts {
    std::string format = "json";
    std::string out_path;
    int threads = 0;
    std::string cache_dir;
    bool no_cache = false;
    long seed = -1;  // -1 = not given

    bool has_seed() const { return seed >= 0; }
    std::uint64_t seed_u() const { return std::uint64_t(seed); }
};

double parse_exponent(const std::string& s) {
    if (s == "inf" || s == "infinity") return std::numeric_limits<double>::infinity();
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw Error("BadExponent", "cannot parse exponent '" + s + "'");
    return v;
}

FieldPtr make_field(long q, const std::vector<long>& modulus) {
    std::optional<std::vector<long>> mod;
    if (!modulus.empty()) mod = modulus;
    return build_field_q(q, std::move(mod));
}

VarietyPtr make_variety(const FieldPtr& field, int d, const std::string& scheme,
                        const std::vector<long>& coeffs, std::uint64_t guard) {
    Scheme s = coeffs.empty() ? scheme_from_string(scheme) : Scheme::explicit_list;
    auto a = scheme_coefficients(s, *field, d, coeffs);
    return enumerate_variety_ptr(QuadraticForm::diagonal(field, std::move(a)), guard);
}

json params_echo(const CommonOpts& common) {
    json j = json::object();
    if (common.has_seed()) j["seed"] = common.seed;
    return j;
}

json envelope(const std::string& command, json params, const CommonOpts& common) {
    json j;
    j["command"] = command;
    j["params"] = std::move(params);
    if (common.has_seed()) j["seed"] = common.seed;
    j["version"] = kVersion;
    return j;
}

std::string render(const json& j, const std::string& format, const std::string& text_fallback) {
    if (format == "json") return j.dump(2) + "\n";
    if (format == "text") return text_fallback;
    throw Error("BadFormat", "format '" + format + "' is not available for this command");
}

// ---------------------------------------------------------------- commands

Output cmd_field(const CommonOpts& common, long q, const std::vector<long>& modulus) {
    FieldPtr f = make_field(q, modulus);
    json j = envelope("field", {{"q", q}}, common);
    j["field"] = {{"p", f->p()},
                  {"n", f->n()},
                  {"q", f->q()},
                  {"modulus", f->modulus()},
                  {"modulus_string", f->modulus_string()}};
    std::ostringstream text;
    text << "F_" << f->q() << " = F_" << f->p();
    if (f->n() > 1) text << "[t]/(" << f->modulus_string() << ")";
    text << "\n";
    return {0, render(j, common.format, text.str())};
}

Output cmd_gauss(const CommonOpts& common, long q, const std::vector<long>& modulus) {
    FieldPtr f = make_field(q, modulus);
    json rows = json::array();
    std::ostringstream csv, text;
    csv << "t,re,im,abs\n";
    text << "Gauss sums over F_" << q << "\n";
    for (std::uint32_t t = 0; t < f->q(); ++t) {
        cplx g = gauss_sum(*f, t);
        rows.push_back({{"t", t}, {"re", g.real()}, {"im", g.imag()}, {"abs", std::abs(g)}});
        char buf[128];
        std::snprintf(buf, sizeof buf, "%u,%.17g,%.17g,%.17g\n", t, g.real(), g.imag(),
                      std::abs(g));
        csv << buf;
        std::snprintf(buf, sizeof buf, "G_%-3u = %12.8f %+12.8fi  |.| = %.8f\n", t, g.real(),
                      g.imag(), std::abs(g));
        text << buf;
    }
    if (common.format == "csv") return {0, csv.str()};
    json j = envelope("gauss", {{"q", q}}, common);
    j["rows"] = std::move(rows);
    j["constants"] = {{"sqrt_q", std::sqrt(double(q))},
                      {"eta_minus_one", f->eta(f->minus_one())}};
    return {0, render(j, common.format, text.str())};
}

Output cmd_variety(const CommonOpts& common, long q, int d, const std::string& scheme,
                   const std::vector<long>& coeffs, bool with_points, std::uint64_t guard) {
    FieldPtr f = make_field(q, {});
    VarietyPtr v = make_variety(f, d, scheme, coeffs, guard);
    json j = envelope("variety", {{"q", q}, {"d", d}}, common);
    j["variety"] = variety_summary_json(*v, with_points);
    j["constants"] = {{"cardinality_closed_form", variety_cardinality_closed(v->form())}};
    std::ostringstream text, csv;
    text << "|S| = " << v->cardinality() << " (closed form "
         << variety_cardinality_closed(v->form()) << ") on F_" << q << "^" << d << "\n";
    csv << "index\n";
    for (std::uint64_t p : v->points()) csv << p << "\n";
    if (common.format == "csv") return {0, csv.str()};
    return {0, render(j, common.format, text.str())};
}

Output cmd_sigma_hat(const CommonOpts& common, long q, int d, const std::string& scheme,
                     const std::vector<long>& coeffs, std::uint64_t guard) {
    FieldPtr f = make_field(q, {});
    VarietyPtr v = make_variety(f, d, scheme, coeffs, guard);
    GridFunction g = sigma_inv_transform(*v);
    if (common.format == "csv") {
        std::ostringstream os;
        g.write_csv(os);
        return {0, os.str()};
    }
    json values = json::array();
    for (std::uint64_t i = 0; i < g.size(); ++i)
        values.push_back(json::array({g[i].real(), g[i].imag()}));
    json j = envelope("sigma-hat", {{"q", q}, {"d", d}}, common);
    j["values"] = std::move(values);
    std::ostringstream text;
    for (std::uint64_t i = 0; i < g.size(); ++i) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%8llu  %14.10f %+14.10fi\n", (unsigned long long)i,
                      g[i].real(), g[i].imag());
        text << buf;
    }
    return {0, render(j, common.format, text.str())};
}

Output cmd_subspaces(const CommonOpts& common, long q, int d, const std::string& scheme,
                     const std::vector<long>& coeffs, std::uint64_t guard) {
    FieldPtr f = make_field(q, {});
    VarietyPtr v = make_variety(f, d, scheme, coeffs, guard);
    json attempts = json::array();
    std::ostringstream text;
    for (SubspaceKind kind :
         {SubspaceKind::alternating_odd, SubspaceKind::alternating_even, SubspaceKind::cone_odd,
          SubspaceKind::cone_even, SubspaceKind::line}) {
        json a{{"kind", subspace_kind_name(kind)}};
        try {
            AffineSubspace h = explicit_subspace(v->form(), kind);
            a["ok"] = true;
            a["k"] = h.k;
            a["basis"] = h.basis;
            a["verified"] = verify_subspace(h, *v);
            text << subspace_kind_name(kind) << ": k=" << h.k << " verified\n";
        } catch (const Error& e) {
            a["ok"] = false;
            a["error"] = e.code();
            text << subspace_kind_name(kind) << ": " << e.code() << "\n";
        }
        attempts.push_back(std::move(a));
    }
    int witt = max_isotropic_dimension(v->form(), guard);
    json j = envelope("subspaces", {{"q", q}, {"d", d}}, common);
    j["attempts"] = std::move(attempts);
    j["constants"] = {{"max_isotropic_dimension", witt}};
    text << "max isotropic dimension: " << witt << "\n";
    return {0, render(j, common.format, text.str())};
}

Output cmd_norm(const CommonOpts& common, long q, int d, const std::string& scheme,
                const std::vector<long>& coeffs, const std::string& kind_s,
                const std::string& p_s, const std::string& r_s, const std::string& method,
                const AscentOptions& aopt, std::uint64_t guard) {
    FieldPtr f = make_field(q, {});
    VarietyPtr v = make_variety(f, d, scheme, coeffs, guard);
    OperatorKind kind = kind_s == "extension"    ? OperatorKind::extension
                        : kind_s == "restriction" ? OperatorKind::restriction
                        : kind_s == "averaging"   ? OperatorKind::averaging
                                                  : throw Error("BadScheme", "unknown kind '" + kind_s + "'");
    OperatorSpec spec{kind, v, parse_exponent(p_s), parse_exponent(r_s)};

    json j = envelope("norm",
                      {{"q", q}, {"d", d}, {"kind", kind_s}, {"p", p_s}, {"r", r_s},
                       {"method", method}},
                      common);
    std::ostringstream text;
    if (method == "ascent") {
        AscentOptions opt = aopt;
        opt.seed = common.seed_u();
        NormEstimate e = norm_estimate_ascent(spec, opt);
        j["estimate"] = to_json(e);
        text << "ascent lower bound: " << e.value << (e.converged ? "" : " (unconverged)") << "\n";
    } else if (method == "power22") {
        NormEstimate e = exact_norm_2_2(spec);
        j["estimate"] = to_json(e);
        text << "L2->L2 norm: " << e.value << "\n";
    } else if (method == "witness-battery") {
        json arr = json::array();
        for (const NormEstimate& e : witness_battery(spec)) {
            arr.push_back(to_json(e));
            text << e.witness << ": " << e.value << "\n";
        }
        j["estimates"] = std::move(arr);
    } else {
        throw Error("BadScheme", "unknown method '" + method + "'");
    }
    return {0, render(j, common.format, text.str())};
}

Output cmd_sweep(const CommonOpts& common, const std::vector<long>& q_list, int d,
                 const std::string& scheme, const std::vector<long>& coeffs,
                 const std::string& kind_s, const std::string& p_s, const std::string& r_s,
                 const std::string& method, const AscentOptions& aopt, std::uint64_t guard,
                 const std::string& svg_path) {
    SweepRequest req;
    req.q_list = q_list;
    req.d = d;
    if (!coeffs.empty()) {
        req.scheme = Scheme::explicit_list;
        req.explicit_coeffs = coeffs;
    } else {
        req.scheme = scheme_from_string(scheme);
    }
    req.kind = kind_s == "extension"    ? OperatorKind::extension
               : kind_s == "restriction" ? OperatorKind::restriction
               : kind_s == "averaging"   ? OperatorKind::averaging
                                         : throw Error("BadScheme", "unknown kind '" + kind_s + "'");
    req.p = parse_exponent(p_s);
    req.r = parse_exponent(r_s);
    req.method = method;
    req.seed = common.seed_u();
    req.ascent = aopt;
    req.guard = guard;

    SweepResult result = run_sweep(req);
    std::optional<ExponentFit> fit;
    if (result.rows.size() >= 3) {
        bool positive = true;
        for (const SweepRow& row : result.rows) positive = positive && row.value > 0;
        if (positive) fit = fit_exponent(result);
    }
    if (!svg_path.empty()) {
        std::ofstream svg(svg_path, std::ios::trunc);
        svg << sweep_svg(result, fit ? &*fit : nullptr);
        if (!svg) throw Error("BadFormat", "cannot write " + svg_path);
    }
    if (common.format == "csv") return {0, sweep_csv(result)};
    json j = envelope("sweep",
                      {{"d", d}, {"kind", kind_s}, {"p", p_s}, {"r", r_s}, {"method", method}},
                      common);
    j["rows"] = to_json(result)["rows"];
    if (fit) j["constants"] = {{"fit", to_json(*fit)}};
    return {0, render(j, common.format, sweep_text(result, fit ? &*fit : nullptr))};
}

Output cmd_region(const CommonOpts& common, const std::string& kind_s, int d,
                  std::optional<int> k, bool square_ratio, const std::string& p_s,
                  const std::string& r_s) {
    ExponentRegion region = kind_s == "extension"
                                ? region_necessary_extension(d, k, square_ratio)
                                : region_necessary_averaging(d, k);
    json j = envelope("region", {{"kind", kind_s}, {"d", d}}, common);
    if (k) j["params"]["k"] = *k;
    j["region"] = to_json(region);
    std::ostringstream text;
    text << "necessary region (" << kind_s << ", d=" << d << ")\n";
    for (auto [u, v] : region.vertices()) text << "  (" << u << ", " << v << ")\n";
    if (!p_s.empty() && !r_s.empty()) {
        double p = parse_exponent(p_s), r = parse_exponent(r_s);
        double u = std::isinf(p) ? 0.0 : 1.0 / p;
        double v = std::isinf(r) ? 0.0 : 1.0 / r;
        bool inside = region.contains(u, v);
        j["membership"] = {{"p", p_s}, {"r", r_s}, {"inside", inside}};
        text << "(1/p,1/r)=(" << u << "," << v << ") " << (inside ? "inside" : "outside") << "\n";
    }
    return {0, render(j, common.format, text.str())};
}

Output cmd_suite(const CommonOpts& common, const std::string& name,
                 const std::vector<long>& q_list, const std::vector<int>& d_list, int trials,
                 std::uint64_t budget, const AscentOptions& aopt) {
    SuiteParams params;
    params.q_list = q_list;
    params.d_list = d_list;
    params.trials = trials;
    if (budget) params.direct_budget = budget;
    params.ascent = aopt;
    SuiteReport report = run_suite(name, params, common.seed_u());

    int code = report.pass ? 0 : 1;
    if (!report.pass) {
        for (const CheckResult& c : report.checks)
            if (!c.pass) {
                std::cerr << "FAIL " << report.suite << "/" << c.name << "\n";
                break;
            }
    }
    if (common.format == "csv") {
        std::ostringstream os;
        os << "check,pass\n";
        for (const CheckResult& c : report.checks) os << c.name << "," << (c.pass ? 1 : 0) << "\n";
        return {code, os.str()};
    }
    json j = envelope("suite", {{"name", name}}, common);
    j["checks"] = to_json(report)["checks"];
    j["pass"] = report.pass;
    j["q_list"] = report.q_list;
    j["d_list"] = report.d_list;
    j["trials"] = report.trials;
    return {code, render(j, common.format, suite_report_text(report))};
}

// ---------------------------------------------------------------- cache

std::string canonical_key(int argc, char** argv) {
    std::string s = kVersion;
    for (int i = 1; i < argc; ++i) {
        s += '\x1f';
        for (const char* c = argv[i]; *c; ++c) s += (*c == '\n' ? ' ' : *c);
    }
    return s;
}

fs::path cache_file(const std::string& dir, const std::string& key) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx",
                  (unsigned long long)fnv1a(key.data(), key.size()));
    return fs::path(dir) / (std::string(buf) + ".cache");
}

std::optional<Output> cache_lookup(const std::string& dir, const std::string& key) {
    std::ifstream in(cache_file(dir, key), std::ios::binary);
    if (!in) return std::nullopt;
    std::string stored_key, code_line;
    if (!std::getline(in, stored_key) || stored_key != key) return std::nullopt;  // corrupt: recompute
    if (!std::getline(in, code_line)) return std::nullopt;
    Output out;
    try {
        out.code = std::stoi(code_line);
    } catch (...) {
        return std::nullopt;
    }
    std::ostringstream payload;
    payload << in.rdbuf();
    out.payload = payload.str();
    return out;
}

bool cache_store(const std::string& dir, const std::string& key, const Output& out) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) return false;
    std::ofstream os(cache_file(dir, key), std::ios::binary | std::ios::trunc);
    if (!os) return false;
    os << key << "\n" << out.code << "\n" << out.payload;
    return bool(os);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-field extension/averaging estimate laboratory"};
    app.require_subcommand(1);

    CommonOpts common;
    long q = 3;
    std::vector<long> q_list, coeffs, modulus;
    std::vector<int> d_list;
    int d = 3, trials = 0, k_in = -1;
    bool square_ratio = false, with_points = false;
    std::uint64_t guard = 1ull << 24, budget = 0;
    std::string scheme = "alternating", kind = "extension", p_s = "2", r_s = "4";
    std::string method, suite_name;
    AscentOptions aopt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", common.format)->check(CLI::IsMember({"json", "csv", "text"}));
        cmd->add_option("--out", common.out_path);
        cmd->add_option("--threads", common.threads);
        cmd->add_option("--cache", common.cache_dir);
        cmd->add_flag("--no-cache", common.no_cache);
        cmd->add_option("--seed", common.seed);
    };

    CLI::App* c_field = app.add_subcommand("field", "inspect a finite field");
    c_field->add_option("--q", q)->required();
    c_field->add_option("--modulus", modulus)->delimiter(',');
    add_common(c_field);

    CLI::App* c_gauss = app.add_subcommand("gauss", "Gauss sum table");
    c_gauss->add_option("--q", q)->required();
    c_gauss->add_option("--modulus", modulus)->delimiter(',');
    add_common(c_gauss);

    CLI::App* c_var = app.add_subcommand("variety", "enumerate the surface");
    c_var->add_option("--q", q)->required();
    c_var->add_option("--d", d)->required();
    c_var->add_option("--coeffs", coeffs)->delimiter(',');
    c_var->add_option("--scheme", scheme);
    c_var->add_flag("--points", with_points);
    c_var->add_option("--guard", guard);
    add_common(c_var);

    CLI::App* c_sig = app.add_subcommand("sigma-hat", "(d sigma)^vee values");
    c_sig->add_option("--q", q)->required();
    c_sig->add_option("--d", d)->required();
    c_sig->add_option("--coeffs", coeffs)->delimiter(',');
    c_sig->add_option("--scheme", scheme);
    c_sig->add_option("--guard", guard);
    add_common(c_sig);

    CLI::App* c_sub = app.add_subcommand("subspaces", "explicit subspaces and Witt index");
    c_sub->add_option("--q", q)->required();
    c_sub->add_option("--d", d)->required();
    c_sub->add_option("--coeffs", coeffs)->delimiter(',');
    c_sub->add_option("--scheme", scheme);
    c_sub->add_option("--guard", guard);
    add_common(c_sub);

    CLI::App* c_norm = app.add_subcommand("norm", "operator norm estimate");
    c_norm->add_option("--q", q)->required();
    c_norm->add_option("--d", d)->required();
    c_norm->add_option("--coeffs", coeffs)->delimiter(',');
    c_norm->add_option("--scheme", scheme);
    c_norm->add_option("--kind", kind)->check(CLI::IsMember({"extension", "restriction", "averaging"}));
    c_norm->add_option("--p", p_s);
    c_norm->add_option("--r", r_s);
    c_norm->add_option("--method", method)->default_val("ascent");
    c_norm->add_option("--restarts", aopt.restarts);
    c_norm->add_option("--max-iter", aopt.max_iter);
    c_norm->add_option("--tol", aopt.tol);
    c_norm->add_option("--guard", guard);
    add_common(c_norm);

    CLI::App* c_sweep = app.add_subcommand("sweep", "norm estimates across q");
    c_sweep->add_option("--q", q_list)->delimiter(',')->required();
    c_sweep->add_option("--d", d)->required();
    c_sweep->add_option("--coeffs", coeffs)->delimiter(',');
    c_sweep->add_option("--scheme", scheme);
    c_sweep->add_option("--kind", kind)->check(CLI::IsMember({"extension", "restriction", "averaging"}));
    c_sweep->add_option("--p", p_s);
    c_sweep->add_option("--r", r_s);
    c_sweep->add_option("--method", method)->default_val("ascent");
    c_sweep->add_option("--restarts", aopt.restarts);
    c_sweep->add_option("--max-iter", aopt.max_iter);
    c_sweep->add_option("--tol", aopt.tol);
    c_sweep->add_option("--guard", guard);
    std::string svg_path;
    c_sweep->add_option("--svg", svg_path);
    add_common(c_sweep);

    CLI::App* c_region = app.add_subcommand("region", "necessary exponent regions");
    c_region->add_option("--kind", kind)->check(CLI::IsMember({"extension", "averaging"}))->required();
    c_region->add_option("--d", d)->required();
    c_region->add_option("--k", k_in);
    c_region->add_flag("--square-ratio", square_ratio);
    std::string mem_p, mem_r;
    c_region->add_option("--p", mem_p);
    c_region->add_option("--r", mem_r);
    add_common(c_region);

    CLI::App* c_suite = app.add_subcommand("suite", "named verification suites");
    c_suite->add_option("name", suite_name)->required();
    c_suite->add_option("--q", q_list)->delimiter(',');
    c_suite->add_option("--d", d_list)->delimiter(',');
    c_suite->add_option("--trials", trials);
    c_suite->add_option("--budget", budget);
    c_suite->add_option("--restarts", aopt.restarts);
    c_suite->add_option("--max-iter", aopt.max_iter);
    c_suite->add_option("--tol", aopt.tol);
    add_common(c_suite);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "argument error: " << e.what() << "\n";
        return 2;
    }

    set_threads(common.threads);

    // randomized commands must pin their seed
    bool randomized = c_suite->parsed() ||
                      ((c_norm->parsed() || c_sweep->parsed()) && method == "ascent");
    if (randomized && !common.has_seed()) {
        std::cerr << "argument error: --seed is required for randomized commands\n";
        return 2;
    }

    std::string cache_dir = common.cache_dir;
    if (cache_dir.empty()) {
        if (const char* env = std::getenv("FFHARM_CACHE")) cache_dir = env;
    }
    if (cache_dir.empty()) {
        if (const char* home = std::getenv("HOME"))
            cache_dir = (fs::path(home) / ".cache" / "ffharm").string();
    }
    const std::string key = canonical_key(argc, argv);

    Output out;
    bool from_cache = false;
    if (!common.no_cache && !cache_dir.empty()) {
        if (auto hit = cache_lookup(cache_dir, key)) {
            out = std::move(*hit);
            from_cache = true;
        }
    }

    if (!from_cache) {
        try {
            if (c_field->parsed()) out = cmd_field(common, q, modulus);
            else if (c_gauss->parsed()) out = cmd_gauss(common, q, modulus);
            else if (c_var->parsed()) out = cmd_variety(common, q, d, scheme, coeffs, with_points, guard);
            else if (c_sig->parsed()) out = cmd_sigma_hat(common, q, d, scheme, coeffs, guard);
            else if (c_sub->parsed()) out = cmd_subspaces(common, q, d, scheme, coeffs, guard);
            else if (c_norm->parsed())
                out = cmd_norm(common, q, d, scheme, coeffs, kind, p_s, r_s, method, aopt, guard);
            else if (c_sweep->parsed())
                out = cmd_sweep(common, q_list, d, scheme, coeffs, kind, p_s, r_s, method, aopt,
                                guard, svg_path);
            else if (c_region->parsed())
                out = cmd_region(common, kind, d, k_in >= 0 ? std::optional<int>(k_in) : std::nullopt,
                                 square_ratio, mem_p, mem_r);
            else if (c_suite->parsed())
                out = cmd_suite(common, suite_name, q_list, d_list, trials, budget, aopt);
        } catch (const Error& e) {
            std::cerr << e.what() << "\n";
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
        if (!common.no_cache && !cache_dir.empty()) {
            if (!cache_store(cache_dir, key, out)) {
                std::cerr << "cache write failure: " << cache_dir << "\n";
                return 3;
            }
        }
    }

    std::cout << out.payload;
    if (!common.out_path.empty()) {
        std::ofstream f(common.out_path, std::ios::binary | std::ios::trunc);
        f << out.payload;
        if (!f) {
            std::cerr << "cannot write " << common.out_path << "\n";
            return 3;
        }
    }
    return out.code;
}
