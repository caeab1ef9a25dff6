// Acceptance gate: every numbered criterion below runs at its stated
// tolerance and prints exactly one PASS/FAIL line. Exit code 0 iff all pass.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "ffharm/charsums.hpp"
#include "ffharm/experiments.hpp"
#include "ffharm/reference.hpp"
#include "ffharm/rng.hpp"
#include "ffharm/serialize.hpp"

using namespace ffharm;

namespace {

constexpr std::uint64_t kSeed = 20240811;

int failures = 0;

double now_s() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

void report(const std::string& id, bool pass, const std::string& detail) {
    std::printf("%s  %-38s %s\n", pass ? "PASS" : "FAIL", id.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

const CheckResult& check_of(const SuiteReport& r, const std::string& name) {
    for (const CheckResult& c : r.checks)
        if (c.name == name) return c;
    throw std::runtime_error("missing check " + name);
}

// ---- criterion 1: Gauss sums over every odd prime power q <= 49

void criterion_gauss() {
    double t0 = now_s();
    const long qs[] = {3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29, 31, 37, 41, 43, 47, 49};
    double worst = 0.0;
    bool pass = true;
    for (long q : qs) {
        FieldPtr f = build_field_q(q);
        double root = std::sqrt(double(q));
        if (std::abs(gauss_sum(*f, 0)) > 1e-10 * q) pass = false;
        for (std::uint32_t t = 1; t < f->q(); ++t) {
            double rel = std::abs(std::abs(gauss_sum(*f, t)) - root) / root;
            worst = std::max(worst, rel);
        }
        cplx g1 = gauss_sum_g1(*f);
        cplx expect = double(f->eta(f->minus_one())) * double(q);
        worst = std::max(worst, std::abs(g1 * g1 - expect) / double(q));
    }
    double dt = now_s() - t0;
    pass = pass && worst <= 1e-10 && dt < 5.0;
    report("C01 gauss-sums", pass, fmt("max_rel_err=%.3g elapsed=%.2fs", worst, dt));
}

// ---- criteria 2+3: explicit formula and cardinalities

void criterion_explicit() {
    double t0 = now_s();
    SuiteReport r = run_suite("explicit-formula", {}, kSeed);
    double dt = now_s() - t0;
    const CheckResult& trans = check_of(r, "closed-vs-transform");
    const CheckResult& brute = check_of(r, "closed-vs-bruteforce");
    bool pass2 = trans.pass && brute.pass && dt < 300.0;
    report("C02 explicit-formula", pass2,
           fmt("transform_diff=%.3g brute_diff=%.3g brute_forms=%g/%g elapsed=%.1fs",
               trans.measured.at("max_abs_diff"), brute.measured.at("max_abs_diff"),
               brute.measured.at("forms_covered"), brute.measured.at("forms_total"), dt));
    const CheckResult& card = check_of(r, "cardinality-closed-form");
    const CheckResult& named = check_of(r, "named-cardinalities");
    report("C03 cardinality", card.pass && named.pass,
           fmt("forms=%g mismatches=%g |S|(3,3,(1,1,1))=%g |S|(3,2,(1,-1))=%g",
               card.measured.at("forms"), card.measured.at("mismatches"),
               named.measured.at("S_3_3_111"), named.measured.at("S_3_2_1m1")));
}

// ---- criterion 4: exact decay maxima

void criterion_decay() {
    SuiteReport r = run_suite("decay", {}, kSeed);
    const CheckResult& odd = check_of(r, "odd-exact-decay");
    const CheckResult& even = check_of(r, "even-exact-decay");
    report("C04 decay", r.pass,
           fmt("odd_rel=%.3g even_rel=%.3g", odd.measured.at("max_rel_err"),
               even.measured.at("max_rel_err")));
}

// ---- criterion 5: Fourier engine round trips

void criterion_fourier() {
    double worst_plancherel = 0, worst_inv = 0, worst_conv = 0;
    for (auto [q, d] : std::vector<std::pair<long, int>>{{7, 3}, {5, 4}}) {
        FieldPtr f = build_field_q(q);
        for (int trial = 0; trial < 50; ++trial) {
            Rng rng = Rng::derive(kSeed, std::uint64_t(5000 + 100 * q + trial));
            GridFunction fp(f, d, Side::primal);
            for (std::uint64_t i = 0; i < fp.size(); ++i)
                fp[i] = cplx(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
            GridFunction fh = transform_primal(fp);
            double lhs = 0, rhs = 0;
            for (std::uint64_t i = 0; i < fh.size(); ++i) lhs += std::norm(fh[i]);
            for (std::uint64_t i = 0; i < fp.size(); ++i) rhs += std::norm(fp[i]);
            rhs /= double(fp.size());
            worst_plancherel = std::max(worst_plancherel, std::abs(lhs - rhs) / rhs);
            GridFunction back = inverse_transform(fh);
            double maxv = fp.lp_norm(std::numeric_limits<double>::infinity());
            for (std::uint64_t i = 0; i < back.size(); ++i)
                worst_inv = std::max(worst_inv, std::abs(back[i] - fp[i]) / maxv);
        }
    }
    {
        FieldPtr f = build_field(5);
        for (int trial = 0; trial < 20; ++trial) {
            Rng rng = Rng::derive(kSeed, std::uint64_t(6000 + trial));
            GridFunction a(f, 2, Side::primal), b(f, 2, Side::primal);
            for (std::uint64_t i = 0; i < a.size(); ++i) {
                a[i] = cplx(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
                b[i] = cplx(2 * rng.uniform() - 1, 2 * rng.uniform() - 1);
            }
            GridFunction fast = convolve(a, b);
            GridFunction slow = reference::convolve(a, b);
            double scale = fast.lp_norm(std::numeric_limits<double>::infinity());
            for (std::uint64_t i = 0; i < fast.size(); ++i)
                worst_conv = std::max(worst_conv, std::abs(fast[i] - slow[i]) / scale);
        }
    }
    bool pass = worst_plancherel <= 1e-12 && worst_inv <= 1e-12 && worst_conv <= 1e-11;
    report("C05 fourier-engine", pass,
           fmt("plancherel=%.3g inversion=%.3g convolution=%.3g", worst_plancherel, worst_inv,
               worst_conv));
}

// ---- criterion 6: witness transform magnitudes

void criterion_witness_exactness() {
    double worst_m = 0, worst_o = 0;
    for (int d : {2, 4}) {
        for (long q : {3L, 5L, 7L}) {
            FieldPtr f = build_field_q(q);
            std::vector<std::vector<std::uint32_t>> forms;
            forms.push_back(scheme_coefficients(Scheme::alternating, *f, d));
            Rng rng = Rng::derive(kSeed, std::uint64_t(800 + 10 * q + d));
            std::vector<std::uint32_t> extra(std::size_t(d), 0);
            for (auto& c : extra) c = 1 + std::uint32_t(rng.below(f->q() - 1));
            forms.push_back(extra);
            for (const auto& a : forms) {
                VarietyPtr v = enumerate_variety_ptr(QuadraticForm::diagonal(f, a));
                if (v->cardinality() <= 1) continue;  // S = {0}: nothing to test
                GridFunction mh = transform_dual(witness_M(v->form()).indicator());
                double expect = std::pow(double(q), (d - 2) / 2.0) * double(q - 1);
                for (std::uint64_t p : v->points()) {
                    if (p == 0) continue;
                    worst_m = std::max(worst_m, std::abs(std::abs(mh[p]) - expect) / expect);
                }
            }
        }
    }
    for (long q : {3L, 5L, 7L, 9L}) {
        FieldPtr f = build_field_q(q);
        std::vector<std::uint32_t> a{f->one(), f->one(), f->minus_one()};
        OmegaWitness ow = witness_Omega(QuadraticForm::diagonal(f, a));
        GridFunction oh = transform_dual(ow.omega.indicator());
        double expect = std::sqrt(double(q)) * double(q - 1) / 2.0;
        for (std::size_t i = 0; i < ow.transformed->points().size(); ++i) {
            if (ow.transformed->point_coords(i)[1] == 0) continue;
            std::uint64_t p = ow.transformed->points()[i];
            worst_o = std::max(worst_o, std::abs(std::abs(oh[p]) - expect) / expect);
        }
    }
    bool pass = worst_m <= 1e-9 && worst_o <= 1e-9;
    report("C06 witness-exactness", pass, fmt("Mhat_rel=%.3g Omegahat_rel=%.3g", worst_m, worst_o));
}

// ---- criterion 7: restriction energy inequality

void criterion_restriction() {
    SuiteReport r = run_suite("restriction-ineq", {}, kSeed);
    const CheckResult& c = check_of(r, "energy-bound");
    report("C07 restriction-inequality", r.pass, fmt("C=%.3f (cap 10)", c.measured.at("C")));
}

// ---- criteria 8-10: sharpness suites

void criterion_sharpness_odd() {
    SuiteReport r = run_suite("extension-sharpness-odd", {}, kSeed);
    report("C08 extension-sharpness-odd", r.pass,
           fmt("ascent_slope=%.3f omega_slope=%.3f d2_M_slope=%.3f",
               check_of(r, "bounded-at-sharp-exponent").measured.at("slope"),
               check_of(r, "blowup-below-threshold").measured.at("slope"),
               check_of(r, "d2-M-witness-exponent").measured.at("slope")));
}

void criterion_sharpness_even() {
    SuiteReport r = run_suite("extension-sharpness-even", {}, kSeed);
    report("C09 extension-sharpness-even", r.pass,
           fmt("ascent_slope=%.3f M_slope=%.3f Omega_slope=%.3f",
               check_of(r, "bounded-at-sharp-exponent").measured.at("slope"),
               check_of(r, "M-blowup-below-threshold").measured.at("slope"),
               check_of(r, "Omega-blowup-below-threshold").measured.at("slope")));
}

void criterion_averaging() {
    SuiteReport r = run_suite("averaging-sharpness", {}, kSeed);
    report("C10 averaging-sharpness", r.pass,
           fmt("L2_dev=%.2g corner_slope=%.3f d4_slope=%.3f contraction_max=%.9f",
               check_of(r, "exact-L2-norm-one").measured.at("max_abs_dev"),
               check_of(r, "odd-corner-bounded").measured.at("slope"),
               check_of(r, "even-midpoint-bounded-d4").measured.at("slope"),
               check_of(r, "contraction-below-diagonal").measured.at("max_value")));
}

// ---- criterion 11: subspace structure

void criterion_subspaces() {
    bool pass = true;
    int checked = 0;
    for (long q : {3L, 5L, 7L}) {
        FieldPtr f = build_field_q(q);
        for (int d : {3, 5}) {
            Rng rng = Rng::derive(kSeed, std::uint64_t(1100 + 10 * q + d));
            for (int t = 0; t < 20; ++t) {
                std::vector<std::uint32_t> a(std::size_t(d), 0);
                for (auto& c : a) c = 1 + std::uint32_t(rng.below(f->q() - 1));
                int k = max_isotropic_dimension(QuadraticForm::diagonal(f, a));
                pass = pass && k <= (d - 1) / 2;
                ++checked;
            }
        }
        // alternating constructions at their stated dimensions
        for (int d : {2, 3, 4, 5}) {
            auto form = QuadraticForm::diagonal(f, scheme_coefficients(Scheme::alternating, *f, d));
            SubspaceKind kind =
                d % 2 == 1 ? SubspaceKind::alternating_odd : SubspaceKind::alternating_even;
            AffineSubspace h = explicit_subspace(form, kind);
            pass = pass && h.k == (d % 2 == 1 ? (d - 1) / 2 : d / 2);
            pass = pass && verify_subspace(h, enumerate_variety(form));
            ++checked;
        }
    }
    // the cone model when -1 is a square
    for (long q : {5L, 9L, 13L}) {
        FieldPtr f = build_field_q(q);
        for (int d : {3, 4, 5}) {
            auto nc = QuadraticForm::diagonal(f, scheme_coefficients(Scheme::cone, *f, d));
            SubspaceKind kind = d % 2 == 1 ? SubspaceKind::cone_odd : SubspaceKind::cone_even;
            AffineSubspace h = explicit_subspace(nc, kind);
            pass = pass && h.k == (d % 2 == 1 ? (d - 1) / 2 : d / 2);
            pass = pass && verify_subspace(h, enumerate_variety(nc));
            ++checked;
        }
    }
    report("C11 subspaces", pass, fmt("constructions_checked=%d", checked));
}

// ---- criterion 12: dyadic decomposition mechanics

void criterion_weaktype() {
    SuiteReport r = run_suite("weaktype", {}, kSeed);
    report("C12 weaktype-mechanics", r.pass,
           fmt("partition=%s levels=%s cutoff=%s",
               check_of(r, "dyadic-partition").pass ? "ok" : "bad",
               check_of(r, "level-bounds").pass ? "ok" : "bad",
               check_of(r, "cutoff-inequality").pass ? "ok" : "bad"));
}

// ---- criterion 13: runtime and reproducibility

void criterion_runtime(double total_s) {
    SuiteParams params;
    params.q_list = {3, 5};
    params.d_list = {2, 3};
    params.trials = 5;
    std::string a = to_json(run_suite("decay", params, kSeed)).dump();
    std::string b = to_json(run_suite("decay", params, kSeed)).dump();
    bool pass = a == b && total_s <= 900.0;
    report("C13 runtime-reproducibility", pass,
           fmt("elapsed=%.1fs (cap 900s) rerun_identical=%s", total_s, a == b ? "yes" : "no"));
}

}  // namespace

int main() {
    std::printf("acceptance run, seed=%llu\n", (unsigned long long)kSeed);
    criterion_gauss();
    criterion_explicit();
    criterion_decay();
    criterion_fourier();
    criterion_witness_exactness();
    criterion_restriction();
    criterion_sharpness_odd();
    criterion_sharpness_even();
    criterion_averaging();
    criterion_subspaces();
    criterion_weaktype();
    criterion_runtime(now_s());
    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
