#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffharm/experiments.hpp"
#include "ffharm/serialize.hpp"

using namespace ffharm;

TEST_CASE("extension region: d=3, k=1, square ratio") {
    ExponentRegion region = region_necessary_extension(3, 1, true);
    // r >= 4 and r >= 2p/(p-1)
    CHECK(region.contains(0.5, 0.25));       // (p, r) = (2, 4)
    CHECK(region.contains(0.0, 0.25));
    CHECK(!region.contains(0.5, 0.3));       // r < 4
    CHECK(!region.contains(0.8, 0.15));      // violates r >= 2p/(p-1)
    CHECK(region.contains(0.0, 0.0));        // (inf, inf)
    // vertices: (0,0), (1,0), (1/2, 1/4), (0, 1/4)
    CHECK(region.vertices().size() == 4);
}

TEST_CASE("extension region without the improved bound") {
    ExponentRegion region = region_necessary_extension(3);
    // only r >= 2d/(d-1) = 3 and the p-dependent face
    CHECK(region.contains(0.5, 1.0 / 3));
    CHECK(!region.contains(0.5, 0.4));
    // d = 4 includes r >= (2d-2)/(d-2) = 3 automatically
    ExponentRegion even = region_necessary_extension(4);
    CHECK(!even.contains(0.1, 0.35));
    CHECK(even.contains(0.1, 1.0 / 3));
    // d = 2: the improved bound forces r = infinity
    ExponentRegion flat = region_necessary_extension(2);
    CHECK(flat.contains(0.3, 0.0));
    CHECK(!flat.contains(0.3, 0.05));
    CHECK_THROWS_WITH_AS(region_necessary_extension(1), doctest::Contains("BadDimension"),
                         Error);
}

TEST_CASE("averaging region: triangle with the d/(d+1) corner") {
    ExponentRegion region = region_necessary_averaging(3);
    CHECK(region.contains(0.75, 0.25));  // the corner itself
    CHECK(region.contains(0.0, 0.0));
    CHECK(region.contains(1.0, 1.0));
    CHECK(region.contains(0.0, 1.0));
    CHECK(region.contains(0.5, 0.3));
    CHECK(!region.contains(0.9, 0.1));   // beyond the corner
    CHECK(!region.contains(0.75, 0.125));
    bool corner = false;
    for (auto [u, v] : region.vertices())
        corner = corner || (std::abs(u - 0.75) < 1e-12 && std::abs(v - 0.25) < 1e-12);
    CHECK(corner);
}

TEST_CASE("averaging region with a subspace") {
    // d=2, k=1 degenerates to the triangle (0,0),(0,1),(1,1)
    ExponentRegion region = region_necessary_averaging(2, 1);
    CHECK(region.contains(0.0, 0.0));
    CHECK(region.contains(1.0, 1.0));
    CHECK(region.contains(0.5, 0.75));
    CHECK(!region.contains(0.75, 0.25));  // the k-test cuts the N4 corner away
    // k must exceed (d-1)/2
    CHECK_THROWS_WITH_AS(region_necessary_averaging(3, 1), doctest::Contains("BadSubspaceDim"),
                         Error);
    // d=4, k=2: vertices from the subspace test
    ExponentRegion r4 = region_necessary_averaging(4, 2);
    CHECK(r4.contains(5.0 / 6, 1.0 / 3, 1e-9));
    CHECK(r4.contains(2.0 / 3, 1.0 / 6, 1e-9));
}

TEST_CASE("scheme coefficients") {
    FieldPtr f = build_field(5);
    CHECK(scheme_coefficients(Scheme::all_ones, *f, 3) ==
          std::vector<std::uint32_t>{1, 1, 1});
    CHECK(scheme_coefficients(Scheme::alternating, *f, 4) ==
          std::vector<std::uint32_t>{1, 4, 1, 4});
    CHECK(scheme_coefficients(Scheme::cone, *f, 3) == std::vector<std::uint32_t>{1, 1, 4});
    CHECK(scheme_coefficients(Scheme::explicit_list, *f, 2, {2, -1}) ==
          std::vector<std::uint32_t>{2, 4});
    CHECK_THROWS_WITH_AS(scheme_coefficients(Scheme::explicit_list, *f, 2, {5, 1}),
                         doctest::Contains("BadScheme"), Error);
    CHECK_THROWS_WITH_AS(scheme_from_string("nope"), doctest::Contains("BadScheme"), Error);
}

TEST_CASE("log-log fits") {
    std::vector<double> qs{3, 5, 7, 11};
    std::vector<double> flat{2, 2, 2, 2};
    ExponentFit f0 = fit_loglog(qs, flat);
    CHECK(f0.slope == doctest::Approx(0.0));
    CHECK(f0.r2 == doctest::Approx(1.0));

    std::vector<double> lin{3, 5, 7, 11};
    ExponentFit f1 = fit_loglog(qs, lin);
    CHECK(f1.slope == doctest::Approx(1.0));
    CHECK(f1.max_residual < 1e-12);

    std::vector<double> two{1, 2};
    CHECK_THROWS_WITH_AS(fit_loglog(std::span<const double>(qs).subspan(0, 2), two),
                         doctest::Contains("TooFewPoints"), Error);
    std::vector<double> nonpos{1, 0, 1, 1};
    CHECK_THROWS_WITH_AS(fit_loglog(qs, nonpos), doctest::Contains("NonPositiveValue"), Error);
}

TEST_CASE("sweep: exact L2 values are constant 1") {
    SweepRequest req;
    req.q_list = {3, 5, 7};
    req.d = 3;
    req.scheme = Scheme::all_ones;
    req.kind = OperatorKind::averaging;
    req.p = req.r = 2.0;
    req.method = "power22";
    SweepResult s = run_sweep(req);
    REQUIRE(s.rows.size() == 3);
    for (const SweepRow& row : s.rows) CHECK(std::abs(row.value - 1.0) <= 1e-9);
    CHECK(fit_exponent(s).slope == doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("sweep: M-witness growth at d=2 matches the exact exponent") {
    SweepRequest req;
    req.q_list = {3, 5, 7, 11, 13, 17, 19, 23};
    req.d = 2;
    req.scheme = Scheme::alternating;
    req.kind = OperatorKind::extension;
    req.p = 2.0;
    req.r = 4.0;
    req.method = "witness:M";
    SweepResult s = run_sweep(req);
    ExponentFit fit = fit_exponent(s);
    CHECK(fit.slope >= 0.20);
    CHECK(fit.slope <= 0.30);
    CHECK(fit.r2 >= 0.98);
}

TEST_CASE("sweep validation") {
    SweepRequest req;
    req.q_list = {5, 3};
    CHECK_THROWS_WITH_AS(run_sweep(req), doctest::Contains("BadScheme"), Error);
    req.q_list = {3, 5};
    req.method = "nonsense";
    CHECK_THROWS_WITH_AS(run_sweep(req), doctest::Contains("BadScheme"), Error);
    req.method = "witness:Omega";
    req.d = 3;
    req.scheme = Scheme::all_ones;  // no square ratio at q = 3
    CHECK_THROWS_WITH_AS(run_sweep(req), doctest::Contains("BadScheme"), Error);
}

TEST_CASE("region predicates versus witness sweeps") {
    // averaging, d = 3: strictly inside points are not refuted, outside
    // points are refuted by a named witness with visible growth
    auto delta_sweep = [&](double p, double r) {
        SweepRequest req;
        req.q_list = {3, 5, 7, 9, 11, 13};
        req.d = 3;
        req.scheme = Scheme::alternating;
        req.kind = OperatorKind::averaging;
        req.p = p;
        req.r = r;
        req.method = "witness-best";
        return fit_exponent(run_sweep(req)).slope;
    };
    ExponentRegion region = region_necessary_averaging(3);

    // inside: (1/p, 1/r) = (0.5, 0.3)
    CHECK(region.contains(0.5, 0.3));
    CHECK(delta_sweep(2.0, 1.0 / 0.3) <= 0.10);
    // inside: the corner itself
    CHECK(delta_sweep(4.0 / 3.0, 4.0) <= 0.10);
    // outside: (0.9, 0.1)
    CHECK(!region.contains(0.9, 0.1));
    CHECK(delta_sweep(1.0 / 0.9, 10.0) >= 0.10);
    // outside: (0.75, 0.125)
    CHECK(!region.contains(0.75, 0.125));
    CHECK(delta_sweep(4.0 / 3.0, 8.0) >= 0.10);
}

TEST_CASE("suite reports are deterministic and serialization is stable") {
    SuiteParams params;
    params.q_list = {3, 5};
    params.d_list = {2, 3};
    params.trials = 4;
    SuiteReport a = run_suite("explicit-formula", params, 99);
    SuiteReport b = run_suite("explicit-formula", params, 99);
    CHECK(to_json(a).dump() == to_json(b).dump());
    CHECK(a.pass);

    SuiteReport c = run_suite("decay", params, 99);
    CHECK(c.pass);
    CHECK(to_json(c)["checks"].size() == c.checks.size());

    CHECK_THROWS_WITH_AS(run_suite("no-such-suite", params, 1),
                         doctest::Contains("UnknownSuite"), Error);
}

TEST_CASE("suite catalog runs the light members end to end") {
    SuiteParams params;
    params.q_list = {3, 5};
    params.d_list = {2, 3};
    params.trials = 3;
    for (const std::string& name : {"tomas-stein", "carbery", "weaktype"}) {
        SuiteReport r = run_suite(name, params, 7);
        CAPTURE(name);
        CHECK(r.pass);
    }
    SuiteParams rp = params;
    rp.d_list = {2};
    rp.trials = 25;
    CHECK(run_suite("restriction-ineq", rp, 7).pass);
    CHECK(run_suite("mainlemma", rp, 7).pass);

    SuiteParams cp;
    cp.q_list = {5, 9};
    cp.d_list = {3, 4};
    CHECK(run_suite("cone", cp, 7).pass);
}
