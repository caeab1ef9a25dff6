#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ffharm/norms.hpp"

namespace ffharm {

// ---------------------------------------------------------------- regions

// a*u + b*v <= c in the (u, v) = (1/p, 1/r) square
struct HalfPlane {
    double a = 0, b = 0, c = 0;
};

// Convex region of admissible (1/p, 1/r) pairs, boundary included.
class ExponentRegion {
public:
    ExponentRegion(std::vector<std::pair<double, double>> vertices,
                   std::vector<HalfPlane> constraints);

    const std::vector<std::pair<double, double>>& vertices() const { return vertices_; }
    const std::vector<HalfPlane>& constraints() const { return constraints_; }
    bool contains(double inv_p, double inv_r, double eps = 1e-9) const;

private:
    std::vector<std::pair<double, double>> vertices_;
    std::vector<HalfPlane> constraints_;
};

// Necessary conditions for R*(p -> r) <= C: r >= 2d/(d-1), the p-dependent
// bound, the k-subspace improvement when k is given, and the improved bound
// r >= (2d-2)/(d-2) for even d (or odd d under the square-ratio hypothesis).
ExponentRegion region_necessary_extension(int d, std::optional<int> k = std::nullopt,
                                          bool square_ratio = false);

// Necessary region for A(p -> r) <= C: the hull of (0,0), (0,1), (1,1) and
// (d/(d+1), 1/(d+1)); with a k-dimensional subspace (k > (d-1)/2) the corner
// is replaced by the two subspace-test vertices.
ExponentRegion region_necessary_averaging(int d, std::optional<int> k = std::nullopt);

// ---------------------------------------------------------------- sweeps

enum class Scheme { all_ones, alternating, cone, explicit_list };

Scheme scheme_from_string(const std::string& s);
const char* scheme_name(Scheme s);
std::vector<std::uint32_t> scheme_coefficients(Scheme s, const FiniteField& field, int d,
                                               const std::vector<long>& explicit_coeffs = {});

struct SweepRequest {
    std::vector<long> q_list;
    int d = 3;
    Scheme scheme = Scheme::alternating;
    std::vector<long> explicit_coeffs;
    OperatorKind kind = OperatorKind::extension;
    double p = 2.0;
    double r = 4.0;
    // "ascent" | "power22" | "witness-best" | "witness:<name>"
    std::string method = "ascent";
    std::uint64_t seed = 0;
    AscentOptions ascent{};
    std::uint64_t guard = 1ull << 24;
};

struct SweepRow {
    long q = 0;
    std::uint64_t cardinality = 0;
    double value = 0.0;
    std::string method;
    std::map<std::string, double> witness_values;
};

struct SweepResult {
    SweepRequest request;
    std::vector<SweepRow> rows;
};

SweepResult run_sweep(const SweepRequest& request);

struct ExponentFit {
    double slope = 0, intercept = 0, r2 = 0, max_residual = 0;
    std::vector<double> residuals;
};

// ordinary least squares on (log q, log value); needs >= 3 positive rows
ExponentFit fit_exponent(const SweepResult& sweep);
ExponentFit fit_loglog(std::span<const double> qs, std::span<const double> values);

// ---------------------------------------------------------------- suites

struct SuiteParams {
    std::vector<long> q_list;  // empty -> suite defaults
    std::vector<int> d_list;   // empty -> suite defaults
    int trials = 0;            // 0 -> suite default
    // op-count cap per form for the literal point-sum oracle
    std::uint64_t direct_budget = 500'000'000ull;
    AscentOptions ascent{};
};

struct CheckResult {
    std::string name;
    bool pass = true;
    std::map<std::string, double> measured;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    bool pass = true;
    std::uint64_t seed = 0;
    std::vector<long> q_list;
    std::vector<int> d_list;
    int trials = 0;
    std::vector<CheckResult> checks;
};

const std::vector<std::string>& suite_catalog();
SuiteReport run_suite(const std::string& name, const SuiteParams& params, std::uint64_t seed);

}
