#pragma once

#include <map>
#include <string>

#include "ffharm/operators.hpp"

namespace ffharm {

enum class OperatorKind { extension, restriction, averaging };
const char* kind_name(OperatorKind k);

// (p, r) are always the extension-form exponents: extension maps
// L^p(S, d sigma) -> L^r(dm), averaging maps L^p(dx) -> L^r(dx), and the
// restriction kind tests the dual formulation g -> ghat|_S from L^{r'}(dm)
// to L^{p'}(S, d sigma), whose best constant coincides with R*(p -> r).
struct OperatorSpec {
    OperatorKind kind = OperatorKind::averaging;
    VarietyPtr variety;
    double p = 2.0;
    double r = 2.0;
};

// A certified lower bound: `witness_values` is the achieving input on the
// operator's domain side, so the ratio can always be re-derived.
struct NormEstimate {
    double value = 0.0;
    std::string method;   // "witness" | "ascent" | "power-2-2"
    std::string witness;  // name of the input that achieved the value
    int iterations = 0;
    bool converged = true;
    std::uint64_t witness_digest = 0;
    std::vector<cplx> witness_values;
    std::map<std::string, double> extras;
};

// dual exponent 1/p + 1/p' = 1, with the inf <-> 1 convention
double dual_exponent(double p);

// ||T w||/||w|| for an explicit input of the matching side
NormEstimate norm_lower_witness(const OperatorSpec& spec, const SurfaceFunction& w,
                                const std::string& name = "witness");
NormEstimate norm_lower_witness(const OperatorSpec& spec, const GridFunction& w,
                                const std::string& name = "witness");

// Largest singular value at p = r = 2 via power iteration of T-adjoint T,
// with a monotone Rayleigh quotient. mean_zero restricts averaging to the
// complement of the constants.
NormEstimate exact_norm_2_2(const OperatorSpec& spec, bool mean_zero = false);

struct AscentOptions {
    int restarts = 16;
    int max_iter = 500;
    double tol = 1e-8;
    std::uint64_t seed = 0;
};

// Nonlinear power iteration f <- Phi_{p'}(T-adjoint(Phi_r(T f))) maximizing
// ||Tf||_r/||f||_p. The first two restarts are the canonical witnesses
// (constant, point mass), the rest are seeded random starts; for the
// averaging operator the starts are nonnegative and the objective is
// checked to be non-decreasing. Endpoint exponents (1 or inf) fall back to
// the witness battery plus sampled sign patterns.
NormEstimate norm_estimate_ascent(const OperatorSpec& spec, const AscentOptions& opt = {});

// The named tests of the necessary-condition proofs: constants and point
// masses always; M always (diagonal forms); Omega under the square-ratio
// hypothesis; subspace indicators for every applicable construction.
std::vector<NormEstimate> witness_battery(const OperatorSpec& spec);

}
