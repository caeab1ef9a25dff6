#pragma once

#include "ffharm/grid.hpp"
#include "ffharm/variety.hpp"

namespace ffharm::reference {

// Serial direct-definition implementations, kept as oracles for the
// OpenMP kernels and as the baseline of the benchmark target. Nothing in
// here factorizes or parallelizes: transforms are O(q^{2d}) double loops,
// convolutions and averages are literal sums.

GridFunction transform_dual(const GridFunction& g);
GridFunction transform_primal(const GridFunction& f);
GridFunction inverse_transform(const GridFunction& g);
GridFunction cotransform_primal(const GridFunction& f);

GridFunction convolve(const GridFunction& f, const GridFunction& h);

// (f * d sigma)(x) = |S|^-1 sum_{y in S} f(x - y)
GridFunction average(const GridFunction& f, const Variety& v);

// (g d sigma)^vee(m) = |S|^-1 sum_{x in S} g(x) chi(x.m), g given on points
GridFunction extend(const Variety& v, std::span<const cplx> surface_values);

GridFunction sigma_inv(const Variety& v);

// full-grid scan evaluating Q pointwise
std::vector<std::uint64_t> enumerate_points(const QuadraticForm& form);

}
