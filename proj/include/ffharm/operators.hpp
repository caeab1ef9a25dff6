#pragma once

#include "ffharm/fourier.hpp"
#include "ffharm/grid.hpp"
#include "ffharm/variety.hpp"

namespace ffharm {

// Complex function on the points of a variety, normed in L^p(S, d sigma):
// ||f||_p = (|S|^-1 sum |f|^p)^(1/p).
struct SurfaceFunction {
    VarietyPtr variety;
    std::vector<cplx> values;  // indexed like variety->points()

    double lp_norm(double p) const {
        return weighted_lp_norm(values, 1.0 / double(variety->cardinality()), p);
    }
    cplx inner(const SurfaceFunction& other) const;
};

SurfaceFunction surface_constant(VarietyPtr v, cplx value = 1.0);
SurfaceFunction surface_delta(VarietyPtr v, std::size_t point_index);

// (f d sigma)^vee(m) = |S|^-1 sum_{x in S} f(x) chi(x.m), through the
// axis-pass transform of the zero-extended density f.sigma.
GridFunction extend(const SurfaceFunction& f);

// ghat sampled on S
SurfaceFunction restrict_to(const GridFunction& g, VarietyPtr v);

enum class AveragePath { direct, multiplier };

// (f * d sigma)(x) = |S|^-1 sum_{y in S} f(x-y). The direct path is the
// literal sum (parallel over x); the multiplier path goes through the
// convolution theorem and is used inside iteration loops. Both agree to
// machine precision (tested).
GridFunction average(const GridFunction& f, const Variety& v,
                     AveragePath path = AveragePath::direct);

// the averaging symbol sigma-hat = transform_primal(sigma), reusable across
// many multiplier applications
GridFunction averaging_symbol(const Variety& v);
GridFunction average_with_symbol(const GridFunction& f, const GridFunction& symbol);

// Tomas-Stein kernel K = (d sigma)^vee - delta_0 on the dual grid
GridFunction kernel_K(const Variety& v);

// K-hat = sigma - 1 on the primal grid; ||K-hat||_inf = q^d/|S| - 1
GridFunction k_hat(const Variety& v);

// sum over the dual variety's points of |E-hat(m)|^2; E must be 0/1-valued
double restriction_energy(const GridFunction& E, const Variety& dual_variety);

// the dyadic level sets of the weak-type argument: levels[k] = f restricted
// to {2^{-k-1} < f <= 2^-k} for k = 0..cutoff, tail = f restricted to
// (0, 2^{-(cutoff+1)}]. Requires f >= 0 with max f = 1.
struct DyadicDecomposition {
    std::vector<GridFunction> levels;
    GridFunction tail;
    int cutoff;
};

DyadicDecomposition dyadic_decompose(const GridFunction& f, int cutoff);

// smallest-compatible N: d log q / (p log 2) - 1 <= N < d log q / (p log 2),
// which guarantees 2^{-(N+1)} <= q^{-d/p}
int dyadic_cutoff(const FiniteField& field, int d, double p);

}
