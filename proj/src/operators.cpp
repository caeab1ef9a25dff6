#include "ffharm/operators.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffharm {

cplx SurfaceFunction::inner(const SurfaceFunction& other) const {
    if (variety.get() != other.variety.get() || values.size() != other.values.size())
        throw Error("MixedFields", "surface functions live on different varieties");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) acc += values[i] * std::conj(other.values[i]);
    return acc / double(variety->cardinality());
}

SurfaceFunction surface_constant(VarietyPtr v, cplx value) {
    SurfaceFunction f;
    f.values.assign(v->points().size(), value);
    f.variety = std::move(v);
    return f;
}

SurfaceFunction surface_delta(VarietyPtr v, std::size_t point_index) {
    SurfaceFunction f;
    f.values.assign(v->points().size(), 0.0);
    f.values.at(point_index) = 1.0;
    f.variety = std::move(v);
    return f;
}

GridFunction extend(const SurfaceFunction& f) {
    const Variety& v = *f.variety;
    GridFunction density(v.field(), v.dim(), Side::primal);
    const double scale = double(v.grid_size()) / double(v.cardinality());
    auto pts = v.points();
    for (std::size_t i = 0; i < pts.size(); ++i) density[pts[i]] = f.values[i] * scale;
    return cotransform_primal(density);
}

SurfaceFunction restrict_to(const GridFunction& g, VarietyPtr v) {
    if (g.side() != Side::dual) throw Error("SideMismatch", "restriction expects a dual-side function");
    if (!g.field()->same_field(*v->field()) || g.dim() != v->dim())
        throw Error("MixedFields", "grid and variety disagree");
    GridFunction ghat = transform_dual(g);
    SurfaceFunction out;
    out.values.reserve(v->points().size());
    for (std::uint64_t p : v->points()) out.values.push_back(ghat[p]);
    out.variety = std::move(v);
    return out;
}

GridFunction averaging_symbol(const Variety& v) {
    return transform_primal(surface_measure(v));
}

GridFunction average_with_symbol(const GridFunction& f, const GridFunction& symbol) {
    GridFunction fh = transform_primal(f);
    for (std::uint64_t i = 0; i < fh.size(); ++i) fh[i] *= symbol[i];
    return inverse_transform(fh);
}

GridFunction average(const GridFunction& f, const Variety& v, AveragePath path) {
    if (f.side() != Side::primal) throw Error("SideMismatch", "averaging expects a primal-side function");
    if (!f.field()->same_field(*v.field()) || f.dim() != v.dim())
        throw Error("MixedFields", "grid and variety disagree");
    if (path == AveragePath::multiplier) return average_with_symbol(f, averaging_symbol(v));

    const FiniteField& F = *f.field();
    const std::uint32_t q = F.q();
    const int d = f.dim();
    GridFunction out(f.field(), d, Side::primal);
    const double inv_card = 1.0 / double(v.cardinality());
    const std::size_t npts = v.points().size();
    std::uint64_t powq[16];
    powq[0] = 1;
    for (int t = 1; t <= d; ++t) powq[t] = powq[t - 1] * q;

#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::vector<std::uint32_t> xc(std::size_t(d), 0);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (long long x = 0; x < (long long)out.size(); ++x) {
            std::uint64_t rest = std::uint64_t(x);
            for (int t = 0; t < d; ++t) {
                xc[std::size_t(t)] = std::uint32_t(rest % q);
                rest /= q;
            }
            cplx acc = 0.0;
            for (std::size_t i = 0; i < npts; ++i) {
                auto yc = v.point_coords(i);
                std::uint64_t z = 0;
                for (int t = 0; t < d; ++t)
                    z += powq[t] * F.sub(xc[std::size_t(t)], yc[std::size_t(t)]);
                acc += f[z];
            }
            out[std::uint64_t(x)] = acc * inv_card;
        }
    }
    return out;
}

GridFunction kernel_K(const Variety& v) {
    GridFunction k = sigma_inv_transform(v);
    k[0] = 0.0;
    return k;
}

GridFunction k_hat(const Variety& v) {
    GridFunction out = surface_measure(v);
    for (std::uint64_t i = 0; i < out.size(); ++i) out[i] -= 1.0;
    return out;
}

double restriction_energy(const GridFunction& E, const Variety& dual_variety) {
    if (E.side() != Side::primal) throw Error("SideMismatch", "E lives on the primal side");
    for (std::uint64_t i = 0; i < E.size(); ++i) {
        double re = E[i].real();
        if (E[i].imag() != 0.0 || (re != 0.0 && re != 1.0))
            throw Error("NotIndicator", "E must be 0/1-valued");
    }
    GridFunction ehat = transform_primal(E);
    double acc = 0.0;
    for (std::uint64_t m : dual_variety.points()) acc += std::norm(ehat[m]);
    return acc;
}

int dyadic_cutoff(const FiniteField& field, int d, double p) {
    if (p < 1.0) throw Error("BadExponent", "p must be >= 1");
    double level = double(d) * std::log(double(field.q())) / (p * std::log(2.0));
    int n = int(std::ceil(level)) - 1;
    return n < 0 ? 0 : n;
}

DyadicDecomposition dyadic_decompose(const GridFunction& f, int cutoff) {
    if (f.side() != Side::primal) throw Error("SideMismatch", "expected a primal-side function");
    double maxv = 0.0;
    for (std::uint64_t i = 0; i < f.size(); ++i) {
        if (f[i].imag() != 0.0 || f[i].real() < 0.0)
            throw Error("NegativeInput", "dyadic decomposition needs a nonnegative real function");
        maxv = std::max(maxv, f[i].real());
    }
    if (std::abs(maxv - 1.0) > 1e-9)
        throw Error("NotNormalized", "normalize to max f = 1 before decomposing");

    DyadicDecomposition out{{}, GridFunction(f.field(), f.dim(), Side::primal), cutoff};
    out.levels.reserve(std::size_t(cutoff) + 1);
    for (int k = 0; k <= cutoff; ++k)
        out.levels.emplace_back(f.field(), f.dim(), Side::primal);

    const double tail_top = std::ldexp(1.0, -(cutoff + 1));  // 2^{-(cutoff+1)}
    for (std::uint64_t i = 0; i < f.size(); ++i) {
        double v = f[i].real();
        if (v == 0.0) continue;
        if (v <= tail_top) {
            out.tail[i] = v;
            continue;
        }
        // unique k with 2^{-k-1} < v <= 2^{-k}
        int k = 0;
        while (v <= std::ldexp(1.0, -(k + 1))) ++k;
        out.levels[std::size_t(k)][i] = v;
    }
    return out;
}

}
