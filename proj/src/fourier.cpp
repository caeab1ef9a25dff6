#include "ffharm/fourier.hpp"

#include <algorithm>
#include <cmath>

#include "ffharm/charsums.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffharm {

namespace {

GridFunction with_side(const GridFunction& g, Side side) {
    GridFunction out(g.field(), g.dim(), side);
    std::copy(g.values().begin(), g.values().end(), out.values().begin());
    return out;
}

// One in-place pass per axis: along axis j replace the line values v by
// out[t] = scale * sum_s chi(sign * t * s) v[s]. Lines are independent, so
// the pass parallelizes over them; each output element is a serial sum,
// which keeps results identical for any thread count.
void character_passes(GridFunction& g, int sign, bool normalize) {
    const FiniteField& F = *g.field();
    const std::uint32_t q = F.q();
    const int d = g.dim();
    const double scale = normalize ? 1.0 / double(q) : 1.0;
    auto chi = F.chi_table();

    std::uint64_t stride = 1;
    for (int axis = 0; axis < d; ++axis) {
        const std::uint64_t lines = g.size() / q;
#ifdef _OPENMP
#pragma omp parallel
#endif
        {
            std::vector<cplx> buf(q);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
            for (long long line = 0; line < (long long)lines; ++line) {
                std::uint64_t outer = std::uint64_t(line) / stride;
                std::uint64_t inner = std::uint64_t(line) % stride;
                std::uint64_t base = outer * stride * q + inner;
                for (std::uint32_t s = 0; s < q; ++s) buf[s] = g[base + s * stride];
                for (std::uint32_t t = 0; t < q; ++t) {
                    const std::uint32_t* row = F.mul_row(t);
                    cplx acc = 0.0;
                    if (sign > 0)
                        for (std::uint32_t s = 0; s < q; ++s) acc += chi[row[s]] * buf[s];
                    else
                        for (std::uint32_t s = 0; s < q; ++s)
                            acc += std::conj(chi[row[s]]) * buf[s];
                    g[base + t * stride] = acc * scale;
                }
            }
        }
        stride *= q;
    }
}

GridFunction transformed(const GridFunction& in, Side require, Side out_side, int sign,
                         bool normalize) {
    if (in.side() != require)
        throw Error("SideMismatch", std::string("expected a ") + side_name(require) +
                                        "-side function");
    GridFunction out = with_side(in, out_side);
    character_passes(out, sign, normalize);
    return out;
}

}  // namespace

GridFunction transform_dual(const GridFunction& g) {
    return transformed(g, Side::dual, Side::primal, -1, false);
}

GridFunction transform_primal(const GridFunction& f) {
    return transformed(f, Side::primal, Side::dual, -1, true);
}

GridFunction inverse_transform(const GridFunction& g) {
    return transformed(g, Side::dual, Side::primal, +1, false);
}

GridFunction cotransform_primal(const GridFunction& f) {
    return transformed(f, Side::primal, Side::dual, +1, true);
}

GridFunction convolve(const GridFunction& f, const GridFunction& h) {
    if (f.side() != h.side() || f.dim() != h.dim() ||
        !f.field()->same_field(*h.field()))
        throw Error("SideMismatch", "convolution requires matching side, field and dimension");
    if (f.side() == Side::primal) {
        GridFunction fh = transform_primal(f);
        GridFunction hh = transform_primal(h);
        for (std::uint64_t i = 0; i < fh.size(); ++i) fh[i] *= hh[i];
        return inverse_transform(fh);
    }
    GridFunction fh = transform_dual(f);
    GridFunction hh = transform_dual(h);
    for (std::uint64_t i = 0; i < fh.size(); ++i) fh[i] *= hh[i];
    return cotransform_primal(fh);
}

GridFunction sigma_inv_bruteforce(const Variety& v) {
    const FiniteField& F = *v.field();
    const std::uint32_t q = F.q();
    const int d = v.dim();
    GridFunction out(v.field(), d, Side::dual);
    const double inv_card = 1.0 / double(v.cardinality());
    auto chi = F.chi_table();
    const std::size_t npts = v.points().size();

#ifdef _OPENMP
#pragma omp parallel
#endif
    {
        std::vector<std::uint32_t> m(std::size_t(d), 0);
        // per-coordinate phase rows chi(m_j * e)
        std::vector<cplx> rows(std::size_t(d) * q);
#ifdef _OPENMP
#pragma omp for schedule(static)
#endif
        for (long long mi = 0; mi < (long long)out.size(); ++mi) {
            std::uint64_t rest = std::uint64_t(mi);
            for (int j = 0; j < d; ++j) {
                m[std::size_t(j)] = std::uint32_t(rest % q);
                rest /= q;
                const std::uint32_t* mr = F.mul_row(m[std::size_t(j)]);
                for (std::uint32_t e = 0; e < q; ++e)
                    rows[std::size_t(j) * q + e] = chi[mr[e]];
            }
            cplx acc = 0.0;
            for (std::size_t i = 0; i < npts; ++i) {
                auto xc = v.point_coords(i);
                cplx term = rows[xc[0]];
                for (int j = 1; j < d; ++j) term *= rows[std::size_t(j) * q + xc[std::size_t(j)]];
                acc += term;
            }
            out[std::uint64_t(mi)] = acc * inv_card;
        }
    }
    return out;
}

GridFunction sigma_inv_transform(const Variety& v) {
    return cotransform_primal(surface_measure(v));
}

GridFunction sigma_inv_closed_form(const Variety& v) {
    const FiniteField& F = *v.field();
    const QuadraticForm& form = v.form();
    const int d = v.dim();
    const std::uint32_t q = F.q();
    const double card = double(v.cardinality());

    const auto& a = form.diag();
    std::vector<std::uint32_t> recip(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) recip[j] = F.inv(a[j]);

    const cplx g1 = gauss_sum_g1(F);
    const std::uint32_t prod = form.coefficient_product();

    GridFunction out(v.field(), d, Side::dual);
    double qpow_d1 = std::pow(double(q), d - 1);

    if (d % 2 == 1) {
        // odd d: zero on the dual null set, eta-modulated constant elsewhere
        cplx g1_pow = std::pow(g1, d + 1);
        cplx base = g1_pow / (double(q) * card) * double(F.eta(F.neg(prod)));
        const double at_zero = qpow_d1 / card;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long mi = 0; mi < (long long)out.size(); ++mi) {
            std::uint64_t rest = std::uint64_t(mi);
            std::uint32_t qstar = 0;
            for (int j = 0; j < d; ++j) {
                std::uint32_t mj = std::uint32_t(rest % q);
                rest /= q;
                qstar = F.add(qstar, F.mul(recip[std::size_t(j)], F.mul(mj, mj)));
            }
            if (mi == 0)
                out[std::uint64_t(mi)] = at_zero;
            else if (qstar == 0)
                out[std::uint64_t(mi)] = 0.0;
            else
                out[std::uint64_t(mi)] = base * double(F.eta(qstar));
        }
        return out;
    }

    cplx g1_pow = std::pow(g1, d);  // +-q^{d/2} up to rounding
    double sign = double(F.eta(prod));
    cplx on_null = g1_pow / card * (1.0 - 1.0 / double(q)) * sign;
    cplx off_null = -g1_pow / (double(q) * card) * sign;
    cplx at_zero = qpow_d1 / card + on_null;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long mi = 0; mi < (long long)out.size(); ++mi) {
        std::uint64_t rest = std::uint64_t(mi);
        std::uint32_t qstar = 0;
        for (int j = 0; j < d; ++j) {
            std::uint32_t mj = std::uint32_t(rest % q);
            rest /= q;
            qstar = F.add(qstar, F.mul(recip[std::size_t(j)], F.mul(mj, mj)));
        }
        if (mi == 0)
            out[std::uint64_t(mi)] = at_zero;
        else if (qstar == 0)
            out[std::uint64_t(mi)] = on_null;
        else
            out[std::uint64_t(mi)] = off_null;
    }
    return out;
}

double sigma_inv_predicted_max(const Variety& v) {
    const FiniteField& F = *v.field();
    const int d = v.dim();
    const double q = double(F.q());
    if (d % 2 == 1) return std::pow(q, -(d - 1) / 2.0);

    // even d: the null-set value dominates when {m != 0 : Q*(m) = 0} exists
    std::vector<std::uint32_t> recip;
    for (std::uint32_t a : v.form().diag()) recip.push_back(F.inv(a));
    std::uint64_t null_count =
        variety_cardinality_closed(QuadraticForm::diagonal(v.field(), recip));
    double card = double(v.cardinality());
    if (null_count > 1) return std::pow(q, d / 2.0 - 1.0) * (q - 1.0) / card;
    return std::pow(q, d / 2.0 - 1.0) / card;
}

}
