#include "ffharm/reference.hpp"

namespace ffharm::reference {

namespace {

// out[i] = scale * sum_j (prod_axis chi(sign * i_a * j_a)) in[j]
GridFunction dense_transform(const GridFunction& in, Side out_side, int sign,
                             bool normalize) {
    const FiniteField& F = *in.field();
    const int d = in.dim();
    GridFunction out(in.field(), d, out_side);
    const double scale = normalize ? 1.0 / double(out.size()) : 1.0;
    std::vector<std::uint32_t> ic(std::size_t(d), 0), jc(std::size_t(d), 0);
    for (std::uint64_t i = 0; i < out.size(); ++i) {
        out.decode(i, ic);
        cplx acc = 0.0;
        for (std::uint64_t j = 0; j < in.size(); ++j) {
            in.decode(j, jc);
            std::uint32_t dot = 0;
            for (int t = 0; t < d; ++t)
                dot = F.add(dot, F.mul(ic[std::size_t(t)], jc[std::size_t(t)]));
            cplx ker = F.chi(dot);
            if (sign < 0) ker = std::conj(ker);
            acc += ker * in[j];
        }
        out[i] = acc * scale;
    }
    return out;
}

}  // namespace

GridFunction transform_dual(const GridFunction& g) {
    if (g.side() != Side::dual) throw Error("SideMismatch", "expected dual side");
    return dense_transform(g, Side::primal, -1, false);
}

GridFunction transform_primal(const GridFunction& f) {
    if (f.side() != Side::primal) throw Error("SideMismatch", "expected primal side");
    return dense_transform(f, Side::dual, -1, true);
}

GridFunction inverse_transform(const GridFunction& g) {
    if (g.side() != Side::dual) throw Error("SideMismatch", "expected dual side");
    return dense_transform(g, Side::primal, +1, false);
}

GridFunction cotransform_primal(const GridFunction& f) {
    if (f.side() != Side::primal) throw Error("SideMismatch", "expected primal side");
    return dense_transform(f, Side::dual, +1, true);
}

GridFunction convolve(const GridFunction& f, const GridFunction& h) {
    if (f.side() != h.side() || f.dim() != h.dim() ||
        !f.field()->same_field(*h.field()))
        throw Error("SideMismatch", "convolution requires matching side, field and dimension");
    const FiniteField& F = *f.field();
    const std::uint32_t q = F.q();
    const int d = f.dim();
    GridFunction out(f.field(), d, f.side());
    const double scale = f.side() == Side::primal ? 1.0 / double(f.size()) : 1.0;
    std::vector<std::uint32_t> xc(std::size_t(d), 0), yc(std::size_t(d), 0), zc(std::size_t(d), 0);
    for (std::uint64_t x = 0; x < out.size(); ++x) {
        out.decode(x, xc);
        cplx acc = 0.0;
        for (std::uint64_t y = 0; y < out.size(); ++y) {
            out.decode(y, yc);
            for (int t = 0; t < d; ++t)
                zc[std::size_t(t)] = F.sub(xc[std::size_t(t)], yc[std::size_t(t)]);
            std::uint64_t z = 0;
            for (int t = d - 1; t >= 0; --t) z = z * q + zc[std::size_t(t)];
            acc += f[z] * h[y];
        }
        out[x] = acc * scale;
    }
    return out;
}

GridFunction average(const GridFunction& f, const Variety& v) {
    if (f.side() != Side::primal) throw Error("SideMismatch", "expected primal side");
    const FiniteField& F = *f.field();
    const std::uint32_t q = F.q();
    const int d = f.dim();
    GridFunction out(f.field(), d, Side::primal);
    const double inv_card = 1.0 / double(v.cardinality());
    std::vector<std::uint32_t> xc(std::size_t(d), 0);
    for (std::uint64_t x = 0; x < out.size(); ++x) {
        out.decode(x, xc);
        cplx acc = 0.0;
        for (std::size_t i = 0; i < v.points().size(); ++i) {
            auto yc = v.point_coords(i);
            std::uint64_t z = 0;
            for (int t = d - 1; t >= 0; --t)
                z = z * q + F.sub(xc[std::size_t(t)], yc[std::size_t(t)]);
            acc += f[z];
        }
        out[x] = acc * inv_card;
    }
    return out;
}

GridFunction extend(const Variety& v, std::span<const cplx> surface_values) {
    const FiniteField& F = *v.field();
    const int d = v.dim();
    GridFunction out(v.field(), d, Side::dual);
    const double inv_card = 1.0 / double(v.cardinality());
    std::vector<std::uint32_t> mc(std::size_t(d), 0);
    for (std::uint64_t m = 0; m < out.size(); ++m) {
        out.decode(m, mc);
        cplx acc = 0.0;
        for (std::size_t i = 0; i < v.points().size(); ++i) {
            auto xc = v.point_coords(i);
            std::uint32_t dot = 0;
            for (int t = 0; t < d; ++t)
                dot = F.add(dot, F.mul(xc[std::size_t(t)], mc[std::size_t(t)]));
            acc += surface_values[i] * F.chi(dot);
        }
        out[m] = acc * inv_card;
    }
    return out;
}

GridFunction sigma_inv(const Variety& v) {
    std::vector<cplx> ones(v.points().size(), cplx(1.0, 0.0));
    return extend(v, ones);
}

std::vector<std::uint64_t> enumerate_points(const QuadraticForm& form) {
    const FiniteField& F = *form.field();
    std::uint64_t total = grid_size_checked(F, form.dim());
    std::vector<std::uint64_t> pts;
    std::vector<std::uint32_t> xc(std::size_t(form.dim()), 0);
    for (std::uint64_t i = 0; i < total; ++i) {
        std::uint64_t rest = i;
        for (int t = 0; t < form.dim(); ++t) {
            xc[std::size_t(t)] = std::uint32_t(rest % F.q());
            rest /= F.q();
        }
        if (form.evaluate(xc) == 0) pts.push_back(i);
    }
    return pts;
}

}
