#include "ffharm/variety.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffharm {

QuadraticForm QuadraticForm::diagonal(FieldPtr field, std::vector<std::uint32_t> coeffs) {
    if (coeffs.size() < 2) throw Error("BadDimension", "need dimension >= 2");
    for (std::uint32_t c : coeffs)
        if (c == 0 || c >= field->q())
            throw Error("DegenerateForm", "diagonal coefficients must be nonzero elements");
    QuadraticForm f(std::move(field), int(coeffs.size()));
    f.diag_ = std::move(coeffs);
    return f;
}

QuadraticForm QuadraticForm::gram(FieldPtr field, std::vector<std::uint32_t> matrix) {
    std::size_t d2 = matrix.size();
    int d = int(std::llround(std::sqrt(double(d2))));
    if (std::size_t(d) * std::size_t(d) != d2 || d < 2)
        throw Error("BadDimension", "gram matrix must be d x d with d >= 2");
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (matrix[std::size_t(i) * d + j] >= field->q())
                throw Error("DegenerateForm", "matrix entries must be field elements");
            if (matrix[std::size_t(i) * d + j] != matrix[std::size_t(j) * d + i])
                throw Error("DegenerateForm", "gram matrix must be symmetric");
        }
    QuadraticForm f(std::move(field), d);
    f.gram_ = std::move(matrix);
    diagonalize(f);  // rejects singular matrices up front
    return f;
}

const std::vector<std::uint32_t>& QuadraticForm::diag() const {
    if (!is_diagonal()) throw Error("NotDiagonal", "form is not diagonal");
    return diag_;
}

const std::vector<std::uint32_t>& QuadraticForm::gram_matrix() const {
    if (is_diagonal()) throw Error("NotGram", "form is diagonal");
    return gram_;
}

std::uint32_t QuadraticForm::evaluate(std::span<const std::uint32_t> x) const {
    const FiniteField& F = *field_;
    std::uint32_t acc = 0;
    if (is_diagonal()) {
        for (int j = 0; j < d_; ++j)
            acc = F.add(acc, F.mul(diag_[std::size_t(j)], F.mul(x[std::size_t(j)], x[std::size_t(j)])));
        return acc;
    }
    for (int i = 0; i < d_; ++i) {
        std::uint32_t row = 0;
        for (int j = 0; j < d_; ++j)
            row = F.add(row, F.mul(gram_[std::size_t(i) * d_ + j], x[std::size_t(j)]));
        acc = F.add(acc, F.mul(x[std::size_t(i)], row));
    }
    return acc;
}

std::uint32_t QuadraticForm::bilinear(std::span<const std::uint32_t> x,
                                      std::span<const std::uint32_t> y) const {
    const FiniteField& F = *field_;
    std::uint32_t acc = 0;
    if (is_diagonal()) {
        for (int j = 0; j < d_; ++j)
            acc = F.add(acc, F.mul(diag_[std::size_t(j)], F.mul(x[std::size_t(j)], y[std::size_t(j)])));
        return acc;
    }
    for (int i = 0; i < d_; ++i) {
        std::uint32_t row = 0;
        for (int j = 0; j < d_; ++j)
            row = F.add(row, F.mul(gram_[std::size_t(i) * d_ + j], y[std::size_t(j)]));
        acc = F.add(acc, F.mul(x[std::size_t(i)], row));
    }
    return acc;
}

std::uint32_t QuadraticForm::coefficient_product() const {
    const FiniteField& F = *field_;
    std::uint32_t prod = F.one();
    for (std::uint32_t a : diag()) prod = F.mul(prod, a);
    return prod;
}

DiagonalizationResult diagonalize(const QuadraticForm& form) {
    const FiniteField& F = *form.field();
    const int d = form.dim();
    if (form.is_diagonal()) {
        DiagonalizationResult r;
        r.coefficients = form.diag();
        r.basis.assign(std::size_t(d) * d, 0);
        for (int i = 0; i < d; ++i) r.basis[std::size_t(i) * d + i] = F.one();
        return r;
    }

    std::vector<std::uint32_t> A = form.gram_matrix();
    std::vector<std::uint32_t> P(std::size_t(d) * d, 0);
    for (int i = 0; i < d; ++i) P[std::size_t(i) * d + i] = F.one();

    auto at = [&](std::vector<std::uint32_t>& M, int r, int c) -> std::uint32_t& {
        return M[std::size_t(r) * d + c];
    };
    // col_j += c * col_i, applied to A (with the symmetric row op) and to P
    auto col_axpy = [&](int j, std::uint32_t c, int i) {
        for (int r = 0; r < d; ++r) at(A, r, j) = F.add(at(A, r, j), F.mul(c, at(A, r, i)));
        for (int r = 0; r < d; ++r) at(A, j, r) = F.add(at(A, j, r), F.mul(c, at(A, i, r)));
        for (int r = 0; r < d; ++r) at(P, r, j) = F.add(at(P, r, j), F.mul(c, at(P, r, i)));
    };
    auto col_swap = [&](int i, int j) {
        for (int r = 0; r < d; ++r) std::swap(at(A, r, i), at(A, r, j));
        for (int r = 0; r < d; ++r) std::swap(at(A, i, r), at(A, j, r));
        for (int r = 0; r < d; ++r) std::swap(at(P, r, i), at(P, r, j));
    };

    for (int k = 0; k < d; ++k) {
        if (at(A, k, k) == 0) {
            int found = -1;
            for (int i = k + 1; i < d; ++i)
                if (at(A, i, i) != 0) {
                    found = i;
                    break;
                }
            if (found >= 0) {
                col_swap(k, found);
            } else {
                // all remaining diagonal entries vanish; use an off-diagonal
                // entry (char != 2 makes 2*A[i][j] a usable pivot)
                int fi = -1, fj = -1;
                for (int i = k; i < d && fi < 0; ++i)
                    for (int j = i + 1; j < d; ++j)
                        if (at(A, i, j) != 0) {
                            fi = i;
                            fj = j;
                            break;
                        }
                if (fi < 0) throw Error("DegenerateForm", "gram matrix is singular");
                col_axpy(fi, F.one(), fj);
                if (fi != k) col_swap(k, fi);
            }
        }
        std::uint32_t pivot_inv = F.inv(at(A, k, k));
        for (int j = k + 1; j < d; ++j) {
            if (at(A, k, j) == 0) continue;
            std::uint32_t c = F.neg(F.mul(at(A, k, j), pivot_inv));
            col_axpy(j, c, k);
        }
    }

    DiagonalizationResult r;
    r.coefficients.resize(std::size_t(d));
    for (int i = 0; i < d; ++i) {
        r.coefficients[std::size_t(i)] = at(A, i, i);
        if (at(A, i, i) == 0) throw Error("DegenerateForm", "gram matrix is singular");
    }
    r.basis = std::move(P);
    return r;
}

Variety::Variety(QuadraticForm form, std::vector<std::uint64_t> points,
                 std::vector<std::uint8_t> indicator)
    : form_(std::move(form)), points_(std::move(points)), indicator_(std::move(indicator)) {
    const int d = form_.dim();
    const std::uint32_t q = form_.field()->q();
    coords_.resize(points_.size() * std::size_t(d));
    for (std::size_t i = 0; i < points_.size(); ++i) {
        std::uint64_t idx = points_[i];
        for (int j = 0; j < d; ++j) {
            coords_[i * std::size_t(d) + std::size_t(j)] = std::uint32_t(idx % q);
            idx /= q;
        }
    }
}

Variety enumerate_variety(const QuadraticForm& form, std::uint64_t guard) {
    const FiniteField& F = *form.field();
    const int d = form.dim();
    const std::uint32_t q = F.q();
    const std::uint64_t total = grid_size_checked(F, d, guard);
    const std::uint64_t chunk = total / q;  // per leading-coordinate block

    std::vector<std::uint8_t> indicator(total, 0);
    std::vector<std::vector<std::uint64_t>> found(q);

    const bool diag = form.is_diagonal();
    // per-coordinate value tables t_j[e] = a_j * e^2 (diagonal fast path)
    std::vector<std::uint32_t> tables;
    if (diag) {
        tables.resize(std::size_t(d) * q);
        for (int j = 0; j < d; ++j)
            for (std::uint32_t e = 0; e < q; ++e)
                tables[std::size_t(j) * q + e] = F.mul(form.diag()[std::size_t(j)], F.mul(e, e));
    }

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::uint32_t lead = 0; lead < q; ++lead) {
        std::vector<std::uint32_t> x(std::size_t(d), 0);
        x[std::size_t(d - 1)] = lead;
        std::vector<std::uint64_t>& out = found[lead];
        if (diag) {
            // odometer over the low d-1 coordinates with suffix partial sums
            std::vector<std::uint32_t> suffix(std::size_t(d) + 1, 0);
            for (int j = d - 1; j >= 0; --j)
                suffix[std::size_t(j)] =
                    F.add(tables[std::size_t(j) * q + x[std::size_t(j)]], suffix[std::size_t(j) + 1]);
            std::uint64_t base = std::uint64_t(lead) * chunk;
            for (std::uint64_t local = 0;; ++local) {
                if (suffix[0] == 0) {
                    indicator[base + local] = 1;
                    out.push_back(base + local);
                }
                if (local + 1 == chunk) break;
                int j = 0;
                while (x[std::size_t(j)] + 1 == q) {
                    x[std::size_t(j)] = 0;
                    ++j;
                }
                ++x[std::size_t(j)];
                for (; j >= 0; --j)
                    suffix[std::size_t(j)] = F.add(tables[std::size_t(j) * q + x[std::size_t(j)]],
                                                   suffix[std::size_t(j) + 1]);
            }
        } else {
            std::uint64_t base = std::uint64_t(lead) * chunk;
            for (std::uint64_t local = 0; local < chunk; ++local) {
                std::uint64_t rest = local;
                for (int j = 0; j < d - 1; ++j) {
                    x[std::size_t(j)] = std::uint32_t(rest % q);
                    rest /= q;
                }
                if (form.evaluate(x) == 0) {
                    indicator[base + local] = 1;
                    out.push_back(base + local);
                }
            }
        }
    }

    std::vector<std::uint64_t> points;
    std::size_t count = 0;
    for (const auto& blk : found) count += blk.size();
    points.reserve(count);
    for (const auto& blk : found) points.insert(points.end(), blk.begin(), blk.end());
    return Variety(form, std::move(points), std::move(indicator));
}

VarietyPtr enumerate_variety_ptr(const QuadraticForm& form, std::uint64_t guard) {
    return std::make_shared<Variety>(enumerate_variety(form, guard));
}

std::uint64_t variety_cardinality_closed(const QuadraticForm& form) {
    const FiniteField& F = *form.field();
    const int d = form.dim();
    const std::uint64_t q = F.q();
    std::uint64_t qd1 = 1;
    for (int i = 0; i < d - 1; ++i) qd1 *= q;
    if (d % 2 == 1) return qd1;

    std::uint32_t disc = form.coefficient_product();
    if ((d / 2) % 2 == 1) disc = F.mul(F.minus_one(), disc);
    int sign = F.eta(disc);
    std::uint64_t qhalf = 1;
    for (int i = 0; i < d / 2 - 1; ++i) qhalf *= q;
    std::int64_t result = std::int64_t(qd1) + std::int64_t(sign) * std::int64_t(qhalf) * std::int64_t(q - 1);
    return std::uint64_t(result);
}

GridFunction surface_measure(const Variety& v) {
    GridFunction sigma(v.field(), v.dim(), Side::primal);
    double value = double(v.grid_size()) / double(v.cardinality());
    for (std::uint64_t p : v.points()) sigma[p] = value;
    return sigma;
}

GridFunction WitnessSet::indicator(Side side) const {
    GridFunction g(field, d, side);
    for (std::uint64_t p : points) g[p] = 1.0;
    return g;
}

WitnessSet witness_M(const QuadraticForm& form, std::uint64_t guard) {
    const FiniteField& F = *form.field();
    std::vector<std::uint32_t> recip;
    recip.reserve(std::size_t(form.dim()));
    for (std::uint32_t a : form.diag()) recip.push_back(F.inv(a));
    Variety dual = enumerate_variety(QuadraticForm::diagonal(form.field(), recip), guard);
    WitnessSet w;
    w.label = "M";
    w.field = form.field();
    w.d = form.dim();
    w.points.assign(dual.points().begin(), dual.points().end());
    return w;
}

WitnessSet witness_D(const FieldPtr& field) {
    WitnessSet w;
    w.label = "D";
    w.field = field;
    w.d = 1;
    for (std::uint32_t s = 1; s < field->q(); ++s)
        if (field->eta(s) == 1) w.points.push_back(s);
    return w;
}

OmegaWitness witness_Omega(const QuadraticForm& form, std::uint64_t guard) {
    const FiniteField& F = *form.field();
    const int d = form.dim();
    if (d < 3) throw Error("BadDimension", "Omega witness needs d >= 3");
    const auto& a = form.diag();

    // prefer the (d-1, d) pair (the normal form the substitution targets),
    // then scan the rest
    std::vector<std::pair<int, int>> order;
    order.emplace_back(d - 2, d - 1);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            if (i < j && !(i == d - 2 && j == d - 1)) order.emplace_back(i, j);

    int pi = -1, pj = -1;
    std::uint32_t l = 0;
    for (auto [i, j] : order) {
        std::uint32_t ratio = F.neg(F.mul(a[std::size_t(i)], F.inv(a[std::size_t(j)])));
        if (auto root = F.sqrt(ratio); root && *root != 0) {
            pi = i;
            pj = j;
            l = *root;
            break;
        }
    }
    if (pi < 0)
        throw Error("NoSquareRatio", "-a_i/a_j is a nonsquare for every coordinate pair");

    // coefficients surviving the substitution, original order minus the pair
    std::vector<std::uint32_t> head;
    for (int t = 0; t < d; ++t)
        if (t != pi && t != pj) head.push_back(a[std::size_t(t)]);

    // transformed surface: head coefficients, then the -x_{d-1} x_d block
    std::vector<std::uint32_t> A(std::size_t(d) * d, 0);
    for (int t = 0; t < d - 2; ++t) A[std::size_t(t) * d + t] = head[std::size_t(t)];
    std::uint32_t minus_half = F.neg(F.inv(F.from_int(2)));
    A[std::size_t(d - 2) * d + (d - 1)] = minus_half;
    A[std::size_t(d - 1) * d + (d - 2)] = minus_half;
    VarietyPtr transformed =
        enumerate_variety_ptr(QuadraticForm::gram(form.field(), std::move(A)), guard);

    // Omega: m_{d-1} free over the nonzero squares, m_1..m_{d-2} free,
    // m_{d-2} determined by the graph relation
    WitnessSet omega;
    omega.label = "Omega";
    omega.field = form.field();
    omega.d = d;

    const std::uint32_t q = F.q();
    std::uint64_t free_count = 1;
    for (int t = 0; t < d - 2; ++t) free_count *= q;
    std::vector<std::uint32_t> inv_head;
    for (std::uint32_t h : head) inv_head.push_back(F.inv(h));
    std::uint32_t four = F.from_int(4);

    for (std::uint32_t md = 1; md < q; ++md) {
        if (F.eta(md) != 1) continue;  // m_d ranges over D
        std::uint32_t denom_inv = F.inv(F.mul(four, md));
        for (std::uint64_t code = 0; code < free_count; ++code) {
            std::uint64_t c = code;
            std::uint32_t s = 0;
            std::vector<std::uint32_t> m(std::size_t(d), 0);
            for (int t = 0; t < d - 2; ++t) {
                std::uint32_t mt = std::uint32_t(c % q);
                c /= q;
                m[std::size_t(t)] = mt;
                s = F.add(s, F.mul(inv_head[std::size_t(t)], F.mul(mt, mt)));
            }
            m[std::size_t(d - 2)] = F.mul(s, denom_inv);
            m[std::size_t(d - 1)] = md;
            std::uint64_t idx = 0;
            for (int t = d - 1; t >= 0; --t) idx = idx * q + m[std::size_t(t)];
            omega.points.push_back(idx);
        }
    }
    std::sort(omega.points.begin(), omega.points.end());

    OmegaWitness out;
    out.transformed = std::move(transformed);
    out.omega = std::move(omega);
    out.l = l;
    out.pair_i = pi;
    out.pair_j = pj;
    return out;
}

std::vector<std::uint64_t> AffineSubspace::points() const {
    const FiniteField& F = *field;
    const std::uint32_t q = F.q();
    std::uint64_t count = 1;
    for (int i = 0; i < k; ++i) count *= q;
    std::vector<std::uint64_t> out;
    out.reserve(count);
    std::vector<std::uint32_t> x(std::size_t(d), 0);
    for (std::uint64_t code = 0; code < count; ++code) {
        x.assign(offset.begin(), offset.end());
        std::uint64_t c = code;
        for (int i = 0; i < k; ++i) {
            std::uint32_t t = std::uint32_t(c % q);
            c /= q;
            if (t)
                for (int j = 0; j < d; ++j)
                    x[std::size_t(j)] = F.add(x[std::size_t(j)], F.mul(t, basis[std::size_t(i)][std::size_t(j)]));
        }
        std::uint64_t idx = 0;
        for (int j = d - 1; j >= 0; --j) idx = idx * q + x[std::size_t(j)];
        out.push_back(idx);
    }
    return out;
}

AffineSubspace make_subspace(FieldPtr field, std::vector<std::uint32_t> offset,
                             std::vector<std::vector<std::uint32_t>> basis) {
    AffineSubspace h;
    h.field = std::move(field);
    h.d = int(offset.size());
    h.k = int(basis.size());
    h.offset = std::move(offset);
    h.basis = std::move(basis);

    // rank check by Gaussian elimination
    const FiniteField& F = *h.field;
    std::vector<std::vector<std::uint32_t>> rows = h.basis;
    int rank = 0;
    for (int col = 0; col < h.d && rank < int(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < int(rows.size()); ++r)
            if (rows[std::size_t(r)][std::size_t(col)] != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        std::swap(rows[std::size_t(rank)], rows[std::size_t(pivot)]);
        std::uint32_t inv = F.inv(rows[std::size_t(rank)][std::size_t(col)]);
        for (int r = 0; r < int(rows.size()); ++r) {
            if (r == rank || rows[std::size_t(r)][std::size_t(col)] == 0) continue;
            std::uint32_t c = F.mul(rows[std::size_t(r)][std::size_t(col)], inv);
            for (int j = 0; j < h.d; ++j)
                rows[std::size_t(r)][std::size_t(j)] = F.sub(
                    rows[std::size_t(r)][std::size_t(j)],
                    F.mul(c, rows[std::size_t(rank)][std::size_t(j)]));
        }
        ++rank;
    }
    if (rank != int(h.basis.size()))
        throw Error("DependentBasis", "subspace basis is linearly dependent");
    return h;
}

const char* subspace_kind_name(SubspaceKind kind) {
    switch (kind) {
        case SubspaceKind::alternating_odd: return "alternating-odd";
        case SubspaceKind::alternating_even: return "alternating-even";
        case SubspaceKind::cone_odd: return "cone-odd";
        case SubspaceKind::cone_even: return "cone-even";
        case SubspaceKind::line: return "line";
    }
    return "?";
}

namespace {

// verify Q = 0 on the whole candidate before handing it out
void check_inside(const QuadraticForm& form, const AffineSubspace& h) {
    const FiniteField& F = *form.field();
    const std::uint32_t q = F.q();
    std::uint64_t count = 1;
    for (int i = 0; i < h.k; ++i) count *= q;
    std::vector<std::uint32_t> x(std::size_t(h.d), 0);
    for (std::uint64_t code = 0; code < count; ++code) {
        x.assign(h.offset.begin(), h.offset.end());
        std::uint64_t c = code;
        for (int i = 0; i < h.k; ++i) {
            std::uint32_t t = std::uint32_t(c % q);
            c /= q;
            for (int j = 0; j < h.d; ++j)
                x[std::size_t(j)] = F.add(x[std::size_t(j)], F.mul(t, h.basis[std::size_t(i)][std::size_t(j)]));
        }
        if (form.evaluate(x) != 0)
            throw Error("ConstructionInapplicable", "constructed subspace escapes the surface");
    }
}

std::vector<std::uint32_t> unit(int d, int j, std::uint32_t v) {
    std::vector<std::uint32_t> e(std::size_t(d), 0);
    e[std::size_t(j)] = v;
    return e;
}

}  // namespace

AffineSubspace explicit_subspace(const QuadraticForm& form, SubspaceKind kind) {
    const FiniteField& F = *form.field();
    const int d = form.dim();
    if (!form.is_diagonal())
        throw Error("ConstructionInapplicable", "explicit subspace constructions address diagonal forms");
    const auto& a = form.diag();

    std::vector<std::vector<std::uint32_t>> basis;
    auto pair_sum_zero = [&](int i) { return F.add(a[std::size_t(i)], a[std::size_t(i + 1)]) == 0; };
    auto pair_equal = [&](int i) { return a[std::size_t(i)] == a[std::size_t(i + 1)]; };

    switch (kind) {
        case SubspaceKind::alternating_odd: {
            if (d % 2 == 0 || d < 3)
                throw Error("ConstructionInapplicable", "needs odd d >= 3");
            for (int i = 0; i + 1 < d; i += 2) {
                if (!pair_sum_zero(i))
                    throw Error("ConstructionInapplicable", "coefficients are not alternating");
                auto v = unit(d, i, F.one());
                v[std::size_t(i + 1)] = F.one();
                basis.push_back(std::move(v));
            }
            break;
        }
        case SubspaceKind::alternating_even: {
            if (d % 2 == 1) throw Error("ConstructionInapplicable", "needs even d");
            for (int i = 0; i < d; i += 2) {
                if (!pair_sum_zero(i))
                    throw Error("ConstructionInapplicable", "coefficients are not alternating");
                auto v = unit(d, i, F.one());
                v[std::size_t(i + 1)] = F.one();
                basis.push_back(std::move(v));
            }
            break;
        }
        case SubspaceKind::cone_odd: {
            if (d % 2 == 0 || d < 3)
                throw Error("ConstructionInapplicable", "needs odd d >= 3");
            auto iu = F.sqrt(F.minus_one());
            if (!iu) throw Error("ConstructionInapplicable", "-1 is not a square in F_q");
            for (int i = 0; i + 1 < d; i += 2) {
                if (!pair_equal(i))
                    throw Error("ConstructionInapplicable", "coefficient pairs are not equal");
                auto v = unit(d, i, F.one());
                v[std::size_t(i + 1)] = *iu;
                basis.push_back(std::move(v));
            }
            break;
        }
        case SubspaceKind::cone_even: {
            if (d % 2 == 1) throw Error("ConstructionInapplicable", "needs even d");
            auto iu = F.sqrt(F.minus_one());
            if (!iu && d > 2) throw Error("ConstructionInapplicable", "-1 is not a square in F_q");
            for (int i = 0; i < d - 2; i += 2) {
                if (!pair_equal(i))
                    throw Error("ConstructionInapplicable", "coefficient pairs are not equal");
                auto v = unit(d, i, F.one());
                v[std::size_t(i + 1)] = *iu;
                basis.push_back(std::move(v));
            }
            if (!pair_sum_zero(d - 2))
                throw Error("ConstructionInapplicable", "tail pair does not cancel");
            auto v = unit(d, d - 2, F.one());
            v[std::size_t(d - 1)] = F.one();
            basis.push_back(std::move(v));
            break;
        }
        case SubspaceKind::line: {
            std::uint32_t found_l = 0;
            int fi = -1, fj = -1;
            for (int i = 0; i < d && fi < 0; ++i)
                for (int j = i + 1; j < d; ++j) {
                    std::uint32_t ratio = F.neg(F.mul(a[std::size_t(i)], F.inv(a[std::size_t(j)])));
                    if (auto root = F.sqrt(ratio); root && *root != 0) {
                        fi = i;
                        fj = j;
                        found_l = *root;
                        break;
                    }
                }
            if (fi < 0)
                throw Error("ConstructionInapplicable", "no coordinate pair with a square ratio");
            auto v = unit(d, fi, F.one());
            v[std::size_t(fj)] = found_l;
            basis.push_back(std::move(v));
            break;
        }
    }

    AffineSubspace h = make_subspace(form.field(), std::vector<std::uint32_t>(std::size_t(d), 0),
                                     std::move(basis));
    check_inside(form, h);
    return h;
}

namespace {

struct IsotropicSearch {
    const QuadraticForm& form;
    const FiniteField& F;
    int d;
    std::uint32_t q;
    int bound;  // floor(d/2), the Witt-index ceiling
    int best = 0;
    std::vector<std::vector<std::uint32_t>> best_basis;
    std::vector<std::vector<std::uint32_t>> stack;
    std::vector<int> pivots;

    explicit IsotropicSearch(const QuadraticForm& f)
        : form(f), F(*f.field()), d(f.dim()), q(f.field()->q()), bound(f.dim() / 2) {}

    void run() { recurse(0); }

    void recurse(int pivot_start) {
        if (int(stack.size()) > best) {
            best = int(stack.size());
            best_basis = stack;
        }
        if (best >= bound) return;
        for (int pv = pivot_start; pv < d; ++pv) {
            // candidate vectors in echelon form: leading 1 at pv, zeros
            // before pv and at the previous pivot columns, free afterwards
            std::vector<int> free_pos;
            for (int j = pv + 1; j < d; ++j) free_pos.push_back(j);
            std::uint64_t count = 1;
            for (std::size_t i = 0; i < free_pos.size(); ++i) count *= q;
            std::vector<std::uint32_t> v(std::size_t(d), 0);
            for (std::uint64_t code = 0; code < count; ++code) {
                std::fill(v.begin(), v.end(), 0u);
                v[std::size_t(pv)] = F.one();
                std::uint64_t c = code;
                for (std::size_t i = 0; i < free_pos.size(); ++i) {
                    v[std::size_t(free_pos[i])] = std::uint32_t(c % q);
                    c /= q;
                }
                if (form.evaluate(v) != 0) continue;
                bool ortho = true;
                for (const auto& b : stack)
                    if (form.bilinear(v, b) != 0) {
                        ortho = false;
                        break;
                    }
                if (!ortho) continue;
                stack.push_back(v);
                pivots.push_back(pv);
                recurse(pv + 1);
                pivots.pop_back();
                stack.pop_back();
                if (best >= bound) return;
            }
        }
    }
};

}  // namespace

int max_isotropic_dimension(const QuadraticForm& form, std::uint64_t guard) {
    grid_size_checked(*form.field(), form.dim(), guard);
    IsotropicSearch search(form);
    search.run();
    return search.best;
}

AffineSubspace isotropic_subspace(const QuadraticForm& form, std::uint64_t guard) {
    grid_size_checked(*form.field(), form.dim(), guard);
    IsotropicSearch search(form);
    search.run();
    return make_subspace(form.field(),
                         std::vector<std::uint32_t>(std::size_t(form.dim()), 0),
                         std::move(search.best_basis));
}

bool verify_subspace(const AffineSubspace& h, const Variety& v) {
    if (!h.field->same_field(*v.field()))
        throw Error("MixedFields", "subspace and variety fields differ");
    if (h.d != v.dim()) throw Error("BadDimension", "dimension mismatch");
    for (std::uint64_t idx : h.points())
        if (!v.contains(idx)) return false;
    return true;
}

QuadraticForm cone_form(int d, FieldPtr field) {
    if (d < 3) throw Error("BadDimension", "cone form needs d >= 3");
    const FiniteField& F = *field;
    std::vector<std::uint32_t> A(std::size_t(d) * d, 0);
    for (int i = 0; i < d - 2; ++i) A[std::size_t(i) * d + i] = F.one();
    std::uint32_t minus_half = F.neg(F.inv(F.from_int(2)));
    A[std::size_t(d - 2) * d + (d - 1)] = minus_half;
    A[std::size_t(d - 1) * d + (d - 2)] = minus_half;
    return QuadraticForm::gram(std::move(field), std::move(A));
}

}
