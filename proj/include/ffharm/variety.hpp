#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ffharm/field.hpp"
#include "ffharm/grid.hpp"

namespace ffharm {

// Nondegenerate quadratic form on F_q^d, either diagonal (a_1 x_1^2 + ... +
// a_d x_d^2, all a_j nonzero) or given by a symmetric Gram matrix A with
// Q(x) = x^T A x and det A != 0 (checked through diagonalization).
class QuadraticForm {
public:
    static QuadraticForm diagonal(FieldPtr field, std::vector<std::uint32_t> coeffs);
    static QuadraticForm gram(FieldPtr field, std::vector<std::uint32_t> matrix_row_major);

    const FieldPtr& field() const { return field_; }
    int dim() const { return d_; }
    bool is_diagonal() const { return !diag_.empty(); }
    const std::vector<std::uint32_t>& diag() const;
    const std::vector<std::uint32_t>& gram_matrix() const;

    std::uint32_t evaluate(std::span<const std::uint32_t> x) const;   // Q(x)
    // polar form B(x,y) with Q(x+y) = Q(x) + Q(y) + 2 B(x,y)
    std::uint32_t bilinear(std::span<const std::uint32_t> x,
                           std::span<const std::uint32_t> y) const;

    // product of the diagonal coefficients (diagonal forms only)
    std::uint32_t coefficient_product() const;

private:
    QuadraticForm(FieldPtr f, int d) : field_(std::move(f)), d_(d) {}
    FieldPtr field_;
    int d_;
    std::vector<std::uint32_t> diag_;
    std::vector<std::uint32_t> gram_;
};

struct DiagonalizationResult {
    std::vector<std::uint32_t> coefficients;  // diagonal entries of P^T A P
    std::vector<std::uint32_t> basis;         // P, row-major d x d
};

// congruence diagonalization over odd characteristic; throws DegenerateForm
DiagonalizationResult diagonalize(const QuadraticForm& form);

// The zero set S = {x : Q(x) = 0} with its exhaustive point list. Points are
// stored as ascending encoded grid indices together with their coordinates.
class Variety {
public:
    Variety(QuadraticForm form, std::vector<std::uint64_t> points,
            std::vector<std::uint8_t> indicator);

    const QuadraticForm& form() const { return form_; }
    const FieldPtr& field() const { return form_.field(); }
    int dim() const { return form_.dim(); }
    std::uint64_t grid_size() const { return indicator_.size(); }
    std::uint64_t cardinality() const { return points_.size(); }
    std::span<const std::uint64_t> points() const { return points_; }
    std::span<const std::uint32_t> point_coords(std::size_t i) const {
        return {&coords_[i * std::size_t(dim())], std::size_t(dim())};
    }
    bool contains(std::uint64_t index) const { return indicator_[index] != 0; }
    std::span<const std::uint8_t> indicator() const { return indicator_; }

private:
    QuadraticForm form_;
    std::vector<std::uint64_t> points_;
    std::vector<std::uint32_t> coords_;
    std::vector<std::uint8_t> indicator_;
};

using VarietyPtr = std::shared_ptr<const Variety>;

// Exhaustive enumeration (parallel over the leading coordinate).
Variety enumerate_variety(const QuadraticForm& form, std::uint64_t guard = (1ull << 24));
VarietyPtr enumerate_variety_ptr(const QuadraticForm& form,
                                 std::uint64_t guard = (1ull << 24));

// Closed form for |S| (diagonal forms):
//   d odd:  q^(d-1)
//   d even: q^(d-1) + eta((-1)^(d/2) a_1...a_d) q^(d/2-1) (q-1)
std::uint64_t variety_cardinality_closed(const QuadraticForm& form);

// sigma(x) = q^d/|S| on S, 0 elsewhere; integrates to 1 under dx
GridFunction surface_measure(const Variety& v);

// A named point set on the dual (dm) grid.
struct WitnessSet {
    std::string label;  // "M", "Omega", "D"
    FieldPtr field;
    int d = 0;
    std::vector<std::uint64_t> points;

    GridFunction indicator(Side side = Side::dual) const;
};

// M = {m : m_1^2/a_1 + ... + m_d^2/a_d = 0}
WitnessSet witness_M(const QuadraticForm& form, std::uint64_t guard = (1ull << 24));

// The improved-necessary-condition witness. `transformed` is the surface
// a'_1 x_1^2 + ... + a'_{d-2} x_{d-2}^2 - x_{d-1} x_d = 0 obtained from the
// square-ratio substitution; omega lives on its dual grid.
struct OmegaWitness {
    VarietyPtr transformed;
    WitnessSet omega;
    std::uint32_t l = 0;  // -a_i a_j^{-1} = l^2
    int pair_i = 0, pair_j = 0;  // 0-based coordinate pair moved to the tail
};

OmegaWitness witness_Omega(const QuadraticForm& form, std::uint64_t guard = (1ull << 24));

// D = nonzero squares of F_q
WitnessSet witness_D(const FieldPtr& field);

struct AffineSubspace {
    FieldPtr field;
    int d = 0;
    int k = 0;
    std::vector<std::uint32_t> offset;               // size d
    std::vector<std::vector<std::uint32_t>> basis;   // k independent vectors

    // all q^k encoded point indices
    std::vector<std::uint64_t> points() const;
};

AffineSubspace make_subspace(FieldPtr field, std::vector<std::uint32_t> offset,
                             std::vector<std::vector<std::uint32_t>> basis);

enum class SubspaceKind {
    alternating_odd,   // pairs (t,t), last coordinate zero; k = (d-1)/2
    alternating_even,  // pairs (t,t); k = d/2
    cone_odd,          // pairs (t, i t) with i^2 = -1, last coordinate zero
    cone_even,         // (t, i t) pairs plus one (t, t) tail pair
    line,              // (.., t, .., l t, ..) from a square ratio -a_i/a_j = l^2
};

const char* subspace_kind_name(SubspaceKind kind);

// The explicit subspace constructions used in the sharpness arguments;
// throws
// ConstructionInapplicable when the coefficient pattern does not match.
// Every returned subspace is verified to lie inside {Q = 0}.
AffineSubspace explicit_subspace(const QuadraticForm& form, SubspaceKind kind);

// Witt-index search: the largest k such that a k-dimensional linear subspace
// lies inside {Q = 0}, by DFS over reduced-echelon bases of isotropic,
// pairwise-orthogonal vectors.
int max_isotropic_dimension(const QuadraticForm& form, std::uint64_t guard = (1ull << 24));

// the maximal subspace itself (offset 0); k = 0 yields an empty basis
AffineSubspace isotropic_subspace(const QuadraticForm& form,
                                  std::uint64_t guard = (1ull << 24));

bool verify_subspace(const AffineSubspace& h, const Variety& v);

// Gram form of x_1^2 + ... + x_{d-2}^2 - x_{d-1} x_d
QuadraticForm cone_form(int d, FieldPtr field);

}
