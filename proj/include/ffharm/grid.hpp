#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ffharm/field.hpp"

namespace ffharm {

using cplx = std::complex<double>;

// Which measure a function lives under. The spatial "x" side carries the
// normalized counting measure dx (mass q^-d per point); the frequency "m"
// side carries the plain counting measure dm. Keeping the tag in the type is what stops
// the two from being mixed up in norms and convolutions.
enum class Side { primal /*dx*/, dual /*dm*/ };

const char* side_name(Side s);

// Dense complex function on F_q^d. Point (x_1..x_d) lives at index
// sum_j idx(x_j) * q^(j-1)  (first coordinate least significant).
class GridFunction {
public:
    GridFunction(FieldPtr field, int d, Side side);

    Side side() const { return side_; }
    int dim() const { return d_; }
    std::uint64_t size() const { return values_.size(); }
    const FieldPtr& field() const { return field_; }

    cplx& operator[](std::uint64_t i) { return values_[i]; }
    const cplx& operator[](std::uint64_t i) const { return values_[i]; }
    std::span<const cplx> values() const { return values_; }
    std::span<cplx> values() { return values_; }

    std::uint64_t encode(std::span<const std::uint32_t> coords) const;
    void decode(std::uint64_t index, std::span<std::uint32_t> coords) const;

    // measure-weighted L^p norm; p in [1, inf], inf -> max modulus
    double lp_norm(double p) const;

    // sesquilinear pairing <f, g> under this side's measure (conjugates g)
    cplx inner(const GridFunction& other) const;

    void write_csv(std::ostream& os) const;  // header "index,re,im"
    void write_binary(std::ostream& os) const;
    static GridFunction read_binary(std::istream& is, FieldPtr field_hint = nullptr);

private:
    FieldPtr field_;
    int d_;
    Side side_;
    std::vector<cplx> values_;
};

// number of points q^d, guarded
std::uint64_t grid_size_checked(const FiniteField& f, int d,
                                std::uint64_t guard = (1ull << 24));

// measure-weighted norm of a raw value array (shared by SurfaceFunction)
double weighted_lp_norm(std::span<const cplx> values, double weight, double p);

}
