#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffharm/error.hpp"

namespace ffharm {

class FiniteField;
using FieldPtr = std::shared_ptr<const FiniteField>;

// Exact arithmetic in F_q, q = p^n, p an odd prime. An element is an index in
// [0, q): index = c0 + c1*p + ... + c_{n-1}*p^{n-1} where (c0..c_{n-1}) are
// the coordinates w.r.t. the power basis of F_p[t]/(modulus). All arithmetic
// is table-driven; a field is immutable once built and safe to share across
// threads.
class FiniteField {
public:
    // modulus: low coefficients (c0..c_{n-1}) of the monic degree-n modulus
    // t^n + c_{n-1} t^{n-1} + ... + c0, reduced mod p. Required irreducible;
    // when omitted and n > 1, the first irreducible polynomial in encoding
    // order is used (covers at least p <= 13, n <= 3).
    FiniteField(long p, int n, std::optional<std::vector<long>> modulus);

    long p() const { return p_; }
    int n() const { return n_; }
    std::uint32_t q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }
    std::string modulus_string() const;  // e.g. "t^2+1"

    bool same_field(const FiniteField& other) const {
        return p_ == other.p_ && n_ == other.n_ && modulus_ == other.modulus_;
    }

    // element arithmetic (indices)
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const { return add_[key(a, b)]; }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return sub_[key(a, b)]; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return mul_[key(a, b)]; }
    std::uint32_t neg(std::uint32_t a) const { return neg_[a]; }
    std::uint32_t inv(std::uint32_t a) const;  // throws DivisionByZero on 0
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;

    std::uint32_t zero() const { return 0; }
    std::uint32_t one() const { return 1; }
    std::uint32_t minus_one() const { return neg_[1]; }

    // integers -> constant polynomials (v mod p); handles negatives
    std::uint32_t from_int(long v) const;
    std::vector<int> digits(std::uint32_t a) const;
    std::uint32_t from_digits(std::span<const int> digits) const;

    // Tr(x) = x + x^p + ... + x^{p^{n-1}}, as a residue in [0, p)
    int trace(std::uint32_t a) const { return trace_[a]; }

    // canonical additive character chi(x) = exp(2*pi*i*Tr(x)/p)
    std::complex<double> chi(std::uint32_t a) const { return chi_[a]; }

    // quadratic character: 0 at 0, +1 on nonzero squares, -1 otherwise
    int eta(std::uint32_t a) const { return eta_[a]; }

    // smallest l (by encoding) with l^2 = a, if a is a square
    std::optional<std::uint32_t> sqrt(std::uint32_t a) const {
        if (sqrt_[a] == kNoSqrt) return std::nullopt;
        return sqrt_[a];
    }

    // raw table access for inner loops
    const std::uint32_t* mul_row(std::uint32_t a) const { return &mul_[std::size_t(a) * q_]; }
    const std::uint32_t* sub_col_base() const { return sub_.data(); }
    std::span<const std::complex<double>> chi_table() const { return chi_; }

private:
    std::size_t key(std::uint32_t a, std::uint32_t b) const {
        return std::size_t(a) * q_ + b;
    }
    void build_tables();

    long p_;
    int n_;
    std::uint32_t q_;
    std::vector<int> modulus_;  // size n_, low coefficients; empty when n == 1

    std::vector<std::uint32_t> add_, sub_, mul_;
    std::vector<std::uint32_t> neg_, inv_, sqrt_;
    std::vector<int> trace_;
    std::vector<std::complex<double>> chi_;
    std::vector<std::int8_t> eta_;

    static constexpr std::uint32_t kNoSqrt = 0xFFFFFFFFu;
};

// Validates p (odd prime), n >= 1, and the modulus, then constructs the field.
FieldPtr build_field(long p, int n = 1,
                     std::optional<std::vector<long>> modulus = std::nullopt);

// Convenience: q = p^n given as a single prime power (e.g. 9, 27, 49).
FieldPtr build_field_q(long q, std::optional<std::vector<long>> modulus = std::nullopt);

// Value-semantic element bound to its field; binary operations require the
// same field (structurally) and throw MixedFields otherwise.
struct FieldElement {
    FieldPtr field;
    std::uint32_t idx = 0;

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;
    bool operator==(const FieldElement& o) const;
};

}
