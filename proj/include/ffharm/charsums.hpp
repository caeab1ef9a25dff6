#pragma once

#include <complex>

#include "ffharm/field.hpp"

namespace ffharm {

// Gauss sums and complete-square identities. Everything here is evaluated by
// exact summation over the field in double-precision complex; each value of
// modulus one contributes only rounding error, so sums are accurate to about
// 1e-14 * q.

// G_t = sum_{s != 0} eta(s) chi(t*s); |G_t| = sqrt(q) for t != 0, G_0 = 0
std::complex<double> gauss_sum(const FiniteField& f, std::uint32_t t);

// G_1
std::complex<double> gauss_sum_g1(const FiniteField& f);

// sum_s chi(t*s^2); equals eta(t)*G_1 for t != 0 and q for t = 0
std::complex<double> square_character_sum(const FiniteField& f, std::uint32_t t);

// sum_s chi(a*s^2 + b*s) by direct summation; requires a != 0
std::complex<double> complete_square_sum(const FiniteField& f, std::uint32_t a,
                                         std::uint32_t b);

// the same sum via the complete-square identity: G_1 * eta(a) * chi(-b^2/(4a))
std::complex<double> complete_square_closed(const FiniteField& f, std::uint32_t a,
                                            std::uint32_t b);

}
