#include "ffharm/charsums.hpp"

namespace ffharm {

std::complex<double> gauss_sum(const FiniteField& f, std::uint32_t t) {
    std::complex<double> acc = 0.0;
    for (std::uint32_t s = 1; s < f.q(); ++s)
        acc += double(f.eta(s)) * f.chi(f.mul(t, s));
    return acc;
}

std::complex<double> gauss_sum_g1(const FiniteField& f) { return gauss_sum(f, f.one()); }

std::complex<double> square_character_sum(const FiniteField& f, std::uint32_t t) {
    std::complex<double> acc = 0.0;
    for (std::uint32_t s = 0; s < f.q(); ++s)
        acc += f.chi(f.mul(t, f.mul(s, s)));
    return acc;
}

std::complex<double> complete_square_sum(const FiniteField& f, std::uint32_t a,
                                         std::uint32_t b) {
    if (a == 0) throw Error("ZeroLeadingCoefficient", "quadratic coefficient must be nonzero");
    std::complex<double> acc = 0.0;
    for (std::uint32_t s = 0; s < f.q(); ++s) {
        std::uint32_t arg = f.add(f.mul(a, f.mul(s, s)), f.mul(b, s));
        acc += f.chi(arg);
    }
    return acc;
}

std::complex<double> complete_square_closed(const FiniteField& f, std::uint32_t a,
                                            std::uint32_t b) {
    if (a == 0) throw Error("ZeroLeadingCoefficient", "quadratic coefficient must be nonzero");
    std::uint32_t four_a = f.mul(f.from_int(4), a);
    std::uint32_t arg = f.neg(f.mul(f.mul(b, b), f.inv(four_a)));
    return gauss_sum_g1(f) * double(f.eta(a)) * f.chi(arg);
}

}
