#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ffharm/charsums.hpp"
#include "ffharm/rng.hpp"

using namespace ffharm;
using cplx = std::complex<double>;

namespace {
const long kOddPrimePowers[] = {3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29,
                                31, 37, 41, 43, 47, 49};
}

TEST_CASE("Gauss sum magnitudes: sqrt(q) off zero, 0 at zero") {
    for (long q : kOddPrimePowers) {
        CAPTURE(q);
        FieldPtr f = build_field_q(q);
        CHECK(std::abs(gauss_sum(*f, 0)) <= 1e-10 * q);
        for (std::uint32_t t = 1; t < f->q(); ++t) {
            double mag = std::abs(gauss_sum(*f, t));
            CHECK(std::abs(mag - std::sqrt(double(q))) <= 1e-10 * std::sqrt(double(q)));
        }
    }
}

TEST_CASE("G_t = eta(t) G_1 and G_1^2 = eta(-1) q") {
    for (long q : kOddPrimePowers) {
        CAPTURE(q);
        FieldPtr f = build_field_q(q);
        cplx g1 = gauss_sum_g1(*f);
        for (std::uint32_t t = 1; t < f->q(); ++t)
            CHECK(std::abs(gauss_sum(*f, t) - double(f->eta(t)) * g1) <= 1e-10 * std::sqrt(double(q)));
        cplx expect = double(f->eta(f->minus_one())) * double(q);
        CHECK(std::abs(g1 * g1 - expect) <= 1e-10 * double(q));
    }
}

TEST_CASE("explicit small Gauss sums") {
    FieldPtr f3 = build_field(3);
    cplx g3 = gauss_sum_g1(*f3);
    CHECK(g3.real() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(g3.imag() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));

    FieldPtr f5 = build_field(5);
    cplx g5 = gauss_sum_g1(*f5);
    CHECK(g5.real() == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
    CHECK(std::abs(g5.imag()) < 1e-13);
}

TEST_CASE("square character sum") {
    for (long q : {3L, 5L, 7L, 9L, 13L}) {
        FieldPtr f = build_field_q(q);
        CHECK(std::abs(square_character_sum(*f, 0) - double(q)) < 1e-12 * q);
        cplx g1 = gauss_sum_g1(*f);
        for (std::uint32_t t = 1; t < f->q(); ++t)
            CHECK(std::abs(square_character_sum(*f, t) - double(f->eta(t)) * g1) < 1e-11 * q);
    }
    // q=5, t=2: eta(2) = -1 mod 5
    FieldPtr f5 = build_field(5);
    CHECK(square_character_sum(*f5, 2).real() == doctest::Approx(-std::sqrt(5.0)).epsilon(1e-13));
}

TEST_CASE("complete square sum matches its closed form everywhere (q <= 13)") {
    for (long q : {3L, 5L, 7L, 9L, 11L, 13L}) {
        CAPTURE(q);
        FieldPtr f = build_field_q(q);
        for (std::uint32_t a = 1; a < f->q(); ++a)
            for (std::uint32_t b = 0; b < f->q(); ++b)
                CHECK(std::abs(complete_square_sum(*f, a, b) - complete_square_closed(*f, a, b)) <=
                      1e-10 * double(q));
    }
}

TEST_CASE("complete square reduces to the plain square sum at b = 0") {
    FieldPtr f = build_field(3);
    CHECK(std::abs(complete_square_sum(*f, 1, 0) - gauss_sum_g1(*f)) < 1e-13);
    // q=3, a=1, b=1: G_1 * chi(-1/4); 4^{-1} = 1, so the argument is -1 = 2
    cplx expect = gauss_sum_g1(*f) * f->chi(2);
    CHECK(std::abs(complete_square_sum(*f, 1, 1) - expect) < 1e-13);
}

TEST_CASE("zero leading coefficient is rejected") {
    FieldPtr f = build_field(5);
    CHECK_THROWS_WITH_AS(complete_square_sum(*f, 0, 1),
                         doctest::Contains("ZeroLeadingCoefficient"), Error);
}
