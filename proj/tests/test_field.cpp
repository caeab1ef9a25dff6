#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include "ffharm/field.hpp"
#include "ffharm/rng.hpp"

using namespace ffharm;

TEST_CASE("prime field construction and arithmetic") {
    FieldPtr f = build_field(7);
    CHECK(f->q() == 7);
    CHECK(f->inv(3) == 5);  // 3*5 = 15 = 1 mod 7
    for (std::uint32_t a = 0; a < 7; ++a) CHECK(f->add(a, f->neg(a)) == 0);
    CHECK(f->sub(2, 5) == 4);
    CHECK(f->mul(4, 5) == 6);
}

TEST_CASE("construction rejects bad parameters") {
    CHECK_THROWS_WITH_AS(build_field(2), doctest::Contains("EvenCharacteristic"), Error);
    CHECK_THROWS_WITH_AS(build_field(9), doctest::Contains("NonPrime"), Error);
    CHECK_THROWS_WITH_AS(build_field_q(4), doctest::Contains("EvenCharacteristic"), Error);
    CHECK_THROWS_WITH_AS(build_field_q(45), doctest::Contains("NonPrime"), Error);
    // t^2 + 2 has the root 1 mod 3
    CHECK_THROWS_WITH_AS(build_field(3, 2, std::vector<long>{2, 0}),
                         doctest::Contains("ReducibleModulus"), Error);
}

TEST_CASE("F_9 with modulus t^2+1") {
    FieldPtr f = build_field(3, 2, std::vector<long>{1, 0});
    CHECK(f->q() == 9);
    // t*t = -1 = 2
    std::uint32_t t = f->from_digits(std::vector<int>{0, 1});
    CHECK(f->mul(t, t) == f->from_int(-1));
    // Tr(t) = t + t^3 = 0, so chi(t) = 1
    CHECK(f->trace(t) == 0);
    CHECK(f->chi(t).real() == doctest::Approx(1.0).epsilon(1e-14));
    // the default modulus search picks the same polynomial
    FieldPtr g = build_field(3, 2);
    CHECK(g->modulus() == f->modulus());
}

TEST_CASE("default moduli exist and are irreducible for p <= 13, n <= 3") {
    for (long p : {3L, 5L, 7L, 11L, 13L})
        for (int n : {2, 3}) {
            if (std::pow(double(p), n) > 2048) continue;
            FieldPtr f = build_field(p, n);
            CHECK(f->q() == std::uint32_t(std::llround(std::pow(double(p), n))));
            // multiplicative order: x^(q-1) = 1 on sampled nonzero x
            Rng rng(17);
            for (int i = 0; i < 200; ++i) {
                std::uint32_t x = 1 + std::uint32_t(rng.below(f->q() - 1));
                CHECK(f->pow(x, f->q() - 1) == f->one());
            }
        }
}

TEST_CASE("additive character: orthogonality and homomorphism") {
    for (long q : {3L, 5L, 7L, 9L, 11L, 13L, 17L, 19L, 23L, 25L, 27L, 29L, 31L, 37L, 41L, 43L, 47L, 49L}) {
        FieldPtr f = build_field_q(q);
        CAPTURE(q);
        CHECK(f->chi(0) == std::complex<double>(1.0, 0.0));
        for (std::uint32_t t = 0; t < f->q(); ++t) {
            std::complex<double> sum = 0.0;
            for (std::uint32_t x = 0; x < f->q(); ++x) sum += f->chi(f->mul(t, x));
            double expect = t == 0 ? double(q) : 0.0;
            CHECK(std::abs(sum - expect) <= 1e-10 * double(q));
        }
        Rng rng(5);
        for (int i = 0; i < 50; ++i) {
            std::uint32_t a = std::uint32_t(rng.below(f->q()));
            std::uint32_t b = std::uint32_t(rng.below(f->q()));
            CHECK(std::abs(f->chi(f->add(a, b)) - f->chi(a) * f->chi(b)) < 1e-12);
        }
    }
}

TEST_CASE("chi(1) = exp(2 pi i / 3) over F_3") {
    FieldPtr f = build_field(3);
    CHECK(f->chi(1).real() == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(f->chi(1).imag() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
}

TEST_CASE("quadratic character") {
    FieldPtr f = build_field(7);
    CHECK(f->eta(0) == 0);
    CHECK(f->eta(3) == -1);  // squares mod 7: {1, 2, 4}
    CHECK(f->eta(2) == 1);

    for (long q : {3L, 5L, 7L, 9L, 11L, 13L, 27L, 49L}) {
        FieldPtr F = build_field_q(q);
        CAPTURE(q);
        int squares = 0, total = 0;
        for (std::uint32_t x = 1; x < F->q(); ++x) {
            squares += F->eta(x) == 1;
            total += F->eta(x);
        }
        CHECK(squares == int((q - 1) / 2));
        CHECK(total == 0);
        // multiplicativity
        Rng rng(9);
        for (int i = 0; i < 50; ++i) {
            std::uint32_t a = std::uint32_t(rng.below(F->q()));
            std::uint32_t b = std::uint32_t(rng.below(F->q()));
            CHECK(F->eta(F->mul(a, b)) == F->eta(a) * F->eta(b));
        }
        // eta(x) = x^((q-1)/2) mapped to {-1, 0, 1}
        for (std::uint32_t x = 0; x < F->q(); ++x) {
            std::uint32_t pw = F->pow(x, (F->q() - 1) / 2);
            int expect = x == 0 ? 0 : (pw == F->one() ? 1 : -1);
            CHECK(F->eta(x) == expect);
        }
    }
}

TEST_CASE("square roots pick the smallest encoding") {
    FieldPtr f = build_field(7);
    CHECK(f->sqrt(0) == 0u);
    CHECK(f->sqrt(2) == 3u);  // 3^2 = 4^2 = 2; 3 < 4
    CHECK(!f->sqrt(3).has_value());
    for (long q : {9L, 13L, 25L}) {
        FieldPtr F = build_field_q(q);
        for (std::uint32_t x = 0; x < F->q(); ++x) {
            auto r = F->sqrt(x);
            CHECK(r.has_value() == (F->eta(x) >= 0));
            if (r) CHECK(F->mul(*r, *r) == x);
        }
    }
}

TEST_CASE("FieldElement wrapper enforces field identity") {
    FieldPtr f7 = build_field(7);
    FieldPtr f7b = build_field(7);
    FieldPtr f5 = build_field(5);
    FieldElement a{f7, 3}, b{f7b, 5}, c{f5, 2};
    CHECK((a * b).idx == 1);  // structurally equal fields interoperate
    CHECK((a + (-a)).idx == 0);
    CHECK(a.inverse().idx == 5);
    CHECK_THROWS_WITH_AS(a + c, doctest::Contains("MixedFields"), Error);
    FieldElement zero{f7, 0};
    CHECK_THROWS_WITH_AS(zero.inverse(), doctest::Contains("DivisionByZero"), Error);
}

TEST_CASE("digit round trip") {
    FieldPtr f = build_field(5, 3);
    for (std::uint32_t x = 0; x < f->q(); x += 7) {
        auto d = f->digits(x);
        CHECK(f->from_digits(d) == x);
    }
}
