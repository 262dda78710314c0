#include "qseries/rational.hpp"

#include <random>

#include "doctest.h"

using qseries::BigInt;
using qseries::Rational;

TEST_SUITE_BEGIN("rational");

TEST_CASE("normalization") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, 4) == Rational(-1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(0, 7).den() == BigInt(1));
    CHECK(Rational(6, 3).is_integer());
    CHECK(Rational(6, 3).num() == BigInt(2));
    CHECK_THROWS_AS(Rational(BigInt(1), BigInt(0)), std::domain_error);
}

TEST_CASE("arithmetic") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
    CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
    CHECK(Rational(2, 3) / Rational(4, 9) == Rational(3, 2));
    CHECK(-Rational(1, 2) == Rational(-1, 2));
    CHECK(Rational(1, 2) + Rational(-1, 2) == Rational(0));
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), std::domain_error);
}

TEST_CASE("comparison") {
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(7, 7) == Rational(1));
    CHECK(Rational(3, 2) > Rational(1));
    CHECK(Rational(-5) < Rational(1, 1000000));
}

TEST_CASE("to_string") {
    CHECK(Rational(3, 2).to_string() == "3/2");
    CHECK(Rational(-3, 2).to_string() == "-3/2");
    CHECK(Rational(4, 2).to_string() == "2");
    CHECK(Rational(0).to_string() == "0");
}

TEST_CASE("field laws on random values") {
    std::mt19937_64 rng(99);
    auto random_rat = [&] {
        std::int64_t n = static_cast<std::int64_t>(rng() % 2001) - 1000;
        std::int64_t d = static_cast<std::int64_t>(rng() % 1000) + 1;
        return Rational(n, d);
    };
    for (int it = 0; it < 500; ++it) {
        Rational a = random_rat(), b = random_rat(), c = random_rat();
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + Rational(0) == a);
        CHECK(a * Rational(1) == a);
        if (!a.is_zero()) CHECK(a / a == Rational(1));
        // results stay normalized
        Rational s = a * b;
        CHECK(BigInt::gcd(s.num(), s.den()) == BigInt(1));
        CHECK(s.den() > BigInt(0));
    }
}

TEST_SUITE_END();
