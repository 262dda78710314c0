#include "qseries/bounds.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"

using namespace qseries;
using doctest::Approx;

namespace {

// Independent tail oracle in extended precision, ascending summation order.
long double brute_tail(double x, std::uint64_t from, std::uint64_t to) {
    long double s = 0.0L;
    for (std::uint64_t n = from; n <= to; ++n) {
        long double xn = std::pow(static_cast<long double>(x), static_cast<long double>(n));
        s += -std::log1p(-xn);
    }
    return s;
}

}  // namespace

TEST_SUITE_BEGIN("bounds");

TEST_CASE("zeta2 constant") {
    const double reference = std::numbers::pi_v<double> * std::numbers::pi_v<double> / 6.0;
    CHECK(std::abs(zeta2() - reference) < 5e-12);
}

TEST_CASE("partial_sum_f examples") {
    CHECK(partial_sum_f(0.5, 1) == Approx(std::log(0.5)).epsilon(1e-15));
    // frozen from an extended-precision summation oracle
    CHECK(partial_sum_f(0.5, 20) == Approx(-1.2420611411379470).epsilon(1e-13));
    {
        long double s = 0.0L;
        for (int n = 1; n <= 20; ++n)
            s += std::log1p(-std::pow(0.5L, static_cast<long double>(n)));
        CHECK(partial_sum_f(0.5, 20) == Approx(static_cast<double>(s)).epsilon(1e-14));
    }
    // x -> 0+: every term goes to ln(1) = 0
    CHECK(std::abs(partial_sum_f(1e-9, 5)) < 2e-9);
    CHECK(std::abs(partial_sum_f(1e-300, 3)) < 2e-300);
}

TEST_CASE("partial_sum_f domain") {
    CHECK_THROWS_AS(partial_sum_f(0.0, 5), std::domain_error);
    CHECK_THROWS_AS(partial_sum_f(1.0, 5), std::domain_error);
    CHECK_THROWS_AS(partial_sum_f(-0.5, 5), std::domain_error);
    CHECK_THROWS_AS(partial_sum_f(1.5, 5), std::domain_error);
    CHECK_THROWS_AS(partial_sum_f(0.5, 0), std::invalid_argument);
}

TEST_CASE("partial sums decrease in the term count") {
    for (double x : {0.01, 0.1, 0.5, 0.9, 0.99}) {
        for (std::uint64_t n : {1ull, 2ull, 7ull, 33ull, 100ull}) {
            const double a = partial_sum_f(x, n);
            const double b = partial_sum_f(x, n + 1);
            CHECK(b <= a);
            // strictly below whenever the added term is above the rounding
            // floor of the accumulated sum
            if (std::pow(x, static_cast<double>(n + 1)) > std::abs(a) * 1e-12)
                CHECK(b < a);
        }
    }
}

TEST_CASE("tail_bound dominates explicit tail sums") {
    CHECK_THROWS_AS(tail_bound(1.0, 5), std::domain_error);

    const double t = tail_bound(0.5, 10);
    CHECK(t == Approx(9.770395701e-4).epsilon(1e-9));
    CHECK(t >= static_cast<double>(brute_tail(0.5, 11, 1000)));

    for (double x : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        for (std::uint64_t n : {1ull, 2ull, 5ull, 10ull, 50ull}) {
            CHECK(tail_bound(x, n) >= static_cast<double>(brute_tail(x, n + 1, 100000)));
        }
    }

    // N -> infinity: the bound vanishes
    CHECK(tail_bound(0.9, 1u << 20) == 0.0);
    CHECK(tail_bound(0.5, 100) < 1e-29);
}

TEST_CASE("certify_sandwich at x = 0.5") {
    BoundCertificate c = certify_sandwich(0.5);
    CHECK(c.certified);
    CHECK(c.terms_used == 16);
    CHECK(c.lower == Approx(-2.37313822083125).epsilon(1e-12));
    CHECK(c.upper == Approx(-1.0).epsilon(1e-15));
    CHECK(c.lower + 1e-9 < c.f_partial - c.tail_bound);
    CHECK(c.f_partial + 1e-9 < c.upper);
    CHECK(c.f_partial == Approx(-1.2420620948124149).epsilon(1e-5));
}

TEST_CASE("certify_sandwich at x = 0.9 and x = 0.01") {
    BoundCertificate c9 = certify_sandwich(0.9);
    CHECK(c9.certified);
    CHECK(c9.upper == Approx(-9.0).epsilon(1e-14));

    BoundCertificate c01 = certify_sandwich(0.01);
    CHECK(c01.certified);
    CHECK(c01.terms_used == 16);
    CHECK(c01.f_partial == Approx(std::log(0.99)).epsilon(2e-2));
    CHECK(c01.upper == Approx(0.01 / (0.01 - 1.0)).epsilon(1e-15));
}

TEST_CASE("certify_sandwich cap exhaustion is reported, not thrown") {
    BoundCertificate c = certify_sandwich(0.9, 1e-9, 4);
    CHECK_FALSE(c.certified);
    CHECK(c.terms_used == 4);
}

TEST_CASE("certify_sandwich validation") {
    CHECK_THROWS_AS(certify_sandwich(0.0), std::domain_error);
    CHECK_THROWS_AS(certify_sandwich(1.0), std::domain_error);
    CHECK_THROWS_AS(certify_sandwich(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(certify_sandwich(0.5, -1e-9), std::invalid_argument);
    CHECK_THROWS_AS(certify_sandwich(0.5, 1e-9, 0), std::invalid_argument);
}

TEST_CASE("both bound curves are negative on (0,1)") {
    for (int i = 1; i <= 99; ++i) {
        const double x = i / 100.0;
        CHECK(zeta2() / std::log(x) < 0.0);
        CHECK(x / (x - 1.0) < 0.0);
    }
}

TEST_CASE("emit_curve endpoints and shapes") {
    auto pts = emit_curve(0.1, 0.9, 2, {10});
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].x == Approx(0.1).epsilon(1e-15));
    CHECK(pts[1].x == Approx(0.9).epsilon(1e-15));
    REQUIRE(pts[0].partials.size() == 1);
    CHECK(pts[0].partials[0] == Approx(partial_sum_f(0.1, 10)).epsilon(1e-15));
    CHECK(pts[0].lower == Approx(zeta2() / std::log(0.1)).epsilon(1e-15));
    CHECK(pts[0].upper == Approx(0.1 / (0.1 - 1.0)).epsilon(1e-15));

    CHECK_THROWS_AS(emit_curve(0.0, 0.9, 5), std::domain_error);
    CHECK_THROWS_AS(emit_curve(0.5, 0.5, 5), std::domain_error);
    CHECK_THROWS_AS(emit_curve(0.1, 1.0, 5), std::domain_error);
    CHECK_THROWS_AS(emit_curve(0.1, 0.9, 1), std::invalid_argument);
    CHECK_THROWS_AS(emit_curve(0.1, 0.9, 5, {}), std::invalid_argument);
    CHECK_THROWS_AS(emit_curve(0.1, 0.9, 5, {10, 0}), std::invalid_argument);
}

TEST_CASE("emit_curve reproduces the truncation crossover") {
    auto pts = emit_curve(0.05, 0.99, 95);  // defaults to 10- and 20-term sums
    bool f10_crosses_upper = false;
    for (const auto& pt : pts) {
        REQUIRE(pt.partials.size() == 2);
        const double f10 = pt.partials[0], f20 = pt.partials[1];
        CHECK(f20 <= f10);           // more negative terms added
        CHECK(pt.lower < f10);       // partial sums overestimate f
        CHECK(pt.lower < f20);
        if (f10 > pt.upper) f10_crosses_upper = true;
    }
    CHECK(f10_crosses_upper);
}

TEST_CASE("integral identity quadrature") {
    auto r = verify_integral_identity(10000);
    const double reference = -std::numbers::pi_v<double> * std::numbers::pi_v<double> / 6.0;
    CHECK(r.target == Approx(reference).epsilon(1e-12));
    CHECK(r.abs_err < 1e-6);
    CHECK(r.value == Approx(reference).epsilon(1e-6));

    // refinement decreases the error monotonically
    auto coarse = verify_integral_identity(100);
    auto mid = verify_integral_identity(1000);
    CHECK(coarse.abs_err > mid.abs_err);
    CHECK(mid.abs_err > r.abs_err);

    CHECK_THROWS_AS(verify_integral_identity(99), std::invalid_argument);
}

TEST_SUITE_END();
