#include "qseries/tau.hpp"

#include <cstdint>
#include <vector>

#include "doctest.h"

using namespace qseries;

namespace {

// Independent oracle: tau(1..max_n) by naive integer polynomial expansion of
// x * prod (1 - x^n)^24, no series machinery involved.
std::vector<long long> tau_brute(std::size_t max_n) {
    const std::size_t order = max_n - 1;
    std::vector<long long> base(order + 1, 0);
    base[0] = 1;
    for (std::size_t n = 1; n <= order; ++n) {
        std::vector<long long> next(order + 1, 0);
        for (std::size_t i = 0; i <= order; ++i) {
            if (base[i] == 0) continue;
            next[i] += base[i];
            if (i + n <= order) next[i + n] -= base[i];
        }
        base = next;
    }
    std::vector<long long> p(order + 1, 0);
    p[0] = 1;
    for (int rep = 0; rep < 24; ++rep) {
        std::vector<long long> next(order + 1, 0);
        for (std::size_t i = 0; i <= order; ++i) {
            if (p[i] == 0) continue;
            for (std::size_t j = 0; i + j <= order; ++j) next[i + j] += p[i] * base[j];
        }
        p = next;
    }
    std::vector<long long> tau(max_n + 1, 0);
    for (std::size_t n = 1; n <= max_n; ++n) tau[n] = p[n - 1];
    return tau;
}

}  // namespace

TEST_SUITE_BEGIN("tau");

TEST_CASE("classical oracle values on every route") {
    auto sigma = build_sigma_table(16, 1);
    for (const TauTable& t :
         {tau_product(3), tau_exp(3, sigma), tau_pentagonal(3)}) {
        CHECK(t.tau[1] == BigInt(1));
        CHECK(t.tau[2] == BigInt(-24));
        CHECK(t.tau[3] == BigInt(252));
    }
    CHECK(tau_product(1).tau == std::vector<BigInt>{BigInt(0), BigInt(1)});
    CHECK(tau_exp(2, sigma).tau ==
          std::vector<BigInt>{BigInt(0), BigInt(1), BigInt(-24)});
}

TEST_CASE("tau(1..12) against the brute-force expansion") {
    auto brute = tau_brute(12);
    CHECK(brute[4] == -1472);
    CHECK(brute[5] == 4830);
    CHECK(brute[6] == -6048);
    auto sigma = build_sigma_table(16, 1);
    for (const TauTable& t :
         {tau_product(12), tau_exp(12, sigma), tau_pentagonal(12)}) {
        for (std::uint64_t n = 1; n <= 12; ++n)
            CHECK(t.tau[n] == BigInt(brute[n]));
    }
}

TEST_CASE("pentagonal base series") {
    TruncSeries p = pentagonal_series(12);
    TruncSeries expect(12);
    expect.set(0, Rational(1));
    expect.set(1, Rational(-1));
    expect.set(2, Rational(-1));
    expect.set(5, Rational(1));
    expect.set(7, Rational(1));
    expect.set(12, Rational(-1));
    CHECK(p == expect);

    // matches the dense product prod (1 - x^n) at a larger order
    const std::size_t order = 80;
    TruncSeries dense = TruncSeries::one(order);
    for (std::uint64_t n = 1; n <= order; ++n) dense.mul_one_minus_xn(n);
    CHECK(pentagonal_series(order) == dense);
}

TEST_CASE("route agreement to 200") {
    auto sigma = build_sigma_table(200, 1);
    TauTable a = tau_product(200);
    TauTable b = tau_exp(200, sigma);
    TauTable c = tau_pentagonal(200);
    CHECK(a.tau == b.tau);
    CHECK(a.tau == c.tau);
}

TEST_CASE("integrality violation reports the first offending index") {
    SigmaTable fake;
    fake.max_n = 4;
    fake.k = 1;
    fake.sigma = {BigInt(0), BigInt(1), BigInt(3), BigInt(4), BigInt(7)};
    fake.e_ratio = {Rational(0), Rational(1, 5), Rational(1), Rational(1), Rational(1)};
    CHECK_THROWS_AS(tau_exp(5, fake), integrality_error);
    try {
        tau_exp(5, fake);
    } catch (const integrality_error& e) {
        CHECK(e.index == 2);
    }
}

TEST_CASE("input validation") {
    auto sigma = build_sigma_table(8, 1);
    CHECK_THROWS_AS(tau_product(0), std::invalid_argument);
    CHECK_THROWS_AS(tau_exp(0, sigma), std::invalid_argument);
    CHECK_THROWS_AS(tau_exp(10, sigma), std::invalid_argument);
    CHECK_THROWS_AS(tau_exp(4, build_sigma_table(8, 0)), std::invalid_argument);
    CHECK_NOTHROW(tau_exp(9, sigma));
}

TEST_CASE("Deligne bound rows") {
    TauTable t = tau_product(200);
    auto rows = check_deligne(t);
    REQUIRE(rows.size() == primes_up_to(200).size());

    CHECK(rows[0].p == 2);
    CHECK(rows[0].satisfied);
    CHECK(rows[0].margin == Rational(9, 128));  // 576 / 8192

    CHECK(rows[1].p == 3);
    CHECK(rows[1].satisfied);
    CHECK(rows[1].margin == Rational(196, 2187));  // 63504 / 708588

    CHECK(rows[2].p == 5);
    CHECK(rows[2].satisfied);
    CHECK(rows[2].margin == Rational(BigInt(4830) * BigInt(4830),
                                     BigInt(4) * BigInt::pow(BigInt(5), 11)));

    for (const auto& row : rows) {
        CHECK(row.satisfied);
        CHECK(row.margin < Rational(1));
    }
}

TEST_CASE("tau is multiplicative on coprime pairs (external classical fact)") {
    TauTable t = tau_product(40);
    CHECK(t.tau[6] == t.tau[2] * t.tau[3]);
    CHECK(t.tau[6] == BigInt(-6048));
    CHECK(t.tau[10] == t.tau[2] * t.tau[5]);
    CHECK(t.tau[12] == t.tau[3] * t.tau[4]);
    CHECK(t.tau[35] == t.tau[5] * t.tau[7]);
}

TEST_SUITE_END();
