#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qseries/bigint.hpp"
#include "qseries/rational.hpp"

namespace qseries {

// Raised when a requested table would exceed the configured entry budget.
class capacity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultTableBudget = 10'000'000;

// sigma[n] = sum of k-th powers of the divisors of n, for 1 <= n <= max_n.
// e_ratio[n] = sigma(n)/n in lowest terms, populated only for k == 1.
// Index 0 of both arrays is unused. Immutable once built.
struct SigmaTable {
    std::uint64_t max_n = 0;
    unsigned k = 1;
    std::vector<BigInt> sigma;
    std::vector<Rational> e_ratio;
};

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        if (i <= n / i)
            for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return primes;
}

// Deterministic trial division.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    if (n % 3 == 0) return n == 3;
    for (std::uint64_t d = 5; d <= n / d; d += 6) {
        if (n % d == 0 || n % (d + 2) == 0) return false;
    }
    return true;
}

// Divisor sieve: for each d, add d^k to every multiple of d.
inline SigmaTable build_sigma_table(std::uint64_t max_n, unsigned k = 1,
                                    std::uint64_t budget = kDefaultTableBudget) {
    if (max_n < 1) throw std::invalid_argument("build_sigma_table: max_n must be >= 1");
    if (max_n > budget)
        throw capacity_error("build_sigma_table: max_n " + std::to_string(max_n) +
                             " exceeds table budget " + std::to_string(budget));
    SigmaTable t;
    t.max_n = max_n;
    t.k = k;
    t.sigma.resize(max_n + 1);
    if (k <= 1) {
        // d^k fits a machine word, so sieve in uint64 and convert once.
        std::vector<std::uint64_t> acc(max_n + 1, 0);
        for (std::uint64_t d = 1; d <= max_n; ++d) {
            const std::uint64_t dk = k == 0 ? 1 : d;
            for (std::uint64_t m = d; m <= max_n; m += d) acc[m] += dk;
        }
        for (std::uint64_t n = 1; n <= max_n; ++n)
            t.sigma[n] = BigInt::from_uint64(acc[n]);
    } else {
        for (std::uint64_t d = 1; d <= max_n; ++d) {
            const BigInt dk = BigInt::pow(BigInt::from_uint64(d), k);
            for (std::uint64_t m = d; m <= max_n; m += d) t.sigma[m] += dk;
        }
    }
    if (k == 1) {
        t.e_ratio.resize(max_n + 1);
        for (std::uint64_t n = 1; n <= max_n; ++n)
            t.e_ratio[n] = Rational(t.sigma[n], BigInt::from_uint64(n));
    }
    return t;
}

// Prime factorization, primes strictly increasing, exponents >= 1.
struct Factorization {
    std::vector<std::pair<BigInt, unsigned>> factors;
};

inline void validate(const Factorization& f) {
    const BigInt* prev = nullptr;
    for (const auto& [p, e] : f.factors) {
        if (e < 1) throw std::invalid_argument("Factorization: exponent must be >= 1");
        if (prev && !(*prev < p))
            throw std::invalid_argument("Factorization: primes must be strictly increasing");
        if (!p.fits_uint64())
            throw std::invalid_argument(
                "Factorization: primality validation supports primes < 2^64 only");
        if (!is_prime(p.to_uint64()))
            throw std::invalid_argument("Factorization: " + p.to_string() +
                                        " is not prime");
        prev = &p;
    }
}

// sigma(prod p^e) = prod (p^(e+1) - 1) / (p - 1).
inline BigInt sigma_from_factorization(const Factorization& f) {
    validate(f);
    BigInt result(1);
    for (const auto& [p, e] : f.factors)
        result *= (BigInt::pow(p, e + 1) - BigInt(1)) / (p - BigInt(1));
    return result;
}

inline BigInt value_of(const Factorization& f) {
    BigInt result(1);
    for (const auto& [p, e] : f.factors) result *= BigInt::pow(p, e);
    return result;
}

// Trial division; intended for small n.
inline Factorization factorize(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
    Factorization f;
    auto take = [&](std::uint64_t p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) f.factors.emplace_back(BigInt::from_uint64(p), e);
    };
    take(2);
    for (std::uint64_t d = 3; d <= n / d; d += 2) take(d);
    if (n > 1) f.factors.emplace_back(BigInt::from_uint64(n), 1);
    return f;
}

// Exponent of p in n! is sum over i of floor(n / p^i) (Legendre).
inline Factorization factorial_factorization(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("factorial_factorization: n must be >= 1");
    Factorization f;
    for (std::uint64_t p : primes_up_to(n)) {
        std::uint64_t e = 0;
        for (std::uint64_t pk = p;; pk *= p) {
            e += n / pk;
            if (pk > n / p) break;
        }
        f.factors.emplace_back(BigInt::from_uint64(p), static_cast<unsigned>(e));
    }
    return f;
}

inline BigInt factorial(std::uint64_t n) {
    BigInt r(1);
    for (std::uint64_t i = 2; i <= n; ++i) r *= BigInt::from_uint64(i);
    return r;
}

// All n <= max_n with sigma(n) = 2n, ascending.
inline std::vector<std::uint64_t> find_perfect(std::uint64_t max_n,
                                               std::uint64_t budget = kDefaultTableBudget) {
    if (max_n < 1) throw std::invalid_argument("find_perfect: max_n must be >= 1");
    if (max_n > budget)
        throw capacity_error("find_perfect: max_n " + std::to_string(max_n) +
                             " exceeds table budget " + std::to_string(budget));
    std::vector<std::uint64_t> acc(max_n + 1, 0);
    for (std::uint64_t d = 1; d <= max_n; ++d)
        for (std::uint64_t m = d; m <= max_n; m += d) acc[m] += d;
    std::vector<std::uint64_t> perfect;
    for (std::uint64_t n = 1; n <= max_n; ++n)
        if (acc[n] == 2 * n) perfect.push_back(n);
    return perfect;
}

struct FactorialGrowthRow {
    std::uint64_t n = 0;
    Rational e_value;        // E(n!) = sigma(n!) / n!
    Rational harmonic_bound; // 1 + sum_{k=2}^{n} 1/k
    bool holds = false;      // strict inequality; n = 2 is the equality boundary
};

inline std::vector<FactorialGrowthRow> check_factorial_growth(std::uint64_t n_max) {
    if (n_max < 2) throw std::invalid_argument("check_factorial_growth: n_max must be >= 2");
    std::vector<FactorialGrowthRow> rows;
    Rational bound(1);
    for (std::uint64_t n = 2; n <= n_max; ++n) {
        bound += Rational(BigInt(1), BigInt::from_uint64(n));
        FactorialGrowthRow row;
        row.n = n;
        row.e_value = Rational(sigma_from_factorization(factorial_factorization(n)),
                               factorial(n));
        row.harmonic_bound = bound;
        row.holds = row.e_value > row.harmonic_bound;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qseries
