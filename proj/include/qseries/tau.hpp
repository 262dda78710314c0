#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qseries/arith.hpp"
#include "qseries/bigint.hpp"
#include "qseries/rational.hpp"
#include "qseries/series.hpp"

namespace qseries {

enum class TauRoute { product, exp, pentagonal };

inline const char* route_name(TauRoute r) {
    switch (r) {
        case TauRoute::product: return "product";
        case TauRoute::exp: return "exp";
        case TauRoute::pentagonal: return "pentagonal";
    }
    return "?";
}

// Raised when a coefficient that must be an integer is not; carries the
// first offending tau index.
class integrality_error : public std::runtime_error {
public:
    integrality_error(TauRoute route, std::uint64_t index, const Rational& value)
        : std::runtime_error(std::string("tau ") + route_name(route) +
                             " route: coefficient of tau(" + std::to_string(index) +
                             ") is not an integer: " + value.to_string()),
          index(index) {}

    std::uint64_t index;
};

// tau[n] for 1 <= n <= max_n; tau[0] unused. Immutable once built.
struct TauTable {
    std::uint64_t max_n = 0;
    std::vector<BigInt> tau;
    TauRoute route = TauRoute::product;
};

namespace detail {

// All routes compute a series of order max_n-1 and multiply by x; keeping the
// index shift in one place since an off-by-one here corrupts every table the
// same way.
inline TauTable shift_into_table(const TruncSeries& s, std::uint64_t max_n,
                                 TauRoute route) {
    TauTable t;
    t.max_n = max_n;
    t.route = route;
    t.tau.resize(max_n + 1);
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        const Rational& c = s[static_cast<std::size_t>(n - 1)];
        if (!c.is_integer()) throw integrality_error(route, n, c);
        t.tau[n] = c.num();
    }
    return t;
}

}  // namespace detail

// tau from x * prod_{n>=1} (1 - x^n)^24, each factor applied sparsely.
inline TauTable tau_product(std::uint64_t max_n) {
    if (max_n < 1) throw std::invalid_argument("tau_product: max_n must be >= 1");
    const std::size_t order = static_cast<std::size_t>(max_n - 1);
    TruncSeries p = TruncSeries::one(order);
    for (std::uint64_t n = 1; n <= order; ++n) p.mul_one_minus_xn(n);
    return detail::shift_into_table(pow_int(p, 24), max_n, TauRoute::product);
}

// tau from x * exp(-24 * sum E(n) x^n); every coefficient must come out an
// integer even though the intermediates are honest rationals.
inline TauTable tau_exp(std::uint64_t max_n, const SigmaTable& sigma) {
    if (max_n < 1) throw std::invalid_argument("tau_exp: max_n must be >= 1");
    if (sigma.e_ratio.empty())
        throw std::invalid_argument("tau_exp: sigma table must carry E(n) (k == 1)");
    if (sigma.max_n + 1 < max_n)
        throw std::invalid_argument("tau_exp: sigma table too small; need max_n-1 entries");
    const std::size_t order = static_cast<std::size_t>(max_n - 1);
    TruncSeries g(order);
    const Rational minus24(-24);
    for (std::uint64_t n = 1; n <= order; ++n)
        g.set(static_cast<std::size_t>(n), minus24 * sigma.e_ratio[n]);
    return detail::shift_into_table(exp(g), max_n, TauRoute::exp);
}

// prod (1 - x^n) = sum_k (-1)^k x^(k(3k-1)/2) over all integers k
// (Euler); the base series has O(sqrt(N)) nonzero terms.
inline TruncSeries pentagonal_series(std::size_t order) {
    TruncSeries p(order);
    p.set(0, Rational(1));
    for (std::uint64_t k = 1;; ++k) {
        const std::uint64_t g1 = k * (3 * k - 1) / 2;
        const std::uint64_t g2 = k * (3 * k + 1) / 2;
        if (g1 > order) break;
        const Rational sign(k % 2 == 1 ? -1 : 1);
        p.set(static_cast<std::size_t>(g1), sign);
        if (g2 <= order) p.set(static_cast<std::size_t>(g2), sign);
    }
    return p;
}

inline TauTable tau_pentagonal(std::uint64_t max_n) {
    if (max_n < 1) throw std::invalid_argument("tau_pentagonal: max_n must be >= 1");
    const std::size_t order = static_cast<std::size_t>(max_n - 1);
    return detail::shift_into_table(pow_int(pentagonal_series(order), 24), max_n,
                                    TauRoute::pentagonal);
}

struct DeligneRow {
    std::uint64_t p = 0;
    bool satisfied = false;
    Rational margin;  // tau(p)^2 / (4 p^11), exact
};

// |tau(p)| <= 2 p^(11/2) checked as tau(p)^2 <= 4 p^11 in exact integers.
inline std::vector<DeligneRow> check_deligne(const TauTable& t) {
    std::vector<DeligneRow> rows;
    for (std::uint64_t p : primes_up_to(t.max_n)) {
        const BigInt& tau_p = t.tau[p];
        BigInt lhs = tau_p * tau_p;
        BigInt rhs = BigInt(4) * BigInt::pow(BigInt::from_uint64(p), 11);
        DeligneRow row;
        row.p = p;
        row.satisfied = lhs <= rhs;
        row.margin = Rational(lhs, rhs);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qseries
