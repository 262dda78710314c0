#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qseries/rational.hpp"

namespace qseries {

class order_mismatch_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Power series truncated at a fixed order N: exact rational coefficients of
// x^0 .. x^N. Operations require matching orders; there is no implicit
// re-truncation.
class TruncSeries {
public:
    explicit TruncSeries(std::size_t order) : c_(order + 1) {}

    TruncSeries(std::size_t order, std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
        if (c_.size() != order + 1)
            throw std::invalid_argument("TruncSeries: need exactly order+1 coefficients");
    }

    static TruncSeries one(std::size_t order) {
        TruncSeries s(order);
        s.c_[0] = Rational(1);
        return s;
    }

    std::size_t order() const { return c_.size() - 1; }

    const Rational& operator[](std::size_t i) const { return c_[i]; }

    void set(std::size_t i, Rational v) { c_.at(i) = std::move(v); }

    // In-place multiplication by the sparse factor (1 - x^n), truncated.
    void mul_one_minus_xn(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("mul_one_minus_xn: n must be >= 1");
        if (n > order()) return;
        for (std::size_t i = order() - n + 1; i-- > 0;) {
            if (!c_[i].is_zero()) c_[i + n] -= c_[i];
        }
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        check_orders(a, b, "add");
        TruncSeries r(a.order());
        for (std::size_t i = 0; i <= a.order(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }

    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        check_orders(a, b, "subtract");
        TruncSeries r(a.order());
        for (std::size_t i = 0; i <= a.order(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
        return r;
    }

    TruncSeries operator-() const {
        TruncSeries r(order());
        for (std::size_t i = 0; i <= order(); ++i) r.c_[i] = -c_[i];
        return r;
    }

    // Cauchy product truncated at the common order.
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        check_orders(a, b, "multiply");
        const std::size_t n = a.order();
        TruncSeries r(n);
        for (std::size_t i = 0; i <= n; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (std::size_t j = 0; j + i <= n; ++j) {
                if (b.c_[j].is_zero()) continue;
                r.c_[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return r;
    }

    TruncSeries& operator+=(const TruncSeries& o) { return *this = *this + o; }
    TruncSeries& operator-=(const TruncSeries& o) { return *this = *this - o; }
    TruncSeries& operator*=(const TruncSeries& o) { return *this = *this * o; }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.c_ == b.c_;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i <= order(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += c_[i].to_string();
            if (i > 0) s += "*x^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

    friend std::ostream& operator<<(std::ostream& os, const TruncSeries& s) {
        return os << s.to_string();
    }

private:
    std::vector<Rational> c_;

    static void check_orders(const TruncSeries& a, const TruncSeries& b, const char* op) {
        if (a.order() != b.order())
            throw order_mismatch_error(std::string("TruncSeries: cannot ") + op +
                                       " series of orders " + std::to_string(a.order()) +
                                       " and " + std::to_string(b.order()));
    }
};

// Coefficient of x^i, range-checked.
inline const Rational& coeff(const TruncSeries& a, std::size_t i) {
    if (i > a.order())
        throw std::out_of_range("coeff: index " + std::to_string(i) +
                                " exceeds order " + std::to_string(a.order()));
    return a[i];
}

// a^e truncated at a's order, by binary exponentiation; a^0 = 1.
inline TruncSeries pow_int(const TruncSeries& a, unsigned e) {
    TruncSeries result = TruncSeries::one(a.order());
    TruncSeries base = a;
    while (e) {
        if (e & 1u) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

// ln(1 - x^n) = -sum_{m>=1} x^(n*m) / m, truncated at `order`.
inline TruncSeries log_one_minus_xn(std::uint64_t n, std::size_t order) {
    if (n == 0) throw std::invalid_argument("log_one_minus_xn: n must be >= 1");
    TruncSeries s(order);
    for (std::uint64_t m = 1; n * m <= order; ++m)
        s.set(static_cast<std::size_t>(n * m), Rational(-1, static_cast<std::int64_t>(m)));
    return s;
}

// exp of a series with zero constant term, via the recurrence
// n*h_n = sum_{k=1}^{n} k*g_k*h_{n-k}, h_0 = 1.
inline TruncSeries exp(const TruncSeries& g) {
    if (!g[0].is_zero())
        throw std::domain_error("exp: series must have zero constant term");
    const std::size_t n_max = g.order();
    std::vector<Rational> kg(n_max + 1);
    for (std::size_t k = 1; k <= n_max; ++k)
        kg[k] = Rational(BigInt::from_uint64(k)) * g[k];
    TruncSeries h(n_max);
    h.set(0, Rational(1));
    for (std::size_t n = 1; n <= n_max; ++n) {
        Rational s;
        for (std::size_t k = 1; k <= n; ++k) {
            if (kg[k].is_zero() || h[n - k].is_zero()) continue;
            s += kg[k] * h[n - k];
        }
        h.set(n, s / Rational(BigInt::from_uint64(n)));
    }
    return h;
}

}  // namespace qseries
