#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qseries {

namespace detail {

inline void check_unit_interval(double x, const char* who) {
    if (!(x > 0.0 && x < 1.0))
        throw std::domain_error(std::string(who) + ": x must lie in (0,1), got " +
                                std::to_string(x));
}

}  // namespace detail

// Riemann zeta at 2, from descending partial sums of 1/n^2 plus the
// integral-test remainder for the discarded tail. Good to ~5e-13.
inline double zeta2() {
    static const double value = [] {
        double s = 0.0;
        for (std::uint64_t n = 1'000'000; n >= 1; --n) {
            const double dn = static_cast<double>(n);
            s += 1.0 / (dn * dn);
        }
        return s + 1e-6;
    }();
    return value;
}

// sum_{n=1}^{n_terms} ln(1 - x^n), summed from the smallest-magnitude terms
// (largest n) upward.
inline double partial_sum_f(double x, std::uint64_t n_terms) {
    detail::check_unit_interval(x, "partial_sum_f");
    if (n_terms < 1) throw std::invalid_argument("partial_sum_f: n_terms must be >= 1");
    double s = 0.0;
    for (std::uint64_t n = n_terms; n >= 1; --n)
        s += std::log1p(-std::pow(x, static_cast<double>(n)));
    return s;
}

// Upper bound on sum_{n>N} |ln(1 - x^n)|, from |ln(1-y)| <= y/(1-y):
//   T = x^(N+1) / ((1-x) * (1-x^(N+1))).
inline double tail_bound(double x, std::uint64_t n_terms) {
    detail::check_unit_interval(x, "tail_bound");
    const double xn1 = std::pow(x, static_cast<double>(n_terms) + 1.0);
    return xn1 / ((1.0 - x) * (1.0 - xn1));
}

// One certified sample of zeta(2)/ln(x) < f(x) < x/(x-1): the true f lies in
// [f_partial - T, f_partial], so both strict inequalities are checked with an
// epsilon margin against that interval.
struct BoundCertificate {
    double x = 0.0;
    std::uint64_t terms_used = 0;
    double f_partial = 0.0;
    double tail_bound = 0.0;
    double lower = 0.0;  // zeta(2) / ln(x)
    double upper = 0.0;  // x / (x - 1)
    bool certified = false;
};

inline BoundCertificate certify_sandwich(double x, double epsilon = 1e-9,
                                         std::uint64_t n_cap = std::uint64_t(1) << 20) {
    detail::check_unit_interval(x, "certify_sandwich");
    if (!(epsilon > 0.0))
        throw std::invalid_argument("certify_sandwich: epsilon must be > 0");
    if (n_cap < 1) throw std::invalid_argument("certify_sandwich: n_cap must be >= 1");

    const double lower = zeta2() / std::log(x);
    const double upper = x / (x - 1.0);

    BoundCertificate cert;
    std::uint64_t n = std::min<std::uint64_t>(16, n_cap);
    for (;;) {
        const double f = partial_sum_f(x, n);
        const double t = tail_bound(x, n);
        const bool ok = lower + epsilon < f - t && f + epsilon < upper;
        cert = BoundCertificate{x, n, f, t, lower, upper, ok};
        if (ok || n >= n_cap) break;
        n = std::min(n * 2, n_cap);
    }
    return cert;
}

// One curve sample: partial sums of f for each requested term count, plus
// both bound curves.
struct CurvePoint {
    double x = 0.0;
    std::vector<double> partials;  // parallel to the requested term counts
    double lower = 0.0;
    double upper = 0.0;
};

inline std::vector<CurvePoint> emit_curve(double x_min, double x_max, std::size_t samples,
                                          const std::vector<std::uint64_t>& term_counts = {10, 20}) {
    if (!(x_min > 0.0 && x_min < x_max && x_max < 1.0))
        throw std::domain_error("emit_curve: need 0 < x_min < x_max < 1");
    if (samples < 2) throw std::invalid_argument("emit_curve: samples must be >= 2");
    if (term_counts.empty())
        throw std::invalid_argument("emit_curve: need at least one term count");
    for (std::uint64_t t : term_counts)
        if (t < 1) throw std::invalid_argument("emit_curve: term counts must be >= 1");

    const double step = (x_max - x_min) / static_cast<double>(samples - 1);
    std::vector<CurvePoint> points;
    points.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        CurvePoint pt;
        pt.x = i + 1 == samples ? x_max : x_min + static_cast<double>(i) * step;
        for (std::uint64_t t : term_counts) pt.partials.push_back(partial_sum_f(pt.x, t));
        pt.lower = zeta2() / std::log(pt.x);
        pt.upper = pt.x / (pt.x - 1.0);
        points.push_back(std::move(pt));
    }
    return points;
}

// Numeric check of int_0^1 ln(1-u)/u du = -zeta(2). The integrand is split as
// ln(1-u)*(1-u)/u + ln(1-u); the second piece integrates to exactly -1, and
// the first is bounded at both endpoints, so the composite midpoint rule
// converges fast enough for a 1e-6 comparison.
struct QuadratureResult {
    double value = 0.0;
    double target = 0.0;
    double abs_err = 0.0;
};

inline QuadratureResult verify_integral_identity(std::size_t quadrature_points) {
    if (quadrature_points < 100)
        throw std::invalid_argument("verify_integral_identity: need >= 100 points");
    const double h = 1.0 / static_cast<double>(quadrature_points);
    double s = 0.0;
    for (std::size_t i = quadrature_points; i-- > 0;) {
        const double u = (static_cast<double>(i) + 0.5) * h;
        s += std::log1p(-u) * (1.0 - u) / u;
    }
    QuadratureResult r;
    r.value = s * h - 1.0;
    r.target = -zeta2();
    r.abs_err = std::abs(r.value - r.target);
    return r;
}

}  // namespace qseries
