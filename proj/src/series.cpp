#include "erlq/series.hpp"

#include <cmath>
#include <utility>

#include "erlq/errors.hpp"

namespace erlq {

namespace {

Rational factorial_r(int k) {
    boost::multiprecision::cpp_int f = 1;
    for (int i = 2; i <= k; ++i) {
        f *= i;
    }
    return Rational(f);
}

}  // namespace

double SeriesCoefficients::eval_poly(int i, double v) const {
    if (i < 0 || i > order) {
        throw DomainError("eval_poly: index outside the generated orders");
    }
    const auto& row = coeff[static_cast<size_t>(i)];
    double acc = 0.0;
    for (auto it = row.rbegin(); it != row.rend(); ++it) {
        acc = acc * v + it->convert_to<double>();
    }
    return acc;
}

double SeriesCoefficients::partial_sum(double v, double x, int k) const {
    if (k < 0 || k > order) {
        throw DomainError("partial_sum: k exceeds the generated order");
    }
    if (!(x > 0.0)) {
        throw DomainError("partial_sum: x must be positive");
    }
    const double rsx = 1.0 / std::sqrt(x);
    double scale = 1.0;
    double sum = 0.0;
    for (int i = 0; i <= k; ++i) {
        sum += eval_poly(i, v) * scale;
        scale *= rsx;
    }
    return sum;
}

SeriesCoefficients varphi_series(int k) {
    if (k < 0 || k > kSeriesMaxOrder) {
        throw DomainError("varphi_series: order must be in [0, 12]");
    }
    // exp(sum g_m) with monomials g_m = (-1)^{m-1} v^{m+2}/(m+2)! satisfies
    // a_n = (1/n) sum_{m=1}^{n} m g_m a_{n-m}, a_0 = 1; every coefficient is
    // an exact rational, so the recurrence runs in cpp_rational throughout.
    std::vector<std::vector<Rational>> a(static_cast<size_t>(k) + 1);
    a[0] = {Rational(1)};
    for (int n = 1; n <= k; ++n) {
        std::vector<Rational> acc(static_cast<size_t>(3 * n) + 1, Rational(0));
        for (int m = 1; m <= n; ++m) {
            Rational c = Rational(m) / factorial_r(m + 2);
            if (m % 2 == 0) {
                c = -c;
            }
            const auto& prev = a[static_cast<size_t>(n - m)];
            for (size_t d = 0; d < prev.size(); ++d) {
                acc[d + static_cast<size_t>(m) + 2] += c * prev[d];
            }
        }
        for (auto& q : acc) {
            q /= n;
        }
        a[static_cast<size_t>(n)] = std::move(acc);
    }
    return {k, std::move(a)};
}

double varphi_eval(double v, double x) {
    if (!std::isfinite(v) || !std::isfinite(x) || x <= 0.0) {
        throw DomainError("varphi_eval: need finite v and x > 0");
    }
    const double t = v / std::sqrt(x);
    double expo;
    if (std::fabs(t) <= 0.5) {
        // v^2/2 and x(e^{-t} + t - 1) agree through O(t^2), so subtracting
        // them directly wastes ~t digits; sum the surviving series
        //   exponent = x t^3 sum_{j>=0} (-t)^j/(j+3)!
        // whose terms shrink by at least t/4 each step.
        double sum = 0.0;
        double term = 1.0 / 6.0;
        for (int j = 1; j <= 80; ++j) {
            sum += term;
            term *= -t / static_cast<double>(j + 3);
            if (std::fabs(term) < 1e-19 * std::fabs(sum)) {
                break;
            }
        }
        expo = (v * v * v / std::sqrt(x)) * sum;
    } else {
        expo = 0.5 * v * v - x * (std::expm1(-t) + t);
    }
    return std::exp(expo);
}

}  // namespace erlq
