#pragma once

#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace erlq {

using Rational = boost::multiprecision::cpp_rational;

inline constexpr int kSeriesMaxOrder = 12;

// Exact coefficient polynomials a_0, ..., a_order of the expansion
//   varphi(v; x) = exp(v^2/2 - x(e^{-v/sqrt(x)} + v/sqrt(x) - 1))
//               = sum_i a_i(v) x^{-i/2},
// the correction factor that links the fixed-n tail integrand to the normal
// density. coeff[i][d] multiplies v^d in a_i; a_0 = 1 and deg a_i = 3i.
struct SeriesCoefficients {
    int order;
    std::vector<std::vector<Rational>> coeff;

    // a_i evaluated at v in double arithmetic.
    double eval_poly(int i, double v) const;

    // sum_{i<=k} a_i(v) x^{-i/2}; requires k <= order.
    double partial_sum(double v, double x, int k) const;
};

// Build the polynomials by the exponential-of-series recurrence
//   a_n = (1/n) sum_{m=1}^{n} m g_m a_{n-m},  g_m = (-1)^{m-1} v^{m+2}/(m+2)!,
// entirely in exact rational arithmetic. k must be in [0, kSeriesMaxOrder].
SeriesCoefficients varphi_series(int k);

// varphi(v; x) itself, evaluated directly (x > 0). The exponent is summed as
// a cancellation-free power series when |v|/sqrt(x) is small, so the result
// stays accurate to ~1e-15 relative even when the exponent is ~1e-4.
double varphi_eval(double v, double x);

}  // namespace erlq
