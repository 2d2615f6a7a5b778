#pragma once

namespace erlq::normal {

// Working range shared by all routines here. Outside |x| <= kXMax the tail
// quantities underflow past what the downstream formulas can use, so rather
// than return garbage we refuse the input.
inline constexpr double kXMax = 30.0;

// Standard normal density. Accurate to ~1 ulp in relative terms even deep in
// the tail, where naive exp(-x*x/2) loses digits to the rounding of x*x.
double phi(double x);

// Upper tail probability P(Z > x). Relative accuracy ~1e-15 across the whole
// working range, including x near +30 where the value is ~5e-198.
double phi_c(double x);

// xi(x) = x * phi_c(x) / phi(x). Strictly increasing, xi(0) == 0 exactly,
// xi(x) -> 1 as x -> +inf and diverges to -inf on the left. Relative accuracy
// ~1e-13 on [-8, 8] and ~1e-10 out to +-30.
double xi(double x);

// eta(x) = (1 + x^2) phi_c(x) - x phi(x), the derivative of xi scaled by
// phi: xi'(x) = eta(x) / phi(x). Positive everywhere, eta(0) = 1/2.
double eta(double x);

}  // namespace erlq::normal
