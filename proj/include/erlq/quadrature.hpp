#pragma once

#include <functional>

namespace erlq::quad {

struct Result {
    double value;
    double abs_error;  // backend's estimate of the absolute error
};

// Adaptive Gauss-Kronrod on [a, b]. Throws NumericError when the error
// estimate satisfies neither abs_tol nor rel_tol * |value|, or when the
// integrand produced a non-finite value.
Result finite(const std::function<double(double)>& f, double a, double b,
              double rel_tol, double abs_tol);

// exp-sinh rule on [a, +inf) for integrands decaying towards infinity.
// Same error contract as finite().
Result semi_infinite(const std::function<double(double)>& f, double a,
                     double rel_tol, double abs_tol);

// tanh-sinh rule on [a, b] for integrands with an integrable endpoint
// singularity (e.g. w^{p-1} with 0 < p < 1 at w = 0). Same error contract.
Result finite_singular(const std::function<double(double)>& f, double a,
                       double b, double rel_tol, double abs_tol);

}  // namespace erlq::quad
