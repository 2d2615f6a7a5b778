#pragma once

#include "erlq/erlang.hpp"

namespace erlq {

// Service and abandonment rates of the M/M/n+M queue. Both finite, > 0.
struct AbandonmentModel {
    double mu;
    double theta;
    AbandonmentModel(double mu, double theta);
};

// J = int_0^inf exp((mu rho / theta)(1 - e^{-theta x}) - n mu x) dx, the
// expected-workload integral of the abandonment model. Always finite and
// positive for theta > 0.
double j_integral(ServerCount n, OfferedLoad rho, const AbandonmentModel& m);

// mu (n - rho) J, evaluated from the finite-interval representation
//   mu (n - rho) J = 1 - a * int_0^1 e^{a(1-w)} w^{b-1} (1 - w) dw,
// a = mu rho / theta, b = n mu / theta, which avoids the explicit (n - rho)
// prefactor and so keeps full accuracy near critical load. Carries the sign
// of n - rho (negative when n < rho, exactly 0 at n == rho) and is strictly
// increasing in n.
double scaled_j(ServerCount n, OfferedLoad rho, const AbandonmentModel& m);

struct DelayProbability {
    double value;               // P(wait > 0)
    double c_recip_minus_one;   // (n - rho) * I, see erlang_c_reciprocal_minus_one
    double scaled_j;            // mu (n - rho) J
};

// Delay probability of the M/M/n+M queue,
//   P = (1 + (1/C - 1) / (mu (n - rho) J))^{-1}.
// The two signed factors share the (n - rho) root, so the ratio is positive
// and the 0/0 at n == rho is removable; near that point the ratio is formed
// directly from the two positive base integrals instead.
DelayProbability delay_probability(ServerCount n, OfferedLoad rho,
                                   const AbandonmentModel& m);

// Stationary probability of i busy servers (i < n), integer n only:
//   p_i proportional to rho^i / i!  for i < n, closed with the n mu J mass of
// the waiting states. Together with delay_probability these satisfy
// sum_{i<n} p_i = 1 - P.
double state_probability(int i, ServerCount n, OfferedLoad rho,
                         const AbandonmentModel& m);

}  // namespace erlq
