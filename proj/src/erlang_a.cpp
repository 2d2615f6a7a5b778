#include "erlq/erlang_a.hpp"

#include <cmath>
#include <vector>

#include "erlq/errors.hpp"
#include "erlq/quadrature.hpp"

namespace erlq {

namespace {

constexpr double kRelTol = 1e-12;

void require_positive_servers(const ServerCount& n, const char* who) {
    if (n.value <= 0.0) {
        throw DomainError(std::string(who) + ": server count must be positive");
    }
}

quad::Result j_quad(double n, double rho, double mu, double theta) {
    const double a = mu * rho / theta;
    const double b = n * mu / theta;
    // After u = theta x the integral is (1/theta) int_0^inf e^{a(1-e^{-u}) - b u} du.
    auto f = [a, b](double u) {
        const double e = -a * std::expm1(-u) - b * u;
        return e < -745.0 ? 0.0 : std::exp(e);
    };
    const auto r = quad::semi_infinite(f, 0.0, kRelTol, 1e-300);
    return {r.value / theta, r.abs_error / theta};
}

}  // namespace

AbandonmentModel::AbandonmentModel(double mu_, double theta_) : mu(mu_), theta(theta_) {
    if (!std::isfinite(mu) || mu <= 0.0) {
        throw DomainError("service rate mu must be finite and positive");
    }
    if (!std::isfinite(theta) || theta <= 0.0) {
        throw DomainError("abandonment rate theta must be finite and positive");
    }
}

double j_integral(ServerCount n, OfferedLoad rho, const AbandonmentModel& m) {
    require_positive_servers(n, "j_integral");
    return j_quad(n.value, rho.value, m.mu, m.theta).value;
}

double scaled_j(ServerCount n, OfferedLoad rho, const AbandonmentModel& m) {
    require_positive_servers(n, "scaled_j");
    const double a = m.mu * rho.value / m.theta;
    const double b = n.value * m.mu / m.theta;
    // mu (n - rho) J = 1 - a I with I = int_0^1 e^{a(1-w)} w^{b-1} (1-w) dw.
    // The substitution puts the algebraic factor at w = 0. Unless b - 1 is an
    // integer, w^{b-1} has unbounded higher derivatives there (and blows up
    // integrably when b < 1), so use the tanh-sinh rule throughout: it absorbs
    // endpoint singularities of this kind and is exact-fast on smooth cases.
    auto g = [a, b](double w) {
        if (w <= 0.0 || w >= 1.0) {
            return 0.0;
        }
        const double e = a * (1.0 - w) + (b - 1.0) * std::log(w);
        if (e < -745.0) {
            return 0.0;
        }
        return std::exp(e) * (1.0 - w);
    };
    const auto I = quad::finite_singular(g, 0.0, 1.0, kRelTol, 1e-15);
    return 1.0 - a * I.value;
}

DelayProbability delay_probability(ServerCount n, OfferedLoad rho,
                                   const AbandonmentModel& m) {
    require_positive_servers(n, "delay_probability");
    const double c1 = erlang_c_reciprocal_minus_one(n, rho).value;
    const double sj = scaled_j(n, rho, m);
    double ratio;
    if (std::fabs(sj) < 1e-6) {
        // c1 and sj share the (n - rho) root, so their ratio has a removable
        // singularity at n == rho; take the ratio of the base integrals,
        // which is exactly c1/sj with the common factor cancelled.
        ratio = detail::ib_integral(n.value, rho.value) / (m.mu * j_integral(n, rho, m));
    } else {
        ratio = c1 / sj;
    }
    return {1.0 / (1.0 + ratio), c1, sj};
}

double state_probability(int i, ServerCount n, OfferedLoad rho,
                         const AbandonmentModel& m) {
    if (!n.is_integer || n.value <= 0.0) {
        throw DomainError("state_probability: server count must be a positive integer");
    }
    if (n.value > 1e8) {
        throw NumericError("state_probability: server count too large for the state sum");
    }
    const long long nn = std::llround(n.value);
    if (i < 0 || i >= nn) {
        throw DomainError("state_probability: state index must satisfy 0 <= i < n");
    }
    // p_i ~ rho^i/i! for i < n; all waiting states aggregate to the single
    // mass (rho^n/n!) n mu J, so the normalizer has n + 1 log-space terms.
    const double lr = std::log(rho.value);
    const double lwait = static_cast<double>(nn) * lr - std::lgamma(static_cast<double>(nn) + 1.0) +
                         std::log(n.value * m.mu * j_integral(n, rho, m));
    double lse = 0.0;  // k = 0 term
    for (long long k = 1; k < nn; ++k) {
        const double t = static_cast<double>(k) * lr - std::lgamma(static_cast<double>(k) + 1.0);
        const double hi = std::max(lse, t);
        lse = hi + std::log1p(std::exp(std::min(lse, t) - hi));
    }
    {
        const double hi = std::max(lse, lwait);
        lse = hi + std::log1p(std::exp(std::min(lse, lwait) - hi));
    }
    return std::exp(static_cast<double>(i) * lr - std::lgamma(static_cast<double>(i) + 1.0) - lse);
}

}  // namespace erlq
