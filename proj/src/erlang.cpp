#include "erlq/erlang.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "erlq/errors.hpp"
#include "erlq/quadrature.hpp"

namespace erlq {

namespace {

constexpr double kRelTol = 1e-12;
constexpr double kAbsTol = 1e-13;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// The summation routes walk 0..n; past this they would just burn time.
constexpr double kMaxIntegerServers = 1e9;

double log_add_exp(double a, double b) {
    if (a < b) {
        std::swap(a, b);
    }
    return a + std::log1p(std::exp(b - a));
}

// 1/B by the reciprocal recursion 1/B_k = 1 + (k/rho)/B_{k-1}. All terms are
// positive, so the linear-space loop is condition-1 (relative error ~sqrt(n)
// ulps); it is preferred whenever the value fits in double. Deep underload
// (1/B ~ n!/rho^n beyond double range) restarts in log space. Returns 1/B,
// or +inf with *log_inv_b holding log(1/B) when only the log fits.
double inv_b_integer(long long n, double rho, double* log_inv_b) {
    double inv_b = 1.0;
    long long k = 1;
    for (; k <= n; ++k) {
        inv_b = 1.0 + (static_cast<double>(k) / rho) * inv_b;
        if (inv_b > 1e300) {
            break;
        }
    }
    if (k > n) {
        *log_inv_b = std::log(inv_b);
        return inv_b;
    }
    double lb = 0.0;
    for (long long j = 1; j <= n; ++j) {
        lb = log_add_exp(0.0, std::log(static_cast<double>(j) / rho) + lb);
    }
    *log_inv_b = lb;
    return kInf;
}

long long integer_servers(const ServerCount& n, const char* who) {
    if (!n.is_integer) {
        throw DomainError(std::string(who) + ": this route needs an integer server count");
    }
    if (n.value > kMaxIntegerServers) {
        throw NumericError(std::string(who) + ": server count too large for the summation routes; use a quadrature method");
    }
    return std::llround(n.value);
}

quad::Result ib_quad(double n, double rho) {
    auto f = [n, rho](double s) {
        const double e = -rho * std::expm1(s) + n * s;
        return e < -745.0 ? 0.0 : std::exp(e);
    };
    // Positive integrand; only the relative tolerance is meaningful here
    // because the value spans hundreds of orders of magnitude across loads.
    return quad::semi_infinite(f, 0.0, kRelTol, 1e-300);
}

ErlangValue c_from_inv(double inv_c, Method m, double inv_c_err) {
    if (!(inv_c > 0.0)) {
        throw NumericError("erlang_c: 1/C lost all digits to cancellation at this load");
    }
    if (std::isinf(inv_c)) {
        // 1/C overflowed, so C underflows to an exact zero; the absolute
        // error of returning 0 is below any representable threshold.
        return {0.0, m, 0.0};
    }
    const double c = 1.0 / inv_c;
    return {c, m, c * c * inv_c_err + 4.0 * c * kEps};
}

ErlangValue c_direct_sum(ServerCount n, OfferedLoad rho) {
    const long long nn = integer_servers(n, "erlang_c[direct-sum]");
    const double r = rho.value;
    double ratio;  // (sum_{i<n} rho^i/i!) / (rho^n/n!)
    if (r <= 650.0) {
        // Terms top out at e^rho, so everything stays in range.
        double term = 1.0;
        double sum = 0.0;
        for (long long i = 0; i < nn; ++i) {
            sum += term;
            term *= r / static_cast<double>(i + 1);
        }
        ratio = sum / term;
    } else {
        const double lr = std::log(r);
        double lsum = 0.0;
        for (long long i = 1; i < nn; ++i) {
            lsum = log_add_exp(lsum, static_cast<double>(i) * lr - std::lgamma(static_cast<double>(i) + 1.0));
        }
        ratio = std::exp(lsum - (static_cast<double>(nn) * lr - std::lgamma(static_cast<double>(nn) + 1.0)));
    }
    const double inv_c = 1.0 + (1.0 - r / n.value) * ratio;
    return c_from_inv(inv_c, Method::DirectSum,
                      (2.0 * std::sqrt(static_cast<double>(nn)) + 4.0) * kEps * (1.0 + std::fabs(inv_c - 1.0)));
}

ErlangValue c_recursion(ServerCount n, OfferedLoad rho) {
    double bm1;  // 1/B - 1 >= 0
    if (n.is_integer && n.value <= kMaxIntegerServers) {
        double lb;
        const double ib = inv_b_integer(std::llround(n.value), rho.value, &lb);
        bm1 = std::isinf(ib) ? std::expm1(lb) : ib - 1.0;
    } else {
        const ErlangValue b = erlang_b(n, rho);
        bm1 = (1.0 - b.value) / b.value;
    }
    const double inv_c = 1.0 + (1.0 - rho.value / n.value) * bm1;
    return c_from_inv(inv_c, Method::Recursion,
                      (2.0 * std::sqrt(n.value) + 4.0) * kEps * (1.0 + std::fabs(inv_c - 1.0)));
}

ErlangValue c_quadrature_a(ServerCount n, OfferedLoad rho) {
    const double nv = n.value;
    const double r = rho.value;
    auto f = [nv, r](double v) {
        if (v <= 0.0) {
            return 0.0;
        }
        const double e = -r * v + (nv - 1.0) * std::log1p(v) + std::log(v);
        return e < -745.0 ? 0.0 : std::exp(e);
    };
    const auto q = quad::semi_infinite(f, 0.0, kRelTol, kAbsTol);
    return c_from_inv(r * q.value, Method::QuadratureA, r * q.abs_error);
}

ErlangValue c_quadrature_b(ServerCount n, OfferedLoad rho) {
    const auto q = ib_quad(n.value, rho.value);
    const double x = (n.value - rho.value) * q.value;
    return c_from_inv(1.0 + x, Method::QuadratureB,
                      std::fabs(n.value - rho.value) * q.abs_error + std::fabs(x) * 2.0 * kEps);
}

}  // namespace

OfferedLoad::OfferedLoad(double v) : value(v) {
    if (!std::isfinite(v) || v <= 0.0) {
        throw DomainError("offered load must be finite and positive");
    }
}

ServerCount::ServerCount(double n) : value(n), is_integer(false) {
    if (!std::isfinite(n) || n < 0.0) {
        throw DomainError("server count must be finite and non-negative");
    }
    is_integer = (n == std::floor(n)) && n <= 9.0e15;
}

const char* method_name(Method m) {
    switch (m) {
        case Method::DirectSum: return "direct-sum";
        case Method::Recursion: return "recursion";
        case Method::QuadratureA: return "quadrature-a";
        case Method::QuadratureB: return "quadrature-b";
    }
    return "?";
}

ErlangValue erlang_b(ServerCount n, OfferedLoad rho) {
    if (n.is_integer && n.value <= kMaxIntegerServers) {
        const long long nn = std::llround(n.value);
        double lb;
        const double ib = inv_b_integer(nn, rho.value, &lb);
        const double b = std::isinf(ib) ? std::exp(-lb) : 1.0 / ib;
        return {b, Method::Recursion, b * (2.0 * std::sqrt(static_cast<double>(nn)) + 4.0) * kEps};
    }
    // 1/B = rho * int_0^inf e^{-rho v} (1+v)^n dv, the continuous extension
    // to real server counts.
    const double nv = n.value;
    const double r = rho.value;
    auto f = [nv, r](double v) {
        const double e = -r * v + nv * std::log1p(v);
        return e < -745.0 ? 0.0 : std::exp(e);
    };
    const auto q = quad::semi_infinite(f, 0.0, kRelTol, kAbsTol);
    const double inv_b = r * q.value;
    const double b = 1.0 / inv_b;
    return {b, Method::QuadratureA, b * b * r * q.abs_error + 2.0 * b * kEps};
}

ErlangValue erlang_c(ServerCount n, OfferedLoad rho) {
    return erlang_c(n, rho, n.is_integer && n.value <= kMaxIntegerServers
                                ? Method::Recursion
                                : Method::QuadratureA);
}

ErlangValue erlang_c(ServerCount n, OfferedLoad rho, Method method) {
    if (n.value <= 0.0) {
        throw DomainError("erlang_c: server count must be positive");
    }
    switch (method) {
        case Method::DirectSum: return c_direct_sum(n, rho);
        case Method::Recursion: return c_recursion(n, rho);
        case Method::QuadratureA: return c_quadrature_a(n, rho);
        case Method::QuadratureB: return c_quadrature_b(n, rho);
    }
    throw DomainError("erlang_c: unknown method");
}

ErlangValue erlang_c_reciprocal_minus_one(ServerCount n, OfferedLoad rho) {
    if (n.value <= 0.0) {
        throw DomainError("erlang_c_reciprocal_minus_one: server count must be positive");
    }
    if (n.value == rho.value) {
        return {0.0, Method::QuadratureB, 0.0};
    }
    const auto q = ib_quad(n.value, rho.value);
    const double d = n.value - rho.value;
    return {d * q.value, Method::QuadratureB, std::fabs(d) * q.abs_error};
}

namespace detail {
double ib_integral(double n, double rho) {
    return ib_quad(n, rho).value;
}
}  // namespace detail

}  // namespace erlq
