#pragma once

namespace erlq {

// Offered load rho = lambda / mu in Erlangs. Must be finite and positive.
struct OfferedLoad {
    double value;
    explicit OfferedLoad(double v);
};

// Number of servers. Real values are meaningful throughout (the integral
// representations extend the factorials continuously); n == 0 is accepted
// only where it makes sense (the loss system). is_integer records whether n
// is an exact integer, which selects the default computation route.
struct ServerCount {
    double value;
    bool is_integer;
    explicit ServerCount(double n);
};

// Computation routes for the delay probability. All agree to ~1e-10
// absolutely on overlapping domains; DirectSum requires integer n.
enum class Method {
    DirectSum,     // log-space partial sums of the defining ratio (integer n)
    Recursion,     // via the loss probability and the B <-> C identity
    QuadratureA,   // single integral for 1/C, valid for real n
    QuadratureB,   // 1/C = 1 + (n - rho) * I with I a positive integral
};

const char* method_name(Method m);

struct ErlangValue {
    double value;
    Method method;          // route that actually produced the value
    double est_abs_error;   // coarse forward-error bound
};

// Blocking probability of the M/M/n loss system (Erlang B). Integer n uses
// the exact reciprocal recursion in log space; real n uses the integral
// 1/B = rho * int_0^inf e^{-rho v} (1+v)^n dv. n == 0 returns exactly 1.
ErlangValue erlang_b(ServerCount n, OfferedLoad rho);

// Delay probability of the M/M/n queue (Erlang C). Defined for all rho > 0,
// n > 0 (no stability requirement; the value exceeds 1 when rho > n, with
// C == 1 exactly at rho == n). Defaults: integer n -> Recursion, real n ->
// QuadratureA.
ErlangValue erlang_c(ServerCount n, OfferedLoad rho);
ErlangValue erlang_c(ServerCount n, OfferedLoad rho, Method method);

// 1/C - 1 = (n - rho) * int_0^inf exp(-rho(e^s - 1) + n s) ds, computed so
// the result carries the exact sign of n - rho (zero at n == rho). This is
// the numerically safe object near critical load, where C itself is ~1 and
// the subtraction 1/C - 1 would cancel.
ErlangValue erlang_c_reciprocal_minus_one(ServerCount n, OfferedLoad rho);

namespace detail {
// int_0^inf exp(-rho(e^s - 1) + n s) ds, the positive factor shared by
// erlang_c_reciprocal_minus_one and the abandonment-model delay formula.
double ib_integral(double n, double rho);
}  // namespace detail

}  // namespace erlq
