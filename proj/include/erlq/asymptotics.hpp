#pragma once

#include <optional>
#include <string>
#include <vector>

namespace erlq {

// One term of a staffing rule: coef * rho^exponent.
struct RuleTerm {
    double coef;
    double exponent;
};

// A square-root-style staffing rule
//   N(rho) = rho + sum_j coef_j * rho^{exponent_j},
// with exponents strictly decreasing and each in [0, 1) (the rule must stay
// sublinear so N(rho)/rho -> 1). Terms with coef == 0 are dropped on
// construction; an empty term list is legal and means N(rho) = rho.
struct StaffingRule {
    std::vector<RuleTerm> terms;
    explicit StaffingRule(std::vector<RuleTerm> t);
    double servers_for(double rho) const;
};

// The five limiting regimes, keyed on the leading term (c*, alpha*) of the
// rule: alpha* > 1/2 sends the centered load to +-infinity (Omega kinds,
// by the sign of c*), alpha* == 1/2 pins it at a finite z (Theta kinds),
// and alpha* < 1/2 (or no terms at all) leaves the system critically loaded
// (Balanced).
enum class RegimeKind {
    OverloadedOmega,
    OverloadedTheta,
    Balanced,
    UnderloadedTheta,
    UnderloadedOmega,
};

const char* regime_name(RegimeKind k);

struct RegimeClass {
    RegimeKind kind;
    double z;  // -c* for the Theta kinds; 0 otherwise
};

// Classify a staffing rule. z is reported as -c*, the limit of
// (rho - N(rho)) / sqrt(rho); normalizing by sqrt(N) instead changes nothing
// in the limit since N/rho -> 1.
RegimeClass classify(const StaffingRule& rule);

// Which closed form produced a limit value; Infinity marks the one regime
// whose Erlang C limit is +infinity (reported via is_infinite, never as a
// floating-point overflow).
enum class ClosedForm {
    Infinity,
    OneMinusXiInverse,  // (1 - xi(z))^{-1}
    One,
    Zero,
    DelayForm,          // (1 + sqrt(theta/mu))^{-1} or the two-sided xi ratio
};

struct LimitResult {
    double value;       // meaningless when is_infinite
    bool is_infinite;
    ClosedForm form;
};

// Limit of the Erlang C delay probability along the rule's regime.
LimitResult limit_erlang_c(const RegimeClass& r);

// Queue parameters for the abandonment-model limit; theta is required there
// and ignored by limit_erlang_c.
struct QueueModel {
    double mu;
    std::optional<double> theta;
};

// Limit of the M/M/n+M delay probability: 1 in the overloaded Omega regime,
// (1 + sqrt(theta/mu))^{-1} when balanced, 0 when underloaded Omega, and
// (1 - xi(z)/xi(-z sqrt(mu/theta)))^{-1} in the Theta regimes.
LimitResult limit_delay_probability(const RegimeClass& r, const QueueModel& m);

enum class StudyTarget { ErlangC, DelayProbability };

struct ConvergenceRecord {
    double lambda;
    double rho;
    double n;             // servers the rule assigned (possibly rounded)
    double finite_value;  // NaN when the row failed
    LimitResult limit;
    double abs_error;     // |finite - limit|; +inf against an infinite limit
    bool ok;
    std::string message;  // diagnostic for failed rows, empty otherwise
};

struct StudyOptions {
    bool round_n = false;  // round N(rho) to the nearest integer >= 1
};

// Evaluate the finite-system measure along the rule at each lambda and set
// it against the regime limit. Rows come back sorted by lambda; a row whose
// finite evaluation throws is flagged (ok = false, diagnostic message) and
// does not abort the rest of the study.
std::vector<ConvergenceRecord> run_convergence_study(
    const StaffingRule& rule, const QueueModel& model,
    std::vector<double> lambdas, StudyTarget target, StudyOptions opts = {});

}  // namespace erlq
