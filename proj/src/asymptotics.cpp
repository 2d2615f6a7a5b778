#include "erlq/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "erlq/erlang.hpp"
#include "erlq/erlang_a.hpp"
#include "erlq/errors.hpp"
#include "erlq/normal.hpp"

namespace erlq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

void validate_model(const QueueModel& m, bool need_theta) {
    if (!std::isfinite(m.mu) || m.mu <= 0.0) {
        throw DomainError("queue model: service rate mu must be finite and positive");
    }
    if (need_theta) {
        if (!m.theta) {
            throw DomainError("queue model: the abandonment-model limit needs theta");
        }
        if (!std::isfinite(*m.theta) || *m.theta <= 0.0) {
            throw DomainError("queue model: abandonment rate theta must be finite and positive");
        }
    }
}

}  // namespace

StaffingRule::StaffingRule(std::vector<RuleTerm> t) {
    double prev = 1.0;  // exponents must stay strictly below this
    for (const RuleTerm& term : t) {
        if (!std::isfinite(term.coef) || !std::isfinite(term.exponent)) {
            throw DomainError("staffing rule: terms must be finite");
        }
        if (term.exponent < 0.0 || term.exponent >= 1.0) {
            throw DomainError("staffing rule: exponents must lie in [0, 1) so the rule stays sublinear");
        }
        if (term.exponent >= prev) {
            throw DomainError("staffing rule: exponents must be strictly decreasing");
        }
        prev = term.exponent;
        if (term.coef != 0.0) {
            terms.push_back(term);
        }
    }
}

double StaffingRule::servers_for(double rho) const {
    double n = rho;
    for (const RuleTerm& term : terms) {
        n += term.coef * std::pow(rho, term.exponent);
    }
    return n;
}

const char* regime_name(RegimeKind k) {
    switch (k) {
        case RegimeKind::OverloadedOmega: return "overloaded-omega";
        case RegimeKind::OverloadedTheta: return "overloaded-theta";
        case RegimeKind::Balanced: return "balanced";
        case RegimeKind::UnderloadedTheta: return "underloaded-theta";
        case RegimeKind::UnderloadedOmega: return "underloaded-omega";
    }
    return "?";
}

RegimeClass classify(const StaffingRule& rule) {
    // Only the leading term matters: the staffing gap N - rho is c* rho^{a*}
    // (1 + o(1)), so a* > 1/2 sends (rho - N)/sqrt(rho) to +-infinity,
    // a* == 1/2 pins it at z = -c*, and anything smaller vanishes against
    // sqrt(rho). Normalizing by sqrt(N) instead gives the same limit since
    // N/rho -> 1 for every admissible rule.
    if (rule.terms.empty()) {
        return {RegimeKind::Balanced, 0.0};
    }
    const RuleTerm& lead = rule.terms.front();
    if (lead.exponent > 0.5) {
        return {lead.coef < 0.0 ? RegimeKind::OverloadedOmega : RegimeKind::UnderloadedOmega, 0.0};
    }
    if (lead.exponent == 0.5) {
        const double z = -lead.coef;
        return {z > 0.0 ? RegimeKind::OverloadedTheta : RegimeKind::UnderloadedTheta, z};
    }
    return {RegimeKind::Balanced, 0.0};
}

LimitResult limit_erlang_c(const RegimeClass& r) {
    switch (r.kind) {
        case RegimeKind::OverloadedOmega:
            return {kInf, true, ClosedForm::Infinity};
        case RegimeKind::OverloadedTheta:
        case RegimeKind::UnderloadedTheta:
            return {1.0 / (1.0 - normal::xi(r.z)), false, ClosedForm::OneMinusXiInverse};
        case RegimeKind::Balanced:
            return {1.0, false, ClosedForm::One};
        case RegimeKind::UnderloadedOmega:
            return {0.0, false, ClosedForm::Zero};
    }
    throw DomainError("limit_erlang_c: unknown regime");
}

LimitResult limit_delay_probability(const RegimeClass& r, const QueueModel& m) {
    validate_model(m, true);
    const double theta = *m.theta;
    switch (r.kind) {
        case RegimeKind::OverloadedOmega:
            return {1.0, false, ClosedForm::One};
        case RegimeKind::OverloadedTheta:
        case RegimeKind::UnderloadedTheta: {
            // xi(z) and xi(-z sqrt(mu/theta)) have opposite signs, so the
            // denominator exceeds 1 and the limit sits strictly inside (0,1).
            const double zhat = r.z * std::sqrt(m.mu / theta);
            return {1.0 / (1.0 - normal::xi(r.z) / normal::xi(-zhat)), false,
                    ClosedForm::DelayForm};
        }
        case RegimeKind::Balanced:
            return {1.0 / (1.0 + std::sqrt(theta / m.mu)), false, ClosedForm::DelayForm};
        case RegimeKind::UnderloadedOmega:
            return {0.0, false, ClosedForm::Zero};
    }
    throw DomainError("limit_delay_probability: unknown regime");
}

std::vector<ConvergenceRecord> run_convergence_study(
    const StaffingRule& rule, const QueueModel& model,
    std::vector<double> lambdas, StudyTarget target, StudyOptions opts) {
    validate_model(model, target == StudyTarget::DelayProbability);
    if (lambdas.empty()) {
        throw DomainError("convergence study: need at least one lambda");
    }
    std::sort(lambdas.begin(), lambdas.end());
    const RegimeClass rc = classify(rule);
    const LimitResult lim = target == StudyTarget::ErlangC
                                ? limit_erlang_c(rc)
                                : limit_delay_probability(rc, model);
    std::vector<ConvergenceRecord> out;
    out.reserve(lambdas.size());
    for (double lambda : lambdas) {
        ConvergenceRecord rec{lambda, kNaN, kNaN, kNaN, lim, kNaN, false, ""};
        try {
            if (!std::isfinite(lambda) || lambda <= 0.0) {
                throw DomainError("lambda must be finite and positive");
            }
            rec.rho = lambda / model.mu;
            double servers = rule.servers_for(rec.rho);
            if (opts.round_n) {
                servers = std::max(1.0, std::round(servers));
            }
            rec.n = servers;
            const ServerCount n(servers);
            const OfferedLoad rho(rec.rho);
            rec.finite_value = target == StudyTarget::ErlangC
                                   ? erlang_c(n, rho).value
                                   : delay_probability(n, rho, AbandonmentModel(model.mu, *model.theta)).value;
            rec.abs_error = lim.is_infinite ? kInf : std::fabs(rec.finite_value - lim.value);
            rec.ok = true;
        } catch (const std::exception& e) {
            rec.finite_value = kNaN;
            rec.abs_error = kNaN;
            rec.ok = false;
            rec.message = e.what();
        }
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace erlq
