#include "erlq/bd_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "erlq/errors.hpp"

namespace erlq {

namespace {

constexpr double kTailTarget = 1e-12;
constexpr int kHardCap = 1 << 24;  // ~16.7M states; beyond this we refuse

void validate(const BirthDeathSpec& s) {
    if (!std::isfinite(s.arrival) || s.arrival <= 0.0) {
        throw DomainError("birth-death: arrival rate must be finite and positive");
    }
    if (!std::isfinite(s.service) || s.service <= 0.0) {
        throw DomainError("birth-death: service rate must be finite and positive");
    }
    if (s.servers < 1) {
        throw DomainError("birth-death: need at least one server");
    }
    if (!std::isfinite(s.abandonment) || s.abandonment < 0.0) {
        throw DomainError("birth-death: abandonment rate must be finite and non-negative");
    }
    if (s.abandonment == 0.0 && s.arrival >= s.servers * s.service) {
        throw DomainError("birth-death: chain is unstable without abandonment (arrival >= servers * service)");
    }
}

double death_rate(const BirthDeathSpec& s, long long i) {
    const double busy = std::min<double>(static_cast<double>(i), s.servers);
    const double waiting = std::max<double>(static_cast<double>(i - s.servers), 0.0);
    return busy * s.service + waiting * s.abandonment;
}

struct Kahan {
    double sum = 0.0;
    double carry = 0.0;
    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

struct Solved {
    std::vector<double> pi;
    double tail;
};

Solved solve(const BirthDeathSpec& s, int cap) {
    // Product form: log pi_i = log pi_0 + sum_{k<=i} log(arrival/d_k),
    // normalized by log-sum-exp so deep tails cannot underflow the weights.
    std::vector<double> lw(static_cast<size_t>(cap) + 1);
    lw[0] = 0.0;
    for (int i = 1; i <= cap; ++i) {
        lw[i] = lw[i - 1] + std::log(s.arrival / death_rate(s, i));
    }
    const double top = *std::max_element(lw.begin(), lw.end());
    Kahan z;
    for (double w : lw) {
        z.add(std::exp(w - top));
    }
    std::vector<double> pi(lw.size());
    for (size_t i = 0; i < lw.size(); ++i) {
        pi[i] = std::exp(lw[i] - top) / z.sum;
    }
    // Geometric bound on the dropped mass: beyond cap the death rates only
    // grow, so pi_{cap+j} <= pi_cap r^j with r = arrival/d_{cap+1}.
    const double r = s.arrival / death_rate(s, cap + 1);
    const double tail = r < 1.0 ? pi[cap] * r / (1.0 - r) : 1.0;
    return {std::move(pi), tail};
}

}  // namespace

int default_truncation(const BirthDeathSpec& s) {
    validate(s);
    const double denom = std::max(s.abandonment, s.service);
    const double extra = std::ceil(20.0 * std::sqrt(s.arrival / denom) +
                                   20.0 * s.arrival / (s.servers * s.service));
    return s.servers + static_cast<int>(extra);
}

SteadyState steady_state(const BirthDeathSpec& s) {
    validate(s);
    if (s.truncation > 0) {
        Solved sol = solve(s, s.truncation);
        if (sol.tail > kTailTarget) {
            throw NumericError("birth-death: state cap K=" + std::to_string(s.truncation) +
                                   " leaves estimated tail mass " + std::to_string(sol.tail) +
                                   "; increase K",
                               sol.tail);
        }
        return {std::move(sol.pi), sol.tail, s.truncation};
    }
    int cap = default_truncation(s);
    while (true) {
        Solved sol = solve(s, cap);
        if (sol.tail <= kTailTarget) {
            return {std::move(sol.pi), sol.tail, cap};
        }
        if (cap >= kHardCap) {
            throw NumericError("birth-death: tail mass still above 1e-12 at the hard state cap",
                               sol.tail);
        }
        cap = std::min(kHardCap, 2 * cap);
    }
}

double delay_probability_from_pi(const BirthDeathSpec& s, const SteadyState& st) {
    if (st.pi.size() <= static_cast<size_t>(s.servers)) {
        throw DomainError("birth-death: steady state is truncated below the server count");
    }
    // Sum the waiting states smallest-first (the tail decays), compensated.
    Kahan p;
    for (size_t i = st.pi.size(); i-- > static_cast<size_t>(s.servers);) {
        p.add(st.pi[i]);
    }
    return p.sum;
}

}  // namespace erlq
