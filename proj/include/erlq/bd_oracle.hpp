#pragma once

#include <vector>

namespace erlq {

// An M/M/n queue with optional abandonment, described directly as a
// birth-death chain: birth rate arrival in every state, death rate
// min(i, servers) * service + max(i - servers, 0) * abandonment in state i.
// This is the model-level ground truth the closed formulas are checked
// against; it shares no code with the formula paths.
struct BirthDeathSpec {
    double arrival;
    double service;
    int servers;
    double abandonment = 0.0;  // 0 means no abandonment (plain M/M/n)
    int truncation = 0;        // state cap K; <= 0 picks and grows a default
};

struct SteadyState {
    std::vector<double> pi;  // pi[0..K], normalized to sum exactly 1
    double tail_mass;        // geometric bound on the mass beyond K
    int truncation;          // the K actually used
};

// Default state cap heuristic. Used as the starting point when the caller
// leaves truncation unset; steady_state then doubles it until the tail bound
// is below 1e-12.
int default_truncation(const BirthDeathSpec& s);

// Stationary distribution by the product form pi_i ~ prod arrival/d_k,
// accumulated in log space and normalized with log-sum-exp. Throws
// DomainError for invalid rates or an unstable chain (abandonment == 0 and
// arrival >= servers * service), and NumericError when a caller-pinned
// truncation leaves tail mass above 1e-12 (the message advises a larger K).
SteadyState steady_state(const BirthDeathSpec& s);

// P(wait > 0) = sum of pi_i over i >= servers.
double delay_probability_from_pi(const BirthDeathSpec& s, const SteadyState& st);

}  // namespace erlq
