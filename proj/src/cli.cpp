#include "erlq/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "erlq/asymptotics.hpp"
#include "erlq/bd_oracle.hpp"
#include "erlq/erlang.hpp"
#include "erlq/erlang_a.hpp"
#include "erlq/errors.hpp"
#include "erlq/normal.hpp"

namespace erlq {

namespace {

// Raised for malformed flag payloads we parse ourselves (term/range syntax);
// mapped to the usage exit code like CLI11's own parse errors.
struct UsageError {
    std::string message;
};

std::string fmt(double v) {
    if (std::isnan(v)) {
        return "NA";
    }
    if (std::isinf(v)) {
        return v > 0.0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_limit(const LimitResult& lim) {
    return lim.is_infinite ? "inf" : fmt(lim.value);
}

double parse_num(const std::string& s, const char* what) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
        throw UsageError{std::string(what) + ": '" + s + "' is not a number"};
    }
    return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    size_t pos = 0;
    while (true) {
        const size_t next = s.find(sep, pos);
        parts.push_back(s.substr(pos, next - pos));
        if (next == std::string::npos) {
            return parts;
        }
        pos = next + 1;
    }
}

StaffingRule parse_rule(const std::vector<std::string>& term_flags) {
    std::vector<RuleTerm> terms;
    for (const std::string& t : term_flags) {
        const auto parts = split(t, ':');
        if (parts.size() != 2) {
            throw UsageError{"--term expects coef:exponent, got '" + t + "'"};
        }
        terms.push_back({parse_num(parts[0], "--term coefficient"),
                         parse_num(parts[1], "--term exponent")});
    }
    return StaffingRule(std::move(terms));
}

struct Range {
    double start;
    double stop;
    double step;
};

Range parse_range(const std::string& s, const char* flag) {
    const auto parts = split(s, ':');
    if (parts.size() != 3) {
        throw UsageError{std::string(flag) + " expects start:stop:step, got '" + s + "'"};
    }
    Range r{parse_num(parts[0], flag), parse_num(parts[1], flag), parse_num(parts[2], flag)};
    if (!(r.step > 0.0)) {
        throw UsageError{std::string(flag) + ": step must be positive"};
    }
    if (r.start > r.stop) {
        throw UsageError{std::string(flag) + ": start must not exceed stop"};
    }
    return r;
}

std::vector<double> grid_points(const Range& r) {
    // start == stop is the degenerate convention: a single point.
    std::vector<double> g;
    const double span = r.stop - r.start;
    const long long count = static_cast<long long>(std::floor(span / r.step + 1e-9)) + 1;
    g.reserve(static_cast<size_t>(count));
    const double last = r.start + static_cast<double>(count - 1) * r.step;
    for (long long i = 0; i < count; ++i) {
        // Interpolate between the ends with integer weights instead of
        // accumulating steps, so a symmetric grid like -3:3:0.05 hits 0 (and
        // the endpoints) exactly.
        const double z = count == 1
                             ? r.start
                             : (r.start * static_cast<double>(count - 1 - i) +
                                last * static_cast<double>(i)) /
                                   static_cast<double>(count - 1);
        g.push_back(z);
    }
    return g;
}

struct ExactArgs {
    double n = 0.0;
    double rho = 0.0;
    double mu = 0.0;
    double theta = 0.0;
    bool has_model = false;
    std::string method;
};

void run_exact(const ExactArgs& a, std::ostream& out) {
    const ServerCount n(a.n);
    const OfferedLoad rho(a.rho);
    const ErlangValue b = erlang_b(n, rho);
    out << "B = " << fmt(b.value) << " (method=" << method_name(b.method)
        << ", est_abs_error=" << fmt(b.est_abs_error) << ")\n";
    ErlangValue c{};
    if (a.method.empty()) {
        c = erlang_c(n, rho);
    } else {
        Method m;
        if (a.method == "direct-sum") {
            m = Method::DirectSum;
        } else if (a.method == "recursion") {
            m = Method::Recursion;
        } else if (a.method == "quadrature-a") {
            m = Method::QuadratureA;
        } else if (a.method == "quadrature-b") {
            m = Method::QuadratureB;
        } else {
            throw UsageError{"--method must be one of direct-sum, recursion, quadrature-a, quadrature-b"};
        }
        c = erlang_c(n, rho, m);
    }
    out << "C = " << fmt(c.value) << " (method=" << method_name(c.method)
        << ", est_abs_error=" << fmt(c.est_abs_error) << ")\n";
    if (a.has_model) {
        const AbandonmentModel m(a.mu, a.theta);
        const DelayProbability p = delay_probability(n, rho, m);
        out << "P = " << fmt(p.value) << "\n";
        out << "J = " << fmt(j_integral(n, rho, m)) << "\n";
        out << "scaled_j = " << fmt(p.scaled_j) << "\n";
    }
}

void run_classify(const std::vector<std::string>& term_flags, std::ostream& out) {
    const StaffingRule rule = parse_rule(term_flags);
    const RegimeClass rc = classify(rule);
    const LimitResult lim = limit_erlang_c(rc);
    out << "regime = " << regime_name(rc.kind) << "\n";
    out << "z = " << fmt(rc.z) << "\n";
    switch (lim.form) {
        case ClosedForm::Infinity:
            out << "limit erlang-c = inf\n";
            break;
        case ClosedForm::OneMinusXiInverse:
            out << "limit erlang-c = (1 - xi(z))^-1 = " << fmt(lim.value) << "\n";
            break;
        case ClosedForm::One:
        case ClosedForm::Zero:
        case ClosedForm::DelayForm:
            out << "limit erlang-c = " << fmt(lim.value) << "\n";
            break;
    }
}

struct ConvergeArgs {
    std::vector<std::string> terms;
    double mu = 1.0;
    std::optional<double> theta;
    std::string lambdas;
    std::string lambda_range;
    std::string target = "erlang-c";
    bool round_n = false;
};

void run_converge(const ConvergeArgs& a, std::ostream& out, std::ostream& err) {
    const StaffingRule rule = parse_rule(a.terms);
    std::vector<double> lambdas;
    if (!a.lambdas.empty()) {
        for (const std::string& part : split(a.lambdas, ',')) {
            lambdas.push_back(parse_num(part, "--lambdas"));
        }
    } else {
        // geometric range start:stop:count
        const auto parts = split(a.lambda_range, ':');
        if (parts.size() != 3) {
            throw UsageError{"--lambda-range expects start:stop:count"};
        }
        const double start = parse_num(parts[0], "--lambda-range");
        const double stop = parse_num(parts[1], "--lambda-range");
        const double count_d = parse_num(parts[2], "--lambda-range");
        const long long count = static_cast<long long>(count_d);
        if (count < 1 || static_cast<double>(count) != count_d) {
            throw UsageError{"--lambda-range: count must be a positive integer"};
        }
        if (!(start > 0.0) || !(stop >= start)) {
            throw UsageError{"--lambda-range: need 0 < start <= stop"};
        }
        for (long long i = 0; i < count; ++i) {
            const double frac = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
            lambdas.push_back(start * std::pow(stop / start, frac));
        }
    }
    const StudyTarget target = a.target == "delay" ? StudyTarget::DelayProbability
                                                   : StudyTarget::ErlangC;
    const QueueModel model{a.mu, a.theta};
    StudyOptions opts;
    opts.round_n = a.round_n;
    const auto records = run_convergence_study(rule, model, std::move(lambdas), target, opts);
    out << "lambda,rho,n,finite_value,limit_value,abs_error\n";
    for (const auto& rec : records) {
        out << fmt(rec.lambda) << ',' << fmt(rec.rho) << ',' << fmt(rec.n) << ','
            << fmt(rec.finite_value) << ',' << fmt_limit(rec.limit) << ','
            << fmt(rec.abs_error) << "\n";
        if (!rec.ok) {
            err << "row lambda=" << fmt(rec.lambda) << ": " << rec.message << "\n";
        }
    }
}

struct SweepArgs {
    std::string target;
    std::string z_range;
    double mu = 0.0;
    double theta = 0.0;
    double lambda = 0.0;
    bool has_mu = false;
    bool has_theta = false;
    bool has_lambda = false;
};

void run_sweep(const SweepArgs& a, std::ostream& out) {
    const Range zr = parse_range(a.z_range, "--z");
    const bool need_model = a.target != "erlang-c-limit";
    const bool need_theta = a.target == "delay-limit" || a.target == "finite-p";
    const bool need_lambda = a.target == "finite-c" || a.target == "finite-p";
    if (need_model && !a.has_mu) {
        throw UsageError{"--mu is required for target " + a.target};
    }
    if (need_theta && !a.has_theta) {
        throw UsageError{"--theta is required for target " + a.target};
    }
    if (need_lambda && !a.has_lambda) {
        throw UsageError{"--lambda is required for target " + a.target};
    }
    out << "z,value\n";
    for (double z : grid_points(zr)) {
        double value;
        if (a.target == "erlang-c-limit") {
            const RegimeClass rc{z == 0.0 ? RegimeKind::Balanced
                                 : z > 0.0 ? RegimeKind::OverloadedTheta
                                           : RegimeKind::UnderloadedTheta,
                                 z};
            value = limit_erlang_c(rc).value;
        } else if (a.target == "delay-limit") {
            const RegimeClass rc{z == 0.0 ? RegimeKind::Balanced
                                 : z > 0.0 ? RegimeKind::OverloadedTheta
                                           : RegimeKind::UnderloadedTheta,
                                 z};
            value = limit_delay_probability(rc, QueueModel{a.mu, a.theta}).value;
        } else {
            const double rho = a.lambda / a.mu;
            const double servers = rho - z * std::sqrt(rho);
            if (a.target == "finite-c") {
                value = erlang_c(ServerCount(servers), OfferedLoad(rho)).value;
            } else {
                value = delay_probability(ServerCount(servers), OfferedLoad(rho),
                                          AbandonmentModel(a.mu, a.theta)).value;
            }
        }
        out << fmt(z) << ',' << fmt(value) << "\n";
    }
}

struct OracleArgs {
    long long n = 0;
    double rho = 0.0;
    double mu = 1.0;
    double theta = 0.0;
};

void run_oracle(const OracleArgs& a, std::ostream& out) {
    BirthDeathSpec spec;
    spec.arrival = a.rho * a.mu;
    spec.service = a.mu;
    spec.servers = static_cast<int>(a.n);
    spec.abandonment = a.theta;
    if (a.n > 1000000) {
        throw DomainError("oracle: server count too large for the state-space solver");
    }
    const SteadyState st = steady_state(spec);
    const double oracle_p = delay_probability_from_pi(spec, st);
    const ServerCount n(static_cast<double>(a.n));
    const OfferedLoad rho(a.rho);
    if (a.theta > 0.0) {
        const AbandonmentModel m(a.mu, a.theta);
        const DelayProbability p = delay_probability(n, rho, m);
        out << "P formula = " << fmt(p.value) << "\n";
        out << "P oracle = " << fmt(oracle_p) << "\n";
        out << "|diff| = " << fmt(std::fabs(p.value - oracle_p)) << "\n";
        double state_sum = 0.0;
        for (long long i = a.n - 1; i >= 0; --i) {
            state_sum += state_probability(static_cast<int>(i), n, rho, m);
        }
        out << "sum p_i (i<n) = " << fmt(state_sum) << "\n";
        out << "1 - P oracle = " << fmt(1.0 - oracle_p) << "\n";
        out << "|checksum| = " << fmt(std::fabs(state_sum - (1.0 - oracle_p))) << "\n";
    } else {
        const ErlangValue c = erlang_c(n, rho);
        out << "C formula = " << fmt(c.value) << "\n";
        out << "C oracle = " << fmt(oracle_p) << "\n";
        out << "|diff| = " << fmt(std::fabs(c.value - oracle_p)) << "\n";
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact and limiting performance measures for many-server queues"};
    app.require_subcommand(1);

    ExactArgs exact_args;
    CLI::App* exact = app.add_subcommand("exact", "Erlang loss/delay measures at one operating point");
    exact->add_option("--n", exact_args.n, "number of servers (real values allowed)")->required();
    exact->add_option("--rho", exact_args.rho, "offered load lambda/mu")->required();
    CLI::Option* opt_mu = exact->add_option("--mu", exact_args.mu, "service rate (abandonment model)");
    CLI::Option* opt_theta = exact->add_option("--theta", exact_args.theta, "abandonment rate");
    opt_mu->needs(opt_theta);
    opt_theta->needs(opt_mu);
    exact->add_option("--method", exact_args.method,
                      "delay-probability route: direct-sum, recursion, quadrature-a, quadrature-b");

    std::vector<std::string> classify_terms;
    CLI::App* classify_cmd = app.add_subcommand("classify", "regime and closed-form limit of a staffing rule");
    classify_cmd->add_option("--term", classify_terms, "rule term coef:exponent (repeatable)");

    ConvergeArgs conv;
    CLI::App* converge = app.add_subcommand("converge", "finite-system values along a staffing rule vs the regime limit");
    converge->add_option("--term", conv.terms, "rule term coef:exponent (repeatable)");
    converge->add_option("--mu", conv.mu, "service rate")->required();
    double conv_theta = 0.0;
    CLI::Option* conv_theta_opt = converge->add_option("--theta", conv_theta, "abandonment rate (delay target)");
    CLI::Option* opt_list = converge->add_option("--lambdas", conv.lambdas, "comma-separated arrival rates");
    CLI::Option* opt_range = converge->add_option("--lambda-range", conv.lambda_range,
                                                  "geometric grid start:stop:count");
    opt_list->excludes(opt_range);
    opt_range->excludes(opt_list);
    converge->add_option("--target", conv.target, "erlang-c or delay")
        ->check(CLI::IsMember({"erlang-c", "delay"}));
    converge->add_flag("--round-n", conv.round_n, "round staffing to the nearest integer >= 1");

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "curve of a measure over the square-root staffing parameter z");
    sweep->add_option("--target", sweep_args.target,
                      "erlang-c-limit, delay-limit, finite-c, or finite-p")
        ->required()
        ->check(CLI::IsMember({"erlang-c-limit", "delay-limit", "finite-c", "finite-p"}));
    sweep->add_option("--z", sweep_args.z_range, "grid start:stop:step")->required();
    CLI::Option* sw_mu = sweep->add_option("--mu", sweep_args.mu, "service rate");
    CLI::Option* sw_theta = sweep->add_option("--theta", sweep_args.theta, "abandonment rate");
    CLI::Option* sw_lambda = sweep->add_option("--lambda", sweep_args.lambda, "arrival rate (finite targets)");

    OracleArgs oracle_args;
    CLI::App* oracle = app.add_subcommand("oracle", "closed formulas vs the birth-death ground truth");
    oracle->add_option("--n", oracle_args.n, "number of servers (integer)")->required();
    oracle->add_option("--rho", oracle_args.rho, "offered load")->required();
    oracle->add_option("--mu", oracle_args.mu, "service rate (default 1)");
    oracle->add_option("--theta", oracle_args.theta, "abandonment rate (default 0: plain M/M/n)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(exact)) {
            exact_args.has_model = static_cast<bool>(*opt_mu);
            run_exact(exact_args, out);
        } else if (app.got_subcommand(classify_cmd)) {
            run_classify(classify_terms, out);
        } else if (app.got_subcommand(converge)) {
            if (!*opt_list && !*opt_range) {
                throw UsageError{"converge needs --lambdas or --lambda-range"};
            }
            if (*conv_theta_opt) {
                conv.theta = conv_theta;
            }
            run_converge(conv, out, err);
        } else if (app.got_subcommand(sweep)) {
            sweep_args.has_mu = static_cast<bool>(*sw_mu);
            sweep_args.has_theta = static_cast<bool>(*sw_theta);
            sweep_args.has_lambda = static_cast<bool>(*sw_lambda);
            run_sweep(sweep_args, out);
        } else if (app.got_subcommand(oracle)) {
            run_oracle(oracle_args, out);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.message << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}

}  // namespace erlq
