#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "erlq/cli.hpp"

using namespace erlq;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("erlq");
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

// Value of the first line starting with "<key> = ".
double value_after(const std::string& out, const std::string& key) {
    const std::string tag = key + " = ";
    const size_t pos = out.find(tag);
    REQUIRE(pos != std::string::npos);
    return std::stod(out.substr(pos + tag.size()));
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> lines;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    return lines;
}

}  // namespace

TEST_CASE("exact reports loss and delay with their route") {
    const CliResult r = run({"exact", "--n", "2", "--rho", "1.5"});
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    CHECK(contains(r.out, "B = "));
    CHECK(contains(r.out, "C = "));
    CHECK(contains(r.out, "method=recursion"));
    CHECK(value_after(r.out, "B") == doctest::Approx(9.0 / 29.0).epsilon(1e-15));
    CHECK(value_after(r.out, "C") == doctest::Approx(9.0 / 14.0).epsilon(1e-15));
}

TEST_CASE("exact honors an explicit route and the abandonment model") {
    const CliResult quad = run({"exact", "--n", "2", "--rho", "1.5", "--method", "quadrature-b"});
    CHECK(quad.code == 0);
    CHECK(contains(quad.out, "method=quadrature-b"));
    CHECK(value_after(quad.out, "C") == doctest::Approx(9.0 / 14.0).epsilon(1e-10));

    const CliResult model =
        run({"exact", "--n", "10", "--rho", "9", "--mu", "1", "--theta", "0.5"});
    CHECK(model.code == 0);
    CHECK(value_after(model.out, "P") == doctest::Approx(0.46894170444133672).epsilon(1e-12));
    CHECK(value_after(model.out, "J") == doctest::Approx(0.43742638296840434).epsilon(1e-12));
    CHECK(value_after(model.out, "scaled_j") == doctest::Approx(0.437426382968404).epsilon(1e-12));
}

TEST_CASE("usage problems exit with code 2") {
    CHECK(run({}).code == 2);                                   // no subcommand
    CHECK(run({"exact", "--n", "2"}).code == 2);                // missing --rho
    CHECK(run({"exact", "--n", "2", "--rho", "1", "--mu", "1"}).code == 2);  // mu without theta
    CHECK(run({"exact", "--n", "2", "--rho", "1", "--method", "bogus"}).code == 2);
    CHECK(run({"classify", "--term=oops"}).code == 2);
    CHECK(run({"classify", "--term=1:2:3"}).code == 2);
    CHECK(run({"converge", "--mu", "1"}).code == 2);            // no lambda source
    CHECK(run({"sweep", "--target", "bogus", "--z=0:1:0.5"}).code == 2);
    CHECK(run({"sweep", "--target", "finite-c", "--z=0:1:0.5", "--mu", "1"}).code == 2);
    const CliResult r = run({"exact", "--n", "2"});
    CHECK(contains(r.err, "usage error"));
}

TEST_CASE("domain problems exit with code 3") {
    CHECK(run({"exact", "--n", "-1", "--rho", "1"}).code == 3);
    CHECK(run({"exact", "--n", "2", "--rho", "-1"}).code == 3);
    CHECK(run({"classify", "--term=1:1.5"}).code == 3);  // superlinear rule
    CHECK(run({"oracle", "--n", "2", "--rho", "3"}).code == 3);  // unstable without theta
    const CliResult r = run({"exact", "--n", "-1", "--rho", "1"});
    CHECK(contains(r.err, "domain error"));
}

TEST_CASE("numeric failures exit with code 4") {
    // The summation route refuses two billion servers.
    const CliResult r =
        run({"exact", "--n", "2000000000", "--rho", "2000000000", "--method", "direct-sum"});
    CHECK(r.code == 4);
    CHECK(contains(r.err, "numeric error"));
}

TEST_CASE("help prints the subcommands and succeeds") {
    const CliResult r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "exact"));
    CHECK(contains(r.out, "classify"));
    CHECK(contains(r.out, "converge"));
    CHECK(contains(r.out, "sweep"));
    CHECK(contains(r.out, "oracle"));
}

TEST_CASE("classify names the regime and the closed-form limit") {
    const CliResult over = run({"classify", "--term=-1:0.5"});
    CHECK(over.code == 0);
    CHECK(contains(over.out, "regime = overloaded-theta"));
    CHECK(contains(over.out, "z = 1"));
    CHECK(contains(over.out, "limit erlang-c = (1 - xi(z))^-1 = 2.9042712333296907"));

    const CliResult under = run({"classify", "--term=2:0.5", "--term=-1:0.25"});
    CHECK(contains(under.out, "regime = underloaded-theta"));
    CHECK(contains(under.out, "z = -2"));

    const CliResult omega = run({"classify", "--term=-0.5:0.8"});
    CHECK(contains(omega.out, "regime = overloaded-omega"));
    CHECK(contains(omega.out, "limit erlang-c = inf"));

    const CliResult balanced = run({"classify"});
    CHECK(contains(balanced.out, "regime = balanced"));
    CHECK(contains(balanced.out, "z = 0"));
    CHECK(contains(balanced.out, "limit erlang-c = 1"));
}

TEST_CASE("converge emits one CSV row per lambda against the limit") {
    const CliResult r =
        run({"converge", "--term=-1:0.5", "--mu", "1", "--lambdas", "400,100"});
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "lambda,rho,n,finite_value,limit_value,abs_error");
    CHECK(lines[1].substr(0, 11) == "100,100,90,");  // rows sorted by lambda
    CHECK(lines[2].substr(0, 12) == "400,400,380,");
    CHECK(contains(lines[1], "2.9042712333296907"));
}

TEST_CASE("converge accepts a geometric lambda grid") {
    const CliResult r = run({"converge", "--term=-1:0.5", "--mu", "1", "--lambda-range",
                             "100:10000:3", "--target", "erlang-c"});
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[1].substr(0, 4) == "100,");
    CHECK(lines[2].substr(0, 5) == "1000,");
    CHECK(lines[3].substr(0, 6) == "10000,");
}

TEST_CASE("converge keeps going past rows it cannot evaluate") {
    const CliResult r =
        run({"converge", "--term=-2:0.5", "--mu", "1", "--lambdas", "1,10000"});
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 3);
    CHECK(contains(lines[1], "NA"));
    CHECK_FALSE(contains(lines[2], "NA"));
    CHECK(contains(r.err, "row lambda=1"));
}

TEST_CASE("converge reaches the abandonment-model target") {
    const CliResult r = run({"converge", "--term=1:0.5", "--mu", "1", "--theta", "1",
                             "--lambdas", "10000", "--target", "delay", "--round-n"});
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    // limit is the z = -1 two-sided form, here the normal CDF at -1
    CHECK(contains(lines[1], "0.158655253931457"));
}

TEST_CASE("sweep tabulates the limit curve over z") {
    const CliResult r = run({"sweep", "--target", "erlang-c-limit", "--z=-1:1:1"});
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "z,value");
    CHECK(lines[1] == "-1,0.22336127479826073");
    CHECK(lines[2] == "0,1");
    CHECK(lines[3] == "1,2.9042712333296907");
}

TEST_CASE("sweep handles the degenerate single-point range") {
    const CliResult r = run({"sweep", "--target", "delay-limit", "--z=0:0:0.5",
                             "--mu", "1", "--theta", "1"});
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1] == "0,0.5");  // (1 + sqrt(1))^{-1}
}

TEST_CASE("sweep evaluates finite systems at a given arrival rate") {
    const CliResult r = run({"sweep", "--target", "finite-c", "--z=1:1:1",
                             "--mu", "2", "--lambda", "200"});
    CHECK(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    // rho = 100, n = 100 - sqrt(100) = 90
    const double want = 2.9042712333296918;
    const double got = std::stod(lines[1].substr(2));
    CHECK(std::fabs(got - want) < 0.2);  // finite size, same shape
}

TEST_CASE("oracle compares the closed formulas with the chain solution") {
    const CliResult with_theta = run({"oracle", "--n", "10", "--rho", "9", "--theta", "0.5"});
    CHECK(with_theta.code == 0);
    CHECK(value_after(with_theta.out, "P formula") ==
          doctest::Approx(0.46894170444133672).epsilon(1e-12));
    CHECK(value_after(with_theta.out, "|diff|") < 1e-10);
    CHECK(value_after(with_theta.out, "|checksum|") < 1e-12);

    const CliResult plain = run({"oracle", "--n", "5", "--rho", "4"});
    CHECK(plain.code == 0);
    CHECK(value_after(plain.out, "C formula") ==
          doctest::Approx(value_after(plain.out, "C oracle")).epsilon(1e-10));
    CHECK(value_after(plain.out, "|diff|") < 1e-10);
}

TEST_CASE("repeated runs are byte-identical") {
    const std::vector<std::string> args = {"sweep", "--target", "delay-limit",
                                           "--z=-3:3:0.25", "--mu", "1", "--theta", "2"};
    const CliResult first = run(args);
    const CliResult second = run(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
    CHECK(first.err == second.err);
    CHECK(lines_of(first.out).size() == 26);  // header + 25 grid points
}
