#include "doctest.h"

#include <cmath>

#include "erlq/errors.hpp"
#include "erlq/series.hpp"

using namespace erlq;

namespace {

Rational R(long long num, long long den) {
    return Rational(num) / Rational(den);
}

}  // namespace

TEST_CASE("the first correction polynomials are exact rationals") {
    const SeriesCoefficients s = varphi_series(4);
    REQUIRE(s.order == 4);

    // a_0 = 1
    REQUIRE(s.coeff[0].size() == 1);
    CHECK(s.coeff[0][0] == Rational(1));

    // a_1 = v^3/6
    CHECK(s.coeff[1][3] == R(1, 6));

    // a_2 = -v^4/24 + v^6/72
    CHECK(s.coeff[2][4] == R(-1, 24));
    CHECK(s.coeff[2][6] == R(1, 72));

    // a_3 = v^5/120 - v^7/144 + v^9/1296
    CHECK(s.coeff[3][5] == R(1, 120));
    CHECK(s.coeff[3][7] == R(-1, 144));
    CHECK(s.coeff[3][9] == R(1, 1296));

    // a_4 = -v^6/720 + 13 v^8/5760 - v^10/1728 + v^12/31104
    CHECK(s.coeff[4][6] == R(-1, 720));
    CHECK(s.coeff[4][8] == R(13, 5760));
    CHECK(s.coeff[4][10] == R(-1, 1728));
    CHECK(s.coeff[4][12] == R(1, 31104));

    // Each a_i carries only degrees i+2, i+4, ..., 3i; everything else is 0.
    for (int i = 1; i <= 4; ++i) {
        REQUIRE(s.coeff[i].size() == static_cast<size_t>(3 * i) + 1);
        for (size_t d = 0; d < s.coeff[i].size(); ++d) {
            const bool live = d >= static_cast<size_t>(i) + 2 && (d - i) % 2 == 0;
            CAPTURE(i);
            CAPTURE(d);
            if (!live) {
                CHECK(s.coeff[i][d] == Rational(0));
            } else {
                CHECK(s.coeff[i][d] != Rational(0));
            }
        }
    }
}

TEST_CASE("order four agrees with the explicit partition sum") {
    // Exponentiating g_1 + g_2 + g_3 + g_4 term by term, the x^{-2} slice is
    //   g_4 + g_1 g_3 + g_2^2/2 + g_1^2 g_2 / 2 + g_1^4 / 24
    // with monomials g_1 = v^3/6, g_2 = -v^4/24, g_3 = v^5/120, g_4 = -v^6/720.
    std::vector<Rational> want(13, Rational(0));
    want[6] += R(-1, 720);                      // g_4
    want[8] += R(1, 6) * R(1, 120);             // g_1 g_3
    want[8] += R(-1, 24) * R(-1, 24) / 2;       // g_2^2 / 2
    want[10] += R(1, 6) * R(1, 6) * R(-1, 24) / 2;  // g_1^2 g_2 / 2
    want[12] += R(1, 6) * R(1, 6) * R(1, 6) * R(1, 6) / 24;  // g_1^4 / 24
    const SeriesCoefficients s = varphi_series(4);
    for (size_t d = 0; d < want.size(); ++d) {
        CAPTURE(d);
        CHECK(s.coeff[4][d] == want[d]);
    }
}

TEST_CASE("polynomial evaluation matches the rational coefficients") {
    const SeriesCoefficients s = varphi_series(3);
    CHECK(s.eval_poly(0, 7.3) == 1.0);
    const double v = 1.5;
    CHECK(s.eval_poly(1, v) == doctest::Approx(v * v * v / 6.0).epsilon(1e-15));
    CHECK(s.eval_poly(2, v) ==
          doctest::Approx(-std::pow(v, 4) / 24.0 + std::pow(v, 6) / 72.0).epsilon(1e-15));
    CHECK(s.partial_sum(v, 100.0, 0) == 1.0);
}

TEST_CASE("the correction factor matches direct references") {
    CHECK(varphi_eval(1.0, 1e4) == doctest::Approx(1.0016638910525827).epsilon(1e-14));
    CHECK(varphi_eval(-2.0, 100.0) == doctest::Approx(0.86911848553793216).epsilon(1e-14));
    CHECK(varphi_eval(3.0, 100.0) == doctest::Approx(1.519190962780487).epsilon(1e-14));
    CHECK(varphi_eval(-3.0, 1e4) == doctest::Approx(0.95567294216639955).epsilon(1e-14));
    CHECK(varphi_eval(0.0, 50.0) == 1.0);
}

TEST_CASE("both evaluation branches agree where they meet") {
    // v = 5, x = 100 sits exactly on the |v|/sqrt(x) = 1/2 switch.
    const double lo = varphi_eval(std::nextafter(5.0, 0.0), 100.0);
    const double hi = varphi_eval(std::nextafter(5.0, 10.0), 100.0);
    CHECK(std::fabs(lo - hi) / hi < 1e-12);
}

TEST_CASE("truncation error shrinks like the next power of the expansion") {
    const SeriesCoefficients s = varphi_series(6);
    auto max_err = [&](double x, int k) {
        double mx = 0.0;
        for (double v = -3.0; v <= 3.0001; v += 0.1) {
            mx = std::max(mx, std::fabs(varphi_eval(v, x) - s.partial_sum(v, x, k)));
        }
        return mx;
    };
    const double e2 = max_err(1e2, 4);
    const double e4 = max_err(1e4, 4);
    CHECK(e4 < 1e-8);
    // Five half-powers of 1/x separate the two grids: the ratio should sit
    // near (1e2/1e4)^{5/2} = 1e-5.
    const double ratio = e4 / e2;
    CHECK(ratio > 1e-5 / 3.0);
    CHECK(ratio < 1e-5 * 3.0);
    // More terms help at fixed x.
    CHECK(max_err(1e2, 6) < max_err(1e2, 4));
    CHECK(max_err(1e2, 4) < max_err(1e2, 2));
}

TEST_CASE("series routines validate their inputs") {
    CHECK_THROWS_AS(varphi_series(-1), DomainError);
    CHECK_THROWS_AS(varphi_series(13), DomainError);
    CHECK_NOTHROW(varphi_series(kSeriesMaxOrder));
    const SeriesCoefficients s = varphi_series(2);
    CHECK_THROWS_AS(s.partial_sum(1.0, 100.0, 3), DomainError);
    CHECK_THROWS_AS(s.partial_sum(1.0, -1.0, 2), DomainError);
    CHECK_THROWS_AS(s.eval_poly(5, 1.0), DomainError);
    CHECK_THROWS_AS(varphi_eval(1.0, 0.0), DomainError);
    CHECK_THROWS_AS(varphi_eval(1.0, -3.0), DomainError);
    CHECK_THROWS_AS(varphi_eval(std::nan(""), 1.0), DomainError);
}
