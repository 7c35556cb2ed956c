#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "zm/arith.hpp"
#include "zm/predict.hpp"
#include "zm/series.hpp"
#include "zm/zeta.hpp"

using namespace zm;
using predict::LogPolynomial;

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Transcription of the published closed form, as the oracle for the series
// pipeline: n! [ A_n + (-1)^{n+1} L^{n+1}/(n+1)! + sum_{m} (-1)^{m+1} L^m
// gamma_{n-m} / (m! (n-m)!) ].
LogPolynomial shanks_closed_form(int n) {
    auto ld = series::zeta_logderiv_laurent(n);
    double A_n = ld.coefficient({n}).real();
    LogPolynomial p;
    p.coeffs.assign(static_cast<std::size_t>(n) + 2, 0.0);
    p.coeffs[0] += A_n;
    double top = ((n + 1) % 2 == 0) ? 1.0 : -1.0;  // (-1)^{n+1}
    p.coeffs[static_cast<std::size_t>(n) + 1] += top / factorial(n + 1);
    for (int m = 0; m <= n; ++m) {
        double sign = (m % 2 == 0) ? -1.0 : 1.0;  // (-1)^{m+1}
        p.coeffs[static_cast<std::size_t>(m)] +=
            sign * arith::stieltjes(n - m) / (factorial(m) * factorial(n - m));
    }
    for (auto& c : p.coeffs) c *= factorial(n);
    return p;
}

}  // namespace

TEST_SUITE("predict") {

TEST_CASE("shanks integrand equals the transcribed closed form") {
    for (int n = 1; n <= 6; ++n) {
        auto series_path = predict::shanks_integrand(n);
        auto closed = shanks_closed_form(n);
        REQUIRE(series_path.coeffs.size() == closed.coeffs.size());
        for (std::size_t i = 0; i < closed.coeffs.size(); ++i)
            CHECK(std::abs(series_path.coeffs[i] - closed.coeffs[i]) < 1e-10);
    }
    // leading coefficients: 1/2 for n=1, then (-1)^{n+1}/(n+1)
    CHECK(std::abs(predict::shanks_integrand(1).coeffs[2] - 0.5) < 1e-12);
    CHECK(std::abs(predict::shanks_integrand(2).coeffs[3] + 1.0 / 3.0) < 1e-12);
    CHECK(std::abs(predict::shanks_integrand(3).coeffs[4] - 0.25) < 1e-12);
    // degree and constant structure for n = 1: c0 = A_1 - gamma_1, c1 = gamma_0
    auto p1 = predict::shanks_integrand(1);
    CHECK(p1.degree() == 2);
    CHECK(std::abs(p1.coeffs[1] - arith::stieltjes(0)) < 1e-12);
    CHECK_THROWS_AS(predict::shanks_integrand(0), std::domain_error);
    CHECK_THROWS_AS(predict::shanks_integrand(7), std::domain_error);
}

TEST_CASE("mixed leading coefficients") {
    CHECK(std::abs(predict::mixed_leading({1, 1}) - 1.0 / 6.0) < 1e-15);
    CHECK(std::abs(predict::mixed_leading({1}) - 0.5) < 1e-15);
    for (int n = 1; n <= 5; ++n) {
        double want = ((n + 1) % 2 == 0 ? 1.0 : -1.0) / (n + 1);  // (-1)^{n+1}/(n+1)
        CHECK(std::abs(predict::mixed_leading({n}) - want) < 1e-14);
    }
    // agreement with the equal-order k-th moment constant at k=2, n=1:
    // (-1)^{k(n+1)} (n!)^k / (kn+1)!
    CHECK(std::abs(predict::mixed_leading({1, 1}) - 1.0 / factorial(3)) < 1e-15);
    // and with the integrand leading coefficients
    for (int n = 1; n <= 4; ++n) {
        auto p = predict::shanks_integrand(n);
        CHECK(std::abs(p.coeffs.back() - predict::mixed_leading({n})) < 1e-12);
    }
}

TEST_CASE("second moment: transcribed and series paths agree") {
    // A modest prime table keeps this fast; both paths share the tensor, so
    // the agreement isolates the expansion algebra.
    auto tensor = arith::arith_deriv_tensor(2, 3, arith::PrimeTable::first(200));
    auto g = arith::stieltjes_upto(2);
    auto a = predict::second_moment_integrand(tensor, g);
    auto b = predict::second_moment_integrand_series(tensor, g);
    REQUIRE(a.coeffs.size() == 4);
    REQUIRE(b.coeffs.size() == 4);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(a.coeffs[static_cast<std::size_t>(i)] -
                                               b.coeffs[static_cast<std::size_t>(i)]) < 1e-10);
    CHECK(std::abs(a.coeffs[3] - 1.0 / 6.0) < 1e-15);
    CHECK(std::abs(a.coeffs.back() - predict::mixed_leading({1, 1})) < 1e-15);

    arith::ArithDerivTensor wrong;
    wrong.k = 1;
    CHECK_THROWS_AS(predict::second_moment_integrand(wrong, g), std::domain_error);
}

TEST_CASE("second moment reproduces the published coefficients at 1000 primes") {
    auto tensor = arith::arith_deriv_tensor(2, 3, arith::PrimeTable::first(1000));
    auto p = predict::second_moment_integrand(tensor, arith::stieltjes_upto(2));
    CHECK(std::abs(p.coeffs[2] + 0.03621) < 5e-3);
    CHECK(std::abs(p.coeffs[1] - 2.12487) < 5e-3);
    CHECK(std::abs(p.coeffs[0] + 2.52789) < 5e-3);
}

TEST_CASE("integrate_logpoly") {
    LogPolynomial constant{{1.0}};
    for (double T : {10.0, 1234.5})
        CHECK(std::abs(predict::integrate_logpoly(constant, T) - (T - 1.0) / kTwoPi) < 1e-12);

    LogPolynomial linear{{0.0, 1.0}};
    for (double T : {10.0, 1234.5}) {
        auto F = [](double t) { return t * (std::log(t / kTwoPi) - 1.0); };
        CHECK(std::abs(predict::integrate_logpoly(linear, T) - (F(T) - F(1.0)) / kTwoPi) <
              1e-10);
    }

    // against adaptive quadrature for a full random-ish cubic
    LogPolynomial cubic{{-2.5, 2.1, -0.03, 1.0 / 6.0}};
    for (double T : {100.0, 99999.0}) {
        double got = predict::integrate_logpoly(cubic, T);
        double want = oracle::adaptive_simpson(
                          [&](double t) { return cubic.eval(std::log(t / kTwoPi)); }, 1.0, T,
                          1e-11 * T) /
                      kTwoPi;
        CHECK(std::abs(got - want) <= 1e-8 * std::abs(want));
    }
    CHECK_THROWS_AS(predict::integrate_logpoly(constant, 0.5), std::domain_error);
}

TEST_CASE("compare fills predictions and residuals") {
    auto zeros = zeta::find_zeros_count(100);
    auto trace = zeta::discrete_moment(zeros, {1});
    auto poly = predict::shanks_integrand(1);
    auto filled = predict::compare(trace, poly);
    REQUIRE(filled.rows.size() == trace.rows.size());
    const auto& first = filled.rows.front();
    const auto& last = filled.rows.back();
    CHECK(first.predicted);
    // near the first zero the prediction is O(1) while sums later reach 1e3+
    CHECK(std::abs(first.prediction) < 25.0);
    CHECK(std::abs(first.residual_full - (first.sum.real() - first.prediction)) < 1e-12);
    double lead = predict::leading_prediction({1}, last.T);
    CHECK(std::abs(last.residual_leading - (last.sum.real() - lead)) < 1e-10);
    // by the 100th zero the full prediction beats the bare leading term
    CHECK(std::abs(last.residual_full) < std::abs(last.residual_leading));
}

TEST_CASE("integrand_for_orders dispatch") {
    auto p = predict::integrand_for_orders({3}, nullptr, {});
    CHECK(p.degree() == 4);
    CHECK_THROWS_AS(predict::integrand_for_orders({1, 1}, nullptr, {}), std::domain_error);
    CHECK_THROWS_AS(predict::integrand_for_orders({2, 1}, nullptr, {}), std::domain_error);
    auto tensor = arith::arith_deriv_tensor(2, 3, arith::PrimeTable::first(50));
    auto g = arith::stieltjes_upto(2);
    auto q = predict::integrand_for_orders({1, 1}, &tensor, g);
    CHECK(q.degree() == 3);
}

}  // TEST_SUITE
