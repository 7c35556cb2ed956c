#pragma once

#include <vector>

#include "zm/arith.hpp"
#include "zm/types.hpp"
#include "zm/zeta.hpp"

// Ratios-Conjecture predictions: moment-polynomial integrands in
// L = log(t/2pi), their closed-form integrals, and comparison against
// computed discrete-moment traces.

namespace zm::predict {

// P(L) = sum c_m L^m.
struct LogPolynomial {
    std::vector<double> coeffs;  // c_0..c_d
    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double eval(double L) const;
};

// Integrand polynomial for sum_{gamma <= T} zeta^{(n)}(rho), built through
// the series pipeline (log-derivative expansion minus the one-swap product),
// never by transcribing the closed form. 1 <= n <= 6.
LogPolynomial shanks_integrand(int n);

// Leading coefficient (-1)^{sum n + k} (prod n_r!)/(sum n + 1)! of the
// (T/2pi) L^{sum n + 1} asymptotics for a mixed-derivative tuple.
double mixed_leading(const std::vector<int>& orders);

// Degree-3 integrand for sum zeta'(rho)^2, directly from the published
// coefficient combinations of the gamma_j and tensor entries.
LogPolynomial second_moment_integrand(const arith::ArithDerivTensor& tensor,
                                      const std::vector<double>& stieltjes);
// The same polynomial derived from scratch: the full two-shift one-swap
// expansion through the series engine, with the arithmetic factor's
// trivariate Taylor series rebuilt from the tensor. The two paths must agree.
LogPolynomial second_moment_integrand_series(const arith::ArithDerivTensor& tensor,
                                             const std::vector<double>& stieltjes);

// (1/2pi) int_1^T P(log(t/2pi)) dt via the exact antiderivative recurrence
// int L^m dt = t L^m - m int L^{m-1} dt, evaluated at both endpoints.
double integrate_logpoly(const LogPolynomial& p, double T);

// mixed_leading * (T/2pi) * log^{sum n + 1}(T/2pi): the pure leading term of
// the integrated prediction.
double leading_prediction(const std::vector<int>& orders, double T);

// Fills the prediction and residual columns of a trace: residual_full against
// integrate_logpoly of p, residual_leading against the leading term alone.
zeta::MomentTrace compare(const zeta::MomentTrace& trace, const LogPolynomial& p);

// Integrand polynomial for the supported order tuples: (n) with n <= 6, or
// (1,1). Throws std::domain_error for anything else.
LogPolynomial integrand_for_orders(const std::vector<int>& orders,
                                   const arith::ArithDerivTensor* tensor,
                                   const std::vector<double>& stieltjes);

}  // namespace zm::predict
