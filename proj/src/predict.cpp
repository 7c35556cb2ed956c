#include "zm/predict.hpp"

#include <cmath>
#include <stdexcept>

#include "zm/series.hpp"

namespace zm::predict {

using series::SeriesBox;
using series::TruncSeries;
using series::VarSpec;

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// gamma_j, preferring the caller-supplied values so both second-moment paths
// see identical inputs; higher guard orders fall back to the arith module.
double gamma_at(const std::vector<double>& provided, int j) {
    if (j < static_cast<int>(provided.size())) return provided[static_cast<std::size_t>(j)];
    return arith::stieltjes(j);
}

// zeta(1 + sign*var) over `box`, truncated at var-degree `deg`.
TruncSeries zeta_series_in(const SeriesBox& box, const std::string& var, int deg, int sign,
                           const std::vector<double>& g) {
    TruncSeries s(box);
    int vi = box.index_of(var);
    std::vector<int> e(box.nvars(), 0);
    e[static_cast<std::size_t>(vi)] = -1;
    s.set_coefficient(e, sign < 0 ? -1.0 : 1.0);
    double altern = 1.0;
    for (int n = 0; n <= deg; ++n) {
        double c = altern * gamma_at(g, n) / factorial(n);  // (-1)^n gamma_n / n!
        if (sign < 0 && n % 2 == 1) c = -c;
        e[static_cast<std::size_t>(vi)] = n;
        s.set_coefficient(e, c);
        altern = -altern;
    }
    return s;
}

// (t/2pi)^{-var} over `box` to var-degree `deg`, coupled to the "L" variable.
TruncSeries tpow_series_in(const SeriesBox& box, const std::string& var, int deg) {
    TruncSeries s(box);
    int vi = box.index_of(var), li = box.index_of("L");
    std::vector<int> e(box.nvars(), 0);
    double sign = 1.0;
    for (int j = 0; j <= deg; ++j) {
        e[static_cast<std::size_t>(vi)] = j;
        e[static_cast<std::size_t>(li)] = j;
        s.set_coefficient(e, sign / factorial(j));
        sign = -sign;
    }
    return s;
}

// zeta(1 + hi - lo), poles expanded for |lo| < |hi|.
TruncSeries zeta_diff_series(const SeriesBox& box, const std::string& hi,
                             const std::string& lo, int deg,
                             const std::vector<double>& g) {
    TruncSeries s = series::inverse_difference(box, hi, lo);
    int hi_i = box.index_of(hi), lo_i = box.index_of(lo);
    std::vector<int> eh(box.nvars(), 0), el(box.nvars(), 0);
    eh[static_cast<std::size_t>(hi_i)] = 1;
    el[static_cast<std::size_t>(lo_i)] = 1;
    TruncSeries diff = TruncSeries::monomial(box, eh, 1.0) - TruncSeries::monomial(box, el, 1.0);
    TruncSeries dpow = TruncSeries::constant(box, 1.0);
    double altern = 1.0;
    for (int n = 0; n <= deg; ++n) {
        if (n > 0) dpow = dpow * diff;
        s = s + (altern * gamma_at(g, n) / factorial(n)) * dpow;
        altern = -altern;
    }
    return s;
}

// zeta'/zeta(1 + var), from the univariate derivation, embedded.
TruncSeries zld_series_in(const SeriesBox& box, const std::string& var, int deg) {
    return series::zeta_logderiv_laurent(deg).renamed("x", var).embedded(box);
}

// 1/zeta(1 + var): reciprocal of the univariate Laurent series, embedded.
TruncSeries recip_zeta_in(const SeriesBox& box, const std::string& var, int deg,
                          const std::vector<double>& g) {
    SeriesBox ub({VarSpec{var, 1, deg}});
    TruncSeries z = zeta_series_in(ub, var, deg, +1, g);
    return z.reciprocal().embedded(box);
}

}  // namespace

double LogPolynomial::eval(double L) const {
    double acc = 0.0;
    for (std::size_t m = coeffs.size(); m-- > 0;) acc = acc * L + coeffs[m];
    return acc;
}

LogPolynomial shanks_integrand(int n) {
    if (n < 1 || n > 6) throw std::domain_error("shanks_integrand: 1 <= n <= 6");
    SeriesBox box({VarSpec{"a", 2, n + 2}, VarSpec{"L", 0, n + 1}});
    std::vector<double> g;  // resolved through arith inside gamma_at
    // The log-derivative term is additive, so only its a^n coefficient is
    // ever read; degree n keeps the Stieltjes demand at gamma_{n+1}.
    TruncSeries zld = zld_series_in(box, "a", n);
    TruncSeries tpow = tpow_series_in(box, "a", n + 1);
    TruncSeries zeta_refl = zeta_series_in(box, "a", n + 1, -1, g);  // zeta(1-a)
    // For one shift the arithmetic factor is identically 1.
    TruncSeries W = zld - tpow * zeta_refl;
    double scale = std::max(1.0, W.max_abs_coeff());
    if (W.max_abs_singular_coeff() > 1e-9 * scale)
        throw std::runtime_error("shanks_integrand: 1/alpha poles failed to cancel");
    LogPolynomial p;
    p.coeffs.resize(static_cast<std::size_t>(n) + 2);
    for (int m = 0; m <= n + 1; ++m)
        p.coeffs[static_cast<std::size_t>(m)] = (factorial(n) * W.coefficient({n, m})).real();
    return p;
}

double mixed_leading(const std::vector<int>& orders) {
    if (orders.empty()) throw std::domain_error("mixed_leading: empty orders");
    long total = 0;
    double numer = 1.0;
    for (int n : orders) {
        if (n < 1) throw std::domain_error("mixed_leading: orders must be >= 1");
        total += n;
        numer *= factorial(n);
    }
    double sign = ((total + static_cast<long>(orders.size())) % 2 == 0) ? 1.0 : -1.0;
    return sign * numer / factorial(static_cast<int>(total) + 1);
}

LogPolynomial second_moment_integrand(const arith::ArithDerivTensor& tensor,
                                      const std::vector<double>& stieltjes) {
    if (tensor.k != 2 || tensor.max_order < 3)
        throw std::domain_error("second_moment_integrand: need a k=2, order-3 tensor");
    if (stieltjes.size() < 3)
        throw std::domain_error("second_moment_integrand: need gamma_0..gamma_2");
    const double g0 = stieltjes[0], g1 = stieltjes[1], g2 = stieltjes[2];
    const double A001 = tensor.at(0, 0, 1), A002 = tensor.at(0, 0, 2), A003 = tensor.at(0, 0, 3);
    const double A011 = tensor.at(0, 1, 1), A012 = tensor.at(0, 1, 2), A021 = tensor.at(0, 2, 1);
    const double A111 = tensor.at(1, 1, 1);
    LogPolynomial p;
    p.coeffs = {
        (-12.0 * g0 * g0 * g0 - 36.0 * g0 * g1 + 6.0 * g2 - 24.0 * g1 * A001 + 6.0 * g0 * A002 +
         A003 + 12.0 * g0 * A011 + 3.0 * A012 - 3.0 * A021 + 6.0 * A111) /
            6.0,
        (-8.0 * g1 + 4.0 * g0 * A001 + A002 + 2.0 * A011) / 2.0,
        (2.0 * g0 + A001) / 2.0,
        1.0 / 6.0,
    };
    return p;
}

LogPolynomial second_moment_integrand_series(const arith::ArithDerivTensor& tensor,
                                             const std::vector<double>& stieltjes) {
    if (tensor.k != 2 || tensor.max_order < 3)
        throw std::domain_error("second_moment_integrand_series: need a k=2, order-3 tensor");
    if (stieltjes.size() < 3)
        throw std::domain_error("second_moment_integrand_series: need gamma_0..gamma_2");
    const std::vector<double>& g = stieltjes;

    // One-swap expansion of the two-shift prediction. Difference poles are
    // expanded with b as the outer variable throughout; the box is sized so
    // every contribution to the a^1 b^1 coefficients is retained exactly.
    SeriesBox box({VarSpec{"a", 2, 3}, VarSpec{"b", 6, 5}, VarSpec{"L", 0, 4}});

    // d/d delta of the arithmetic factor at delta = 0, as a series in (a, b).
    TruncSeries aprime(box);
    for (int i = 0; i <= 2; ++i)
        for (int j = 0; i + j + 1 <= 3; ++j) {
            std::vector<int> e{i, j, 0};
            aprime.set_coefficient(e, tensor.at(i, j, 1) / (factorial(i) * factorial(j)));
        }

    // A_{0, b}(-a): tensor slice with the first shift at zero, delta -> -a.
    TruncSeries aser_a(box);
    for (int j = 0; j <= 3; ++j)
        for (int m = 0; j + m <= 3; ++m) {
            double c = tensor.at(0, j, m) / (factorial(j) * factorial(m));
            if (m % 2 == 1) c = -c;
            aser_a.set_coefficient({m, j, 0}, c);
        }
    // A_{a, 0}(-b).
    TruncSeries aser_b(box);
    for (int i = 0; i <= 3; ++i)
        for (int m = 0; i + m <= 3; ++m) {
            double c = tensor.at(i, 0, m) / (factorial(i) * factorial(m));
            if (m % 2 == 1) c = -c;
            aser_b.set_coefficient({i, m, 0}, c);
        }

    TruncSeries inv_b = series::inverse_difference(box, "b", "a");  // 1/(b-a)

    // W_a = zeta'/zeta(1+a)
    //       - (t/2pi)^{-a} zeta(1-a) A_{0,b}(-a) zeta(1+b-a) / zeta(1+b)
    TruncSeries wa = zld_series_in(box, "a", 3) -
                     tpow_series_in(box, "a", 3) * zeta_series_in(box, "a", 3, -1, g) *
                         aser_a * zeta_diff_series(box, "b", "a", 5, g) *
                         recip_zeta_in(box, "b", 5, g);

    // zeta(1 + a - b) = -1/(b-a) + polynomial part in (a-b).
    TruncSeries zdiff_ab = -inv_b;
    {
        std::vector<int> ea{1, 0, 0}, eb{0, 1, 0};
        TruncSeries diff =
            TruncSeries::monomial(box, ea, 1.0) - TruncSeries::monomial(box, eb, 1.0);
        TruncSeries dpow = TruncSeries::constant(box, 1.0);
        double altern = 1.0;
        for (int n = 0; n <= 5; ++n) {
            if (n > 0) dpow = dpow * diff;
            zdiff_ab = zdiff_ab + (altern * gamma_at(g, n) / factorial(n)) * dpow;
            altern = -altern;
        }
    }
    TruncSeries wb = zld_series_in(box, "b", 5) -
                     tpow_series_in(box, "b", 3) * zeta_series_in(box, "b", 3, -1, g) *
                         aser_b * zdiff_ab * recip_zeta_in(box, "a", 3, g);

    TruncSeries total = aprime + wa + wb;

    // The standalone (T/2pi) log(T/2pi) term of the k-shift prediction is an
    // integrand of L + 1. It is shift-independent, so the derivative
    // extraction must kill it; assert that rather than assuming it.
    {
        TruncSeries standalone =
            TruncSeries::monomial(box, {0, 0, 1}, 1.0) + TruncSeries::constant(box, 1.0);
        TruncSeries with = total + standalone;
        for (int m = 0; m <= 3; ++m) {
            if (std::abs(with.coefficient({1, 1, m}) - total.coefficient({1, 1, m})) != 0.0)
                throw std::runtime_error(
                    "second_moment_integrand_series: standalone log term leaked into the "
                    "derivative coefficients");
        }
    }

    // The assembled prediction is holomorphic: the low-order singular
    // coefficients (which the box represents exactly) must cancel.
    double scale = 0.0;
    for (int m = 0; m <= 3; ++m)
        scale = std::max(scale, std::abs(total.coefficient({1, 1, m})));
    scale = std::max(scale, 1.0);
    for (int ea = -1; ea <= 1; ++ea)
        for (int eb = -1; eb <= 1; ++eb) {
            if (ea >= 0 && eb >= 0) continue;
            for (int m = 0; m <= 3; ++m) {
                if (std::abs(total.coefficient({ea, eb, m})) > 1e-9 * scale)
                    throw std::runtime_error(
                        "second_moment_integrand_series: singular terms failed to cancel");
            }
        }

    LogPolynomial p;
    p.coeffs.resize(4);
    for (int m = 0; m <= 3; ++m)
        p.coeffs[static_cast<std::size_t>(m)] = total.coefficient({1, 1, m}).real();
    return p;
}

double integrate_logpoly(const LogPolynomial& p, double T) {
    if (T <= 1.0) throw std::domain_error("integrate_logpoly: T > 1 required");
    auto antideriv = [&](double t) {
        double L = std::log(t / kTwoPi);
        // I_m = t L^m - m I_{m-1}, I_0 = t.
        double acc = 0.0;
        std::vector<double> I(p.coeffs.size());
        double Lm = 1.0;
        for (std::size_t m = 0; m < p.coeffs.size(); ++m) {
            if (m == 0) {
                I[0] = t;
            } else {
                Lm *= L;
                I[m] = t * Lm - static_cast<double>(m) * I[m - 1];
            }
            acc += p.coeffs[m] * I[m];
        }
        return acc;
    };
    return (antideriv(T) - antideriv(1.0)) / kTwoPi;
}

double leading_prediction(const std::vector<int>& orders, double T) {
    long total = 0;
    for (int n : orders) total += n;
    double L = std::log(T / kTwoPi);
    return mixed_leading(orders) * (T / kTwoPi) * std::pow(L, static_cast<double>(total) + 1);
}

zeta::MomentTrace compare(const zeta::MomentTrace& trace, const LogPolynomial& p) {
    zeta::MomentTrace out = trace;
    for (auto& row : out.rows) {
        row.prediction = integrate_logpoly(p, row.T);
        row.residual_full = row.sum.real() - row.prediction;
        row.residual_leading = row.sum.real() - leading_prediction(out.orders, row.T);
        row.predicted = true;
    }
    return out;
}

LogPolynomial integrand_for_orders(const std::vector<int>& orders,
                                   const arith::ArithDerivTensor* tensor,
                                   const std::vector<double>& stieltjes) {
    if (orders.size() == 1) return shanks_integrand(orders[0]);
    if (orders.size() == 2 && orders[0] == 1 && orders[1] == 1) {
        if (tensor == nullptr)
            throw std::domain_error("integrand_for_orders: orders (1,1) need a tensor");
        return second_moment_integrand(*tensor, stieltjes);
    }
    throw std::domain_error(
        "integrand_for_orders: full predictions are available for (n), n <= 6, and (1,1)");
}

}  // namespace zm::predict
