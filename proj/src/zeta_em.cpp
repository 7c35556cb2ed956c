#include <cmath>
#include <stdexcept>
#include <vector>

#include "zm/zeta.hpp"

namespace zm::zeta {

namespace {

const cplx kI(0.0, 1.0);

// B_2, B_4, ..., B_28.
constexpr double kB[] = {1.0 / 6,
                         -1.0 / 30,
                         1.0 / 42,
                         -1.0 / 30,
                         5.0 / 66,
                         -691.0 / 2730,
                         7.0 / 6,
                         -3617.0 / 510,
                         43867.0 / 798,
                         -174611.0 / 330,
                         854513.0 / 138,
                         -236364091.0 / 2730,
                         8553103.0 / 6,
                         -23749461029.0 / 870};
constexpr int kMaxPairs = 14;

// Natural logs of 1..n, grown on demand. Thread-local to stay lock-free.
const std::vector<double>& log_table(std::size_t n) {
    thread_local std::vector<double> logs{0.0, 0.0};  // logs[1] = log 1
    while (logs.size() <= n) logs.push_back(std::log(static_cast<double>(logs.size())));
    return logs;
}

}  // namespace

cplx log_gamma(cplx z) {
    // Lanczos, g = 7, 9 coefficients.
    static const double kCoef[] = {0.99999999999980993,     676.5203681218851,
                                   -1259.1392167224028,     771.32342877765313,
                                   -176.61502916214059,     12.507343278686905,
                                   -0.13857109526572012,    9.9843695780195716e-6,
                                   1.5056327351493116e-7};
    if (z.real() < 0.5) {
        // Reflection keeps the approximation in its accurate half-plane.
        return std::log(kPi / std::sin(kPi * z)) - log_gamma(1.0 - z);
    }
    z -= 1.0;
    cplx x = kCoef[0];
    for (int i = 1; i < 9; ++i) x += kCoef[i] / (z + static_cast<double>(i));
    cplx t = z + 7.5;
    return 0.5 * std::log(kTwoPi) + (z + 0.5) * std::log(t) - t + std::log(x);
}

cplx zeta_em(cplx s, int terms) {
    if (std::abs(s - 1.0) < 1e-12) throw std::domain_error("zeta_em: pole at s = 1");
    if (s.real() <= -1.0) throw std::domain_error("zeta_em: requires Re s > -1");
    const double t = std::abs(s.imag());
    std::size_t m = terms > 0 ? static_cast<std::size_t>(terms)
                              : static_cast<std::size_t>(std::max(50.0, std::ceil(0.6 * t)));
    const auto& logs = log_table(m);

    // Direct sum with extended-precision accumulation; the terms oscillate
    // and the plain double running sum loses ~3 digits at m ~ 1e4.
    long double sre = 0.0L, sim = 0.0L;
    const double sigma = s.real(), tau = s.imag();
    for (std::size_t n = 1; n <= m; ++n) {
        double ln = logs[n];
        double mag = std::exp(-sigma * ln);
        double ph = -tau * ln;
        sre += static_cast<long double>(mag * std::cos(ph));
        sim += static_cast<long double>(mag * std::sin(ph));
    }
    cplx sum(static_cast<double>(sre), static_cast<double>(sim));

    const double lm = logs[m];
    cplx m_pow_ms = std::exp(-s * lm);            // m^{-s}
    cplx tail = m_pow_ms * static_cast<double>(m) / (s - 1.0);  // m^{1-s}/(s-1)
    tail -= 0.5 * m_pow_ms;

    // Bernoulli corrections, built incrementally:
    // T_1 = B_2/2! * s * m^{-s-1};  T_{j+1} = T_j * r_j * (s+2j-1)(s+2j)/m^2.
    cplx term = kB[0] / 2.0 * s * m_pow_ms / static_cast<double>(m);
    cplx corr = term;
    const double m2 = static_cast<double>(m) * static_cast<double>(m);
    for (int j = 1; j < kMaxPairs; ++j) {
        double ratio = kB[j] / kB[j - 1] / ((2.0 * j + 1.0) * (2.0 * j + 2.0));
        term *= ratio * (s + (2.0 * j - 1.0)) * (s + 2.0 * j) / m2;
        corr += term;
    }
    return sum + tail + corr;
}

double riemann_siegel_theta(double t) {
    if (t < 10.0) {
        cplx lg = log_gamma(cplx(0.25, t / 2.0));
        return lg.imag() - t / 2.0 * std::log(kPi);
    }
    double lt = std::log(t / kTwoPi);
    double t2 = t * t;
    return t / 2.0 * lt - t / 2.0 - kPi / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t * t2) +
           31.0 / (80640.0 * t * t2 * t2);
}

double riemann_siegel_theta_deriv(double t) {
    if (t < 10.0) {
        double h = 1e-5;
        return (riemann_siegel_theta(t + h) - riemann_siegel_theta(t - h)) / (2.0 * h);
    }
    double t2 = t * t;
    return 0.5 * std::log(t / kTwoPi) - 1.0 / (48.0 * t2) - 21.0 / (5760.0 * t2 * t2) -
           155.0 / (80640.0 * t2 * t2 * t2);
}

cplx hardy_z_em_complex(double t) {
    return std::exp(kI * riemann_siegel_theta(t)) * zeta_em(cplx(0.5, t));
}

double hardy_z_em(double t) { return hardy_z_em_complex(t).real(); }

}  // namespace zm::zeta
