#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "zm/types.hpp"

// Critical-line evaluation of zeta and its derivatives, localization of
// nontrivial zeros, and the discrete sums over zeros.

namespace zm::zeta {

// One nontrivial zero rho = 1/2 + i gamma.
struct ZeroRecord {
    std::size_t index = 0;  // 1-based by height
    double gamma = 0.0;
    double tolerance = 0.0;  // bound on |gamma_true - gamma|
};

// Cumulative rows (T, sum, prediction, residuals) for one derivative tuple.
struct MomentTrace {
    struct Row {
        double T = 0.0;
        cplx sum;
        double prediction = 0.0;
        double residual_leading = 0.0;
        double residual_full = 0.0;
        bool predicted = false;
    };
    std::vector<int> orders;
    std::vector<Row> rows;
};

// Raised when a Gram block's sign-change count cannot be reconciled with the
// counting function; names the offending block.
class integrity_error : public std::runtime_error {
  public:
    integrity_error(const std::string& msg, long gram_lo, long gram_hi)
        : std::runtime_error(msg), gram_lo(gram_lo), gram_hi(gram_hi) {}
    long gram_lo = 0;
    long gram_hi = 0;
};

// Euler-Maclaurin evaluation of zeta(s), Re s > -1, s != 1. terms <= 0 picks
// an automatic count targeting ~1e-10 relative accuracy for |Im s| <= 1e4.
cplx zeta_em(cplx s, int terms = 0);

// log Gamma by a Lanczos approximation (principal branch), ~13 digits.
cplx log_gamma(cplx z);

// Riemann-Siegel theta and its t-derivative.
double riemann_siegel_theta(double t);
double riemann_siegel_theta_deriv(double t);

// Hardy Z(t) = e^{i theta(t)} zeta(1/2 + it). Riemann-Siegel main sum plus
// correction terms for t >= 50, Euler-Maclaurin below. Requires t >= 2.
double hardy_z(double t);
// Always through zeta_em; the high-accuracy evaluation used for final zero
// polishing and as the oracle for the Riemann-Siegel path.
double hardy_z_em(double t);
cplx hardy_z_em_complex(double t);

// Gram point g_n: theta(g_n) = n pi, for n >= -1.
double gram_point(long n);

struct ZeroSearchOptions {
    unsigned threads = 0;
};

// All zeros up to the requested count / height, each bracketed between sign
// changes of Z and polished to ~1e-10 in gamma. Blockwise counts are
// validated against the Gram indices; throws integrity_error on mismatch.
std::vector<ZeroRecord> find_zeros_count(std::size_t count, ZeroSearchOptions opt = {});
std::vector<ZeroRecord> find_zeros_max_t(double max_t, ZeroSearchOptions opt = {});

// Zero cache: header "# zeta-zeros v1", then "index<TAB>gamma" per line with
// 15 significant digits. Import accepts the same format from third-party
// tables; both throw std::runtime_error on malformed input.
void save_zero_cache(const std::string& path, const std::vector<ZeroRecord>& zeros);
std::vector<ZeroRecord> load_zero_cache(const std::string& path);
std::vector<ZeroRecord> import_zero_table(const std::string& path);

// zeta^{(n)}(1/2 + it) by trapezoidal Cauchy-circle quadrature of
// n!/(2 pi i) \oint zeta(s)/(s-z)^{n+1} ds, zeta on the circle from zeta_em.
// Requires n <= 6, t >= 2, 0 < radius <= 1/4.
cplx zeta_deriv_at(int n, double t, double radius = 0.1, int nodes = 64);
// Orders 0..max_n from a single circle.
std::vector<cplx> zeta_derivs_at(double t, int max_n, double radius = 0.1, int nodes = 64);

// Cumulative sum over zeros of prod_r zeta^{(n_r)}(rho), one row per zero,
// in height order. Per-zero evaluations run in parallel; the cumulative sum
// is an ordered reduction.
MomentTrace discrete_moment(const std::vector<ZeroRecord>& zeros,
                            const std::vector<int>& orders, unsigned threads = 0);

}  // namespace zm::zeta
