#pragma once

#include <cstdint>
#include <vector>

#include "zm/symfunc.hpp"
#include "zm/types.hpp"

// Exact, asymptotic, and Monte Carlo evaluation of shifted and derivative
// moments of CUE characteristic polynomials at their own eigenvalues.

namespace zm::cue {

// Eigenangles of an N x N Haar unitary, in [-pi, pi).
struct SpectrumSample {
    std::vector<double> angles;
    std::size_t size() const { return angles.size(); }
};

// Haar sample by QR orthonormalization of a complex Ginibre matrix with the
// phase correction that makes the distribution exactly Haar, followed by
// eigenangle extraction.
SpectrumSample haar_sample(int N, std::uint64_t seed);

// Direct rejection sampler on the Weyl density; only sensible for N <= 3.
// Used as an independent cross-check of haar_sample.
SpectrumSample haar_sample_rejection(int N, std::uint64_t seed);

// Coefficients c_0..c_N of Z as a polynomial in x = e^{-i theta}:
// Z(theta) = sum_j c_j e^{-i j theta} with c_j = (-1)^j e_j(e^{i theta_m}).
std::vector<cplx> char_poly_coeffs(const SpectrumSample& spectrum);

// n-th derivative of Z(theta) = prod_m (1 - e^{i theta_m} e^{-i theta}),
// evaluated termwise on the monomial coefficients (no cancellation at
// eigenvalues, where Z itself vanishes).
cplx char_poly(const SpectrumSample& spectrum, double theta, int n = 0);

// Fourier coefficients of the symbol f(phi) = -e^{-i phi} prod (1 - e^{i phi} A_r).
struct ToeplitzSymbolCoeffs {
    int k = 0;                 // A has k+2 entries
    std::vector<cplx> C;       // C_0..C_{k+2}, elementary symmetric in A
    cplx fhat(long ell) const;
};
ToeplitzSymbolCoeffs symbol_coeffs(const symfunc::ValueVector& A);

// D_N[f] through the finite linear recurrence
// D_N = sum_{j=1}^{k+2} (-1)^{j+1} C_j D_{N-j} with its initial cascade.
cplx toeplitz_recurrence(int N, const symfunc::ValueVector& A);

// D_N[f] = (-1)^{k+1} sum_r A_r^{N+k+1} prod_{j != r} 1/(A_j - A_r).
// Requires distinct A (throws std::domain_error on confluent input; use
// shifted_moment_exact, whose h-branch embeds the analytic limit).
cplx toeplitz_closed(int N, const symfunc::ValueVector& A);

// E_N[prod_r Z(theta_N + alpha_r)], both exact representations.
cplx shifted_moment_rational(int N, const ShiftSet& shifts);
cplx shifted_moment_h(int N, const ShiftSet& shifts);
// Dispatches to the rational form for well-separated shifts and to the
// h-representation when any pairwise gap (or gap to zero) mod 2 pi falls
// below shifts.eps_distinct.
cplx shifted_moment_exact(int N, const ShiftSet& shifts);

// Truncation of sum_{m>=0} (-1)^m i^{k+m} / (m+k+1)! h_m(a) prod a_j,
// the N -> infinity limit of E_N[prod Z(theta_N + a_r/N)].
cplx scaled_limit_series(const symfunc::ValueVector& a, int terms);

// E_N[(1/N) sum_n Z^{(n_1)}(theta_n) ... Z^{(n_k)}(theta_n)], exactly, by
// expanding e^{-i alpha_r} as a truncated series inside the h_{N-1}
// representation and extracting the alpha_1^{n_1}...alpha_k^{n_k}
// coefficient times prod n_r!. guard_terms adds degree headroom beyond the
// orders themselves (default 2).
cplx derivative_moment_exact(int N, const std::vector<int>& orders, int guard_terms = 2);

// Asymptotic value (-1)^{sum n - k} i^{sum n} (prod n_r!)/(sum n + 1)! N^{sum n}.
cplx derivative_moment_leading(const std::vector<int>& orders, double N);

struct McResult {
    cplx estimate;
    cplx stderr_mean;  // (sem of Re, sem of Im)
    std::size_t samples = 0;
};

// Monte Carlo mean of (1/N) sum_n prod_r Z(theta_n + alpha_r) over Haar spectra.
McResult mc_moment(int N, const ShiftSet& shifts, std::size_t samples, std::uint64_t seed,
                   unsigned threads = 0);
// Monte Carlo mean of (1/N) sum_n prod_r Z^{(n_r)}(theta_n).
McResult mc_moment(int N, const std::vector<int>& orders, std::size_t samples,
                   std::uint64_t seed, unsigned threads = 0);
// Monte Carlo mean of |Z(0)|^{2k}.
McResult mc_abs_moment(int N, double k, std::size_t samples, std::uint64_t seed,
                       unsigned threads = 0);

// Keating-Snaith finite-N moment prod_{j=1}^N Gamma(j) Gamma(j+2k) / Gamma(j+k)^2,
// for k > -1/2.
double keating_snaith_moment(int N, double k);

}  // namespace zm::cue
