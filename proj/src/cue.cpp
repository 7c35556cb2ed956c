#include "zm/cue.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <stdexcept>

#include "zm/series.hpp"
#include "zm/util.hpp"

namespace zm::cue {

namespace {

const cplx kI(0.0, 1.0);

cplx ipow(long n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

// (-i j)^n by repeated multiplication; exact for j = 0 and cheap for small n.
cplx deriv_weight(std::size_t j, int n) {
    cplx base = -kI * static_cast<double>(j);
    cplx w = 1.0;
    for (int i = 0; i < n; ++i) w *= base;
    return w;
}

double wrap_angle(double a) {
    a = std::fmod(a + kPi, kTwoPi);
    if (a < 0) a += kTwoPi;
    return a - kPi;
}

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x9e3779b9u};
    return std::mt19937_64(seq);
}

SpectrumSample haar_from_engine(int N, std::mt19937_64& eng) {
    using Eigen::MatrixXcd;
    std::normal_distribution<double> gauss(0.0, 1.0);
    MatrixXcd A(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) A(i, j) = cplx(gauss(eng), gauss(eng)) / std::sqrt(2.0);
    Eigen::HouseholderQR<MatrixXcd> qr(A);
    MatrixXcd Q = qr.householderQ();
    MatrixXcd R = qr.matrixQR();
    // Fix the R-diagonal phases; without this Q is not Haar distributed.
    for (int i = 0; i < N; ++i) {
        cplx r = R(i, i);
        cplx lambda = std::abs(r) > 0 ? r / std::abs(r) : cplx(1.0);
        Q.col(i) *= lambda;
    }
    Eigen::ComplexEigenSolver<MatrixXcd> es(Q, /*computeEigenvectors=*/false);
    SpectrumSample s;
    s.angles.resize(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) s.angles[static_cast<std::size_t>(i)] = wrap_angle(std::arg(es.eigenvalues()[i]));
    return s;
}

// Per-sample observable (1/N) sum_n prod_r Z^{...}(theta_n + ...), shared by
// the MC estimators.
template <class PerAngle>
cplx average_over_angles(const SpectrumSample& s, PerAngle&& f) {
    cplx acc = 0.0;
    for (double th : s.angles) acc += f(th);
    return acc / static_cast<double>(s.angles.size());
}

cplx eval_poly(const std::vector<cplx>& c, cplx x) {
    cplx acc = 0.0;
    for (std::size_t j = c.size(); j-- > 0;) acc = acc * x + c[j];
    return acc;
}

template <class SampleFn>
McResult run_mc(std::size_t samples, std::uint64_t seed, unsigned threads, SampleFn&& fn) {
    if (samples < 100) throw std::domain_error("mc_moment: need at least 100 samples");
    unsigned t = resolve_threads(threads);
    std::vector<RunningMomentsC> acc(t);
    // Independently seeded stream per worker; per-worker moments merge in
    // worker order, so a fixed (seed, threads) pair reproduces exactly.
    parallel_for_workers(samples, t, [&](unsigned w, std::size_t b, std::size_t e) {
        auto eng = seeded_engine(seed, w);
        RunningMomentsC local;
        for (std::size_t i = b; i < e; ++i) local.add(fn(eng));
        acc[w] = local;
    });
    RunningMomentsC total;
    for (const auto& a : acc) total.merge(a);
    return {total.mean(), total.sem(), samples};
}

}  // namespace

SpectrumSample haar_sample(int N, std::uint64_t seed) {
    if (N < 1) throw std::domain_error("haar_sample: N >= 1 required");
    auto eng = seeded_engine(seed, 0);
    return haar_from_engine(N, eng);
}

SpectrumSample haar_sample_rejection(int N, std::uint64_t seed) {
    if (N < 1 || N > 3)
        throw std::domain_error("haar_sample_rejection: only N <= 3 is practical");
    auto eng = seeded_engine(seed, 1);
    std::uniform_real_distribution<double> uni(-kPi, kPi);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double bound = std::pow(4.0, N * (N - 1) / 2);
    while (true) {
        std::vector<double> th(static_cast<std::size_t>(N));
        for (auto& x : th) x = uni(eng);
        double w = 1.0;
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j)
                w *= std::norm(std::exp(kI * th[static_cast<std::size_t>(i)]) -
                               std::exp(kI * th[static_cast<std::size_t>(j)]));
        if (u01(eng) * bound <= w) return SpectrumSample{std::move(th)};
    }
}

std::vector<cplx> char_poly_coeffs(const SpectrumSample& spectrum) {
    // prod_m (1 - e^{i theta_m} x), expanded one factor at a time.
    std::vector<cplx> c(spectrum.size() + 1, cplx(0.0));
    c[0] = 1.0;
    std::size_t used = 0;
    for (double th : spectrum.angles) {
        cplx e = std::exp(kI * th);
        ++used;
        for (std::size_t j = used; j >= 1; --j) c[j] -= e * c[j - 1];
    }
    return c;
}

cplx char_poly(const SpectrumSample& spectrum, double theta, int n) {
    if (n < 0) throw std::domain_error("char_poly: derivative order must be >= 0");
    auto c = char_poly_coeffs(spectrum);
    cplx acc = 0.0;
    for (std::size_t j = 0; j < c.size(); ++j)
        acc += c[j] * deriv_weight(j, n) * std::exp(-kI * (static_cast<double>(j) * theta));
    return acc;
}

cplx ToeplitzSymbolCoeffs::fhat(long ell) const {
    if (ell == -1) return -1.0;
    if (ell < -1 || ell > k + 1) return 0.0;
    double sign = (ell % 2 == 0) ? 1.0 : -1.0;
    return sign * C[static_cast<std::size_t>(ell + 1)];
}

ToeplitzSymbolCoeffs symbol_coeffs(const symfunc::ValueVector& A) {
    if (A.size() < 2) throw std::domain_error("symbol_coeffs: need k+2 >= 2 values");
    ToeplitzSymbolCoeffs out;
    out.k = static_cast<int>(A.size()) - 2;
    out.C = symfunc::elem_sym_all(A);
    return out;
}

cplx toeplitz_recurrence(int N, const symfunc::ValueVector& A) {
    if (N < 0) throw std::domain_error("toeplitz_recurrence: N >= 0 required");
    if (A.size() < 2) throw std::domain_error("toeplitz_recurrence: need k+2 >= 2 values");
    auto C = symfunc::elem_sym_all(A);
    int p = static_cast<int>(A.size());
    std::vector<cplx> D(static_cast<std::size_t>(N) + 1);
    D[0] = 1.0;
    for (int m = 1; m <= N; ++m) {
        cplx acc = 0.0;
        int jmax = std::min(m, p);
        for (int j = 1; j <= jmax; ++j) {
            double sign = (j % 2 == 1) ? 1.0 : -1.0;
            acc += sign * C[static_cast<std::size_t>(j)] * D[static_cast<std::size_t>(m - j)];
        }
        D[static_cast<std::size_t>(m)] = acc;
    }
    return D[static_cast<std::size_t>(N)];
}

cplx toeplitz_closed(int N, const symfunc::ValueVector& A) {
    if (N < 0) throw std::domain_error("toeplitz_closed: N >= 0 required");
    if (!A.distinct())
        throw std::domain_error(
            "toeplitz_closed: confluent values; use shifted_moment_exact, whose h-branch "
            "embeds the analytic limit");
    int p = static_cast<int>(A.size());
    cplx sum = 0.0;
    for (int r = 0; r < p; ++r) {
        cplx term = std::pow(A.entries[static_cast<std::size_t>(r)], N + p - 1);
        for (int j = 0; j < p; ++j) {
            if (j == r) continue;
            term /= A.entries[static_cast<std::size_t>(j)] - A.entries[static_cast<std::size_t>(r)];
        }
        sum += term;
    }
    double sign = (p % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1} with p = k+2
    return sign * sum;
}

cplx shifted_moment_rational(int N, const ShiftSet& shifts) {
    if (N < 1) throw std::domain_error("shifted_moment: N >= 1 required");
    const std::size_t k = shifts.size();
    std::vector<cplx> u(k);
    for (std::size_t r = 0; r < k; ++r) u[r] = std::exp(-kI * shifts.shifts[r]);
    cplx acc = static_cast<double>(N) + static_cast<double>(k);
    for (std::size_t l = 0; l < k; ++l) {
        cplx term = std::exp(-kI * (static_cast<double>(N + static_cast<int>(k)) * shifts.shifts[l])) /
                    (1.0 - u[l]);
        for (std::size_t j = 0; j < k; ++j) {
            if (j == l) continue;
            term *= (1.0 - u[j]) / (u[l] - u[j]);
        }
        acc += term;
        acc -= 1.0 / (1.0 - u[l]);
    }
    return acc / static_cast<double>(N);
}

cplx shifted_moment_h(int N, const ShiftSet& shifts) {
    if (N < 1) throw std::domain_error("shifted_moment: N >= 1 required");
    symfunc::ValueVector args;
    cplx prefactor = 1.0;
    for (const cplx& a : shifts.shifts) {
        cplx u = std::exp(-kI * a);
        args.entries.push_back(u);
        prefactor *= 1.0 - u;
    }
    args.entries.push_back(1.0);
    args.entries.push_back(1.0);
    cplx h = symfunc::complete_homogeneous(N - 1, args);
    return prefactor * h / static_cast<double>(N);
}

cplx shifted_moment_exact(int N, const ShiftSet& shifts) {
    if (shifts.size() == 0) return 1.0;
    return shifts.distinct_mod_2pi() ? shifted_moment_rational(N, shifts)
                                     : shifted_moment_h(N, shifts);
}

cplx scaled_limit_series(const symfunc::ValueVector& a, int terms) {
    if (terms < 1) throw std::domain_error("scaled_limit_series: terms >= 1 required");
    int k = static_cast<int>(a.size());
    if (terms + k + 1 > 170)
        throw std::domain_error("scaled_limit_series: factorial overflow; reduce terms");
    cplx prod = 1.0;
    for (const cplx& x : a.entries) prod *= x;
    auto h = symfunc::complete_homogeneous_upto(terms - 1, a);
    double fact = 1.0;  // k! here; becomes (m+k+1)! incrementally in the loop
    for (int i = 2; i <= k; ++i) fact *= i;
    cplx acc = 0.0;
    double msign = 1.0;
    for (int m = 0; m < terms; ++m) {
        fact *= m + k + 1;
        acc += msign * ipow(k + m) / fact * h[static_cast<std::size_t>(m)];
        msign = -msign;
    }
    return acc * prod;
}

cplx derivative_moment_exact(int N, const std::vector<int>& orders, int guard_terms) {
    if (N < 1) throw std::domain_error("derivative_moment_exact: N >= 1 required");
    if (orders.empty()) throw std::domain_error("derivative_moment_exact: empty orders");
    for (int n : orders)
        if (n < 1) throw std::domain_error("derivative_moment_exact: orders must be >= 1");
    if (guard_terms < 0)
        throw std::domain_error("derivative_moment_exact: truncation budget below max degree");

    using series::SeriesBox;
    using series::TruncSeries;
    using series::VarSpec;
    const int k = static_cast<int>(orders.size());
    std::vector<VarSpec> vars;
    for (int r = 0; r < k; ++r)
        vars.push_back(VarSpec{"a" + std::to_string(r), 0, orders[static_cast<std::size_t>(r)] + guard_terms});
    SeriesBox box(vars);

    // u_r = e^{-i j alpha_r} as a truncated series, for any integer j.
    auto exp_series = [&](int r, long j) {
        TruncSeries s(box);
        std::vector<int> e(static_cast<std::size_t>(k), 0);
        cplx c = 1.0;
        int dmax = vars[static_cast<std::size_t>(r)].max_degree;
        for (int d = 0; d <= dmax; ++d) {
            e[static_cast<std::size_t>(r)] = d;
            s.set_coefficient(e, c);
            c *= -kI * static_cast<double>(j) / static_cast<double>(d + 1);
        }
        return s;
    };

    const TruncSeries one = TruncSeries::constant(box, 1.0);
    // Elementary symmetric polynomials of (u_1..u_k, 1, 1) as series.
    std::vector<TruncSeries> C(static_cast<std::size_t>(k) + 3, TruncSeries(box));
    C[0] = one;
    std::size_t used = 0;
    auto absorb = [&](const TruncSeries& val) {
        ++used;
        for (std::size_t j = used; j >= 1; --j) C[j] = C[j] + val * C[j - 1];
    };
    for (int r = 0; r < k; ++r) absorb(exp_series(r, 1));
    absorb(one);
    absorb(one);

    // Newton recurrence for h_m of k+2 arguments, rolling over the last k+2.
    const int p = k + 2;
    std::vector<TruncSeries> D(static_cast<std::size_t>(p), TruncSeries(box));
    D[0] = one;  // D[m % p] holds h_m
    for (int m = 1; m <= N - 1; ++m) {
        TruncSeries acc(box);
        int jmax = std::min(m, p);
        for (int j = 1; j <= jmax; ++j) {
            const TruncSeries& prev = D[static_cast<std::size_t>((m - j) % p)];
            acc = (j % 2 == 1) ? acc + C[static_cast<std::size_t>(j)] * prev
                               : acc - C[static_cast<std::size_t>(j)] * prev;
        }
        D[static_cast<std::size_t>(m % p)] = acc;
    }
    const TruncSeries& h = D[static_cast<std::size_t>((N - 1) % p)];

    TruncSeries pref = one;
    for (int r = 0; r < k; ++r) pref = pref * (one - exp_series(r, 1));
    TruncSeries M = cplx(1.0 / N) * (pref * h);

    double nfact = 1.0;
    for (int n : orders)
        for (int i = 2; i <= n; ++i) nfact *= i;
    return M.coefficient(orders) * nfact;
}

cplx derivative_moment_leading(const std::vector<int>& orders, double N) {
    if (orders.empty()) throw std::domain_error("derivative_moment_leading: empty orders");
    long total = 0;
    double numer = 1.0;
    for (int n : orders) {
        if (n < 1) throw std::domain_error("derivative_moment_leading: orders must be >= 1");
        total += n;
        for (int i = 2; i <= n; ++i) numer *= i;
    }
    double denom = 1.0;
    for (long i = 2; i <= total + 1; ++i) denom *= static_cast<double>(i);
    double sign = ((total - static_cast<long>(orders.size())) % 2 == 0) ? 1.0 : -1.0;
    return sign * ipow(total) * numer / denom * std::pow(N, static_cast<double>(total));
}

McResult mc_moment(int N, const ShiftSet& shifts, std::size_t samples, std::uint64_t seed,
                   unsigned threads) {
    if (N < 1) throw std::domain_error("mc_moment: N >= 1 required");
    return run_mc(samples, seed, threads, [&, N](std::mt19937_64& eng) {
        SpectrumSample s = haar_from_engine(N, eng);
        auto c = char_poly_coeffs(s);
        return average_over_angles(s, [&](double th) {
            cplx prod = 1.0;
            for (const cplx& a : shifts.shifts)
                prod *= eval_poly(c, std::exp(-kI * (th + a)));
            return prod;
        });
    });
}

McResult mc_moment(int N, const std::vector<int>& orders, std::size_t samples,
                   std::uint64_t seed, unsigned threads) {
    if (N < 1) throw std::domain_error("mc_moment: N >= 1 required");
    for (int n : orders)
        if (n < 0) throw std::domain_error("mc_moment: negative derivative order");
    return run_mc(samples, seed, threads, [&, N](std::mt19937_64& eng) {
        SpectrumSample s = haar_from_engine(N, eng);
        auto c = char_poly_coeffs(s);
        return average_over_angles(s, [&](double th) {
            cplx prod = 1.0;
            for (int n : orders) {
                cplx acc = 0.0;
                for (std::size_t j = 0; j < c.size(); ++j)
                    acc += c[j] * deriv_weight(j, n) * std::exp(-kI * (static_cast<double>(j) * th));
                prod *= acc;
            }
            return prod;
        });
    });
}

McResult mc_abs_moment(int N, double k, std::size_t samples, std::uint64_t seed,
                       unsigned threads) {
    if (N < 1) throw std::domain_error("mc_abs_moment: N >= 1 required");
    return run_mc(samples, seed, threads, [&, N, k](std::mt19937_64& eng) {
        SpectrumSample s = haar_from_engine(N, eng);
        auto c = char_poly_coeffs(s);
        double z = std::abs(eval_poly(c, cplx(1.0)));  // |Z(0)|
        return cplx(std::pow(z * z, k), 0.0);
    });
}

double keating_snaith_moment(int N, double k) {
    if (N < 1) throw std::domain_error("keating_snaith_moment: N >= 1 required");
    if (k <= -0.5) throw std::domain_error("keating_snaith_moment: requires k > -1/2");
    double ls = 0.0;
    for (int j = 1; j <= N; ++j)
        ls += std::lgamma(static_cast<double>(j)) + std::lgamma(j + 2.0 * k) -
              2.0 * std::lgamma(j + k);
    return std::exp(ls);
}

}  // namespace zm::cue
