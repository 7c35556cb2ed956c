#include "zm/arith.hpp"

#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "zm/series.hpp"
#include "zm/util.hpp"

namespace zm::arith {

namespace {

constexpr int kMaxStieltjes = 8;

// B_2, B_4, ..., B_16: enough Euler-Maclaurin corrections for gamma_n at
// m = 2e4, where the omitted term is far below double precision.
constexpr double kBernoulli[] = {1.0 / 6,        -1.0 / 30,     1.0 / 42,
                                 -1.0 / 30,      5.0 / 66,      -691.0 / 2730,
                                 7.0 / 6,        -3617.0 / 510};

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

double stieltjes_em(int n) {
    // gamma_n emerges as the O(1e-4) difference of partial sums of size
    // log^{n+1}(m)/(n+1), so a small m and extended precision both matter;
    // the Euler-Maclaurin tail converges fine already for m of a few dozen.
    const long m = 120;
    const long double lm = logl(static_cast<long double>(m));
    long double sum = 0.0L;
    for (long k = 1; k <= m; ++k) {
        long double lk = logl(static_cast<long double>(k));
        long double pw = 1.0L;
        for (int i = 0; i < n; ++i) pw *= lk;
        sum += pw / static_cast<long double>(k);
    }
    long double lm_pow = 1.0L;
    for (int i = 0; i <= n; ++i) lm_pow *= lm;
    long double gamma = sum - lm_pow / static_cast<long double>(n + 1);
    // f(x) = log^n x / x; derivatives kept symbolically as coefficient
    // vectors over log powers: f^{(d)}(x) = sum_i c_i log^i x / x^{d+1}.
    std::vector<long double> c(static_cast<std::size_t>(n) + 1, 0.0L);
    c[static_cast<std::size_t>(n)] = 1.0L;
    int d = 0;
    auto eval = [&] {
        long double s = 0.0L;
        long double lp = 1.0L;
        for (std::size_t i = 0; i < c.size(); ++i) {
            s += c[i] * lp;
            lp *= lm;
        }
        long double mp = 1.0L;
        for (int i = 0; i <= d; ++i) mp *= static_cast<long double>(m);
        return s / mp;
    };
    gamma -= 0.5L * eval();
    auto advance = [&] {
        std::vector<long double> nc(c.size(), 0.0L);
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i + 1 < c.size()) nc[i] += static_cast<long double>(i + 1) * c[i + 1];
            nc[i] -= static_cast<long double>(d + 1) * c[i];
        }
        c = nc;
        ++d;
    };
    const int J = 8;
    advance();  // c now holds f'
    for (int j = 1; j <= J; ++j) {
        gamma -= static_cast<long double>(kBernoulli[j - 1]) / factorial(2 * j) * eval();
        advance();
        advance();
    }
    return static_cast<double>(gamma);
}

std::array<double, kMaxStieltjes + 1>& stieltjes_table() {
    static std::array<double, kMaxStieltjes + 1> table;
    static std::once_flag once;
    std::call_once(once, [] {
        for (int n = 0; n <= kMaxStieltjes; ++n) table[static_cast<std::size_t>(n)] = stieltjes_em(n);
    });
    return table;
}

// Series in (a, b, d) for p^{-(c0 + ea*a + eb*b + ed*d)} over the given box.
series::TruncSeries prime_power_series(const series::SeriesBox& box, double p, double c0,
                                       int ea, int eb, int ed) {
    const double lp = std::log(p);
    const double base = std::pow(p, -c0);
    series::TruncSeries s(box);
    int da = box.vars()[0].max_degree, db = box.vars()[1].max_degree,
        dd = box.vars()[2].max_degree;
    for (int i = 0; i <= (ea ? da : 0); ++i)
        for (int j = 0; j <= (eb ? db : 0); ++j)
            for (int m = 0; m <= (ed ? dd : 0); ++m) {
                double v = base * std::pow(-lp, i + j + m) /
                           (factorial(i) * factorial(j) * factorial(m));
                s.set_coefficient({i, j, m}, v);
            }
    return s;
}

}  // namespace

PrimeTable PrimeTable::first(std::size_t count) {
    if (count == 0) throw std::domain_error("PrimeTable: empty table requested");
    std::size_t bound = 100;
    if (count > 6) {
        double n = static_cast<double>(count);
        bound = static_cast<std::size_t>(n * (std::log(n) + std::log(std::log(n))) + 16);
    }
    PrimeTable t;
    while (true) {
        std::vector<bool> sieve(bound + 1, true);
        t.primes.clear();
        for (std::size_t i = 2; i <= bound; ++i) {
            if (!sieve[i]) continue;
            t.primes.push_back(static_cast<long>(i));
            if (t.primes.size() == count) return t;
            for (std::size_t j = i * i; j <= bound; j += i) sieve[j] = false;
        }
        bound = bound * 3 / 2 + 16;
    }
}

double stieltjes(int n) {
    if (n < 0 || n > kMaxStieltjes)
        throw std::domain_error("stieltjes: supported range is 0..8");
    return stieltjes_table()[static_cast<std::size_t>(n)];
}

std::vector<double> stieltjes_upto(int n) {
    std::vector<double> out;
    for (int i = 0; i <= n; ++i) out.push_back(stieltjes(i));
    return out;
}

double ArithDerivTensor::at(int i, int j, int m) const {
    if (i < 0 || j < 0 || m < 0 || i + j + m > max_order)
        throw std::domain_error("ArithDerivTensor: index outside computed order");
    auto it = values.find({i, j, m});
    return it == values.end() ? 0.0 : it->second;
}

cplx arith_factor(const ShiftSet& shifts, cplx delta, const PrimeTable& primes) {
    const std::size_t k = shifts.size();
    if (k == 0 || k > 16) throw std::domain_error("arith_factor: need 1 <= k <= 16 shifts");
    for (const cplx& a : shifts.shifts)
        if (std::abs(a.real()) >= 0.25)
            throw std::domain_error("arith_factor: |Re alpha| must be < 1/4");
    if (std::abs(delta.real()) >= 0.25)
        throw std::domain_error("arith_factor: |Re delta| must be < 1/4");

    cplx prod = 1.0;
    for (long p : primes.primes) {
        double lp = std::log(static_cast<double>(p));
        cplx numer = 1.0;
        // Subsets J of {1..k}, grouped by size m.
        for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
            int m = 0;
            cplx expo = 0.0;
            for (std::size_t j = 0; j < k; ++j)
                if (mask & (std::size_t(1) << j)) {
                    ++m;
                    expo += shifts.shifts[j];
                }
            expo += static_cast<double>(m) + static_cast<double>(m - 1) * delta;
            double sign = (m % 2 == 0) ? 1.0 : -1.0;
            numer += sign * std::exp(-expo * lp);
        }
        cplx denom = 1.0;
        for (const cplx& a : shifts.shifts) denom *= 1.0 - std::exp(-(1.0 + a) * lp);
        prod *= numer / denom;
    }
    return prod;
}

ArithDerivTensor arith_deriv_tensor(int k, int max_order, const PrimeTable& primes,
                                    unsigned threads) {
    if (k != 1 && k != 2) throw std::domain_error("arith_deriv_tensor: k must be 1 or 2");
    if (max_order < 1 || max_order > 3)
        throw std::domain_error("arith_deriv_tensor: max_order must be in 1..3");
    if (primes.size() < 10)
        throw std::domain_error("arith_deriv_tensor: need at least 10 primes");

    using series::SeriesBox;
    using series::TruncSeries;
    using series::VarSpec;
    const int d = max_order;
    SeriesBox box({VarSpec{"a", 0, d}, VarSpec{"b", 0, d}, VarSpec{"d", 0, d}});
    const TruncSeries one = TruncSeries::constant(box, 1.0);

    // log of the local factor for one prime.
    auto log_local = [&](long pl) {
        double p = static_cast<double>(pl);
        // numerator 1 + F_1 + ... + F_k
        TruncSeries numer = one;
        if (k == 1) {
            numer = numer - prime_power_series(box, p, 1.0, 1, 0, 0);
        } else {
            numer = numer - prime_power_series(box, p, 1.0, 1, 0, 0) -
                    prime_power_series(box, p, 1.0, 0, 1, 0) +
                    prime_power_series(box, p, 2.0, 1, 1, 1);
        }
        std::vector<int> zero{0, 0, 0};
        cplx cn = numer.coefficient(zero);
        TruncSeries log_numer = ((1.0 / cn) * numer).log() +
                                TruncSeries::constant(box, std::log(cn.real()));
        TruncSeries denom_a = one - prime_power_series(box, p, 1.0, 1, 0, 0);
        cplx ca = denom_a.coefficient(zero);
        TruncSeries log_denom = ((1.0 / ca) * denom_a).log() +
                                TruncSeries::constant(box, std::log(ca.real()));
        if (k == 2) {
            TruncSeries denom_b = one - prime_power_series(box, p, 1.0, 0, 1, 0);
            cplx cb = denom_b.coefficient(zero);
            log_denom = log_denom + ((1.0 / cb) * denom_b).log() +
                        TruncSeries::constant(box, std::log(cb.real()));
        }
        return log_numer - log_denom;
    };

    // Prime contributions are independent; sum per-worker partials, then merge
    // in worker order so the result does not depend on scheduling.
    unsigned t = resolve_threads(threads);
    std::vector<TruncSeries> partial(t, TruncSeries(box));
    parallel_for_workers(primes.size(), t, [&](unsigned w, std::size_t b, std::size_t e) {
        TruncSeries acc(box);
        for (std::size_t i = b; i < e; ++i) acc = acc + log_local(primes.primes[i]);
        partial[w] = acc;
    });
    TruncSeries logsum(box);
    for (const auto& s : partial) logsum = logsum + s;

    // exp(c0 + rest) = e^{c0} exp(rest); c0 is ~0 in exact arithmetic.
    std::vector<int> zero{0, 0, 0};
    cplx c0 = logsum.coefficient(zero);
    TruncSeries rest = logsum - TruncSeries::constant(box, c0);
    TruncSeries A = std::exp(c0) * rest.exp();

    ArithDerivTensor out;
    out.k = k;
    out.max_order = max_order;
    out.prime_cutoff = primes.size();
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= (k == 2 ? d : 0); ++j)
            for (int m = 0; m <= d; ++m) {
                if (i + j + m > d) continue;
                double v = A.coefficient({i, j, m}).real() * factorial(i) * factorial(j) *
                           factorial(m);
                out.values[{i, j, m}] = v;
            }
    return out;
}

// --- caches -------------------------------------------------------------------

void save_stieltjes_cache(const std::string& path, int max_n) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << "# gamma-cache v1\n";
    f.precision(15);
    for (int n = 0; n <= max_n; ++n) f << n << '\t' << stieltjes(n) << '\n';
}

std::vector<std::pair<int, double>> load_stieltjes_cache(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string header;
    std::getline(f, header);
    if (header != "# gamma-cache v1")
        throw std::runtime_error("bad gamma cache header in " + path);
    std::vector<std::pair<int, double>> out;
    int n;
    double v;
    while (f >> n >> v) out.emplace_back(n, v);
    return out;
}

void save_tensor_cache(const std::string& path, const ArithDerivTensor& t) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << "# arith-tensor v1\n";
    f << t.k << ' ' << t.max_order << ' ' << t.prime_cutoff << '\n';
    f.precision(15);
    for (const auto& [key, v] : t.values)
        f << key[0] << ' ' << key[1] << ' ' << key[2] << ' ' << v << '\n';
}

ArithDerivTensor load_tensor_cache(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string header;
    std::getline(f, header);
    if (header != "# arith-tensor v1")
        throw std::runtime_error("bad tensor cache header in " + path);
    ArithDerivTensor t;
    f >> t.k >> t.max_order >> t.prime_cutoff;
    int i, j, m;
    double v;
    while (f >> i >> j >> m >> v) t.values[{i, j, m}] = v;
    return t;
}

}  // namespace zm::arith
