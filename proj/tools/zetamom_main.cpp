// zetamom: CUE moment formulas, zeta zeros, and Ratios-Conjecture
// moment predictions from the command line.

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "zm/arith.hpp"
#include "zm/cue.hpp"
#include "zm/predict.hpp"
#include "zm/symfunc.hpp"
#include "zm/types.hpp"
#include "zm/zeta.hpp"

namespace {

using zm::cplx;

constexpr std::uint64_t kDefaultSeed = 20250809;

// Parses "a", "bi", "a+bi", "a-bi" (also accepting 'j').
cplx parse_complex(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    // Split at the last '+'/'-' that is neither leading nor an exponent sign.
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto to_double = [](const std::string& u) {
        std::size_t pos = 0;
        double v = std::stod(u, &pos);
        if (pos != u.size()) throw std::invalid_argument("bad number '" + u + "'");
        return v;
    };
    bool tail_imag = s.back() == 'i' || s.back() == 'j';
    if (!tail_imag) return {to_double(s), 0.0};
    std::string body = s.substr(0, s.size() - 1);
    if (split == std::string::npos) {
        if (body.empty() || body == "+" || body == "-") body += "1";
        return {0.0, to_double(body)};
    }
    std::string re = s.substr(0, split);
    std::string im = body.substr(split);
    if (im == "+" || im == "-") im += "1";
    return {to_double(re), to_double(im)};
}

std::vector<cplx> parse_shift_list(const std::string& text) {
    std::vector<cplx> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_complex(tok));
    if (out.empty()) throw std::invalid_argument("no shifts given");
    return out;
}

std::string fmt_complex(cplx z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.10g %+.10gi", z.real(), z.imag());
    return buf;
}

void write_plot_script(const std::string& csv_path, const std::string& script_path) {
    std::ofstream f(script_path);
    f << "# gnuplot script: cumulative sum and residual views of " << csv_path << "\n"
      << "set datafile separator ','\n"
      << "set datafile commentschars '#'\n"
      << "set key left top\n"
      << "set xlabel 'T'\n"
      << "set terminal pngcairo size 900,540\n"
      << "set output 'moment_sum.png'\n"
      << "plot '" << csv_path << "' every ::1 using 1:2 with lines title 'Re sum', \\\n"
      << "     '" << csv_path << "' every ::1 using 1:4 with lines title 'prediction'\n"
      << "set output 'moment_residual_leading.png'\n"
      << "plot '" << csv_path << "' every ::1 using 1:5 with lines title 'sum - leading term'\n"
      << "set output 'moment_residual_full.png'\n"
      << "plot '" << csv_path << "' every ::1 using 1:6 with lines title 'sum - full prediction'\n";
}

// --- subcommand drivers -------------------------------------------------------

int run_symcheck(std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    std::uniform_int_distribution<int> kdist(1, 6), ndist(-8, 12);
    double worst_comb = 0.0, worst_toeplitz = 0.0;
    std::size_t done = 0;
    while (done < samples) {
        int k = kdist(eng);
        long n = ndist(eng);
        zm::symfunc::ValueVector v;
        for (int i = 0; i < k; ++i) v.entries.push_back(cplx(uni(eng) * 2.0, uni(eng) * 2.0));
        if (!v.distinct() || !v.nonzero()) continue;
        ++done;
        cplx closed = zm::symfunc::combinatorial_sum(n, v);
        cplx literal = 0.0;
        for (int l = 0; l < k; ++l) {
            cplx term = std::pow(v.entries[static_cast<std::size_t>(l)], static_cast<double>(n));
            for (int j = 0; j < k; ++j) {
                if (j == l) continue;
                term *= v.entries[static_cast<std::size_t>(j)] /
                        (v.entries[static_cast<std::size_t>(j)] - v.entries[static_cast<std::size_t>(l)]);
            }
            literal += term;
        }
        double scale = std::max(1.0, std::abs(literal));
        worst_comb = std::max(worst_comb, std::abs(closed - literal) / scale);
        // Toeplitz triple agreement on the same draw, padded to k+2 values.
        zm::symfunc::ValueVector A = v;
        A.entries.push_back(cplx(uni(eng) * 2.0, uni(eng) * 2.0));
        A.entries.push_back(cplx(uni(eng) * 2.0, uni(eng) * 2.0));
        if (!A.distinct()) continue;
        int N = static_cast<int>(done % 50);
        cplx r = zm::cue::toeplitz_recurrence(N, A);
        cplx c = zm::cue::toeplitz_closed(N, A);
        cplx h = zm::symfunc::complete_homogeneous(N, A);
        double hscale = std::max(1.0, std::abs(h));
        worst_toeplitz = std::max(worst_toeplitz, std::abs(r - h) / hscale);
        worst_toeplitz = std::max(worst_toeplitz, std::abs(c - h) / hscale);
    }
    std::printf("combinatorial-sum closed form vs literal: %zu draws, worst rel err %.3e\n",
                done, worst_comb);
    std::printf("toeplitz recurrence/closed/h agreement:   worst rel err %.3e\n", worst_toeplitz);
    bool ok = worst_comb < 1e-10 && worst_toeplitz < 1e-9;
    std::printf("%s\n", ok ? "OK" : "FAILED");
    return ok ? 0 : 1;
}

int run_cue(int N, const std::string& shifts_text, const std::string& orders_text,
            std::size_t samples, std::uint64_t seed, unsigned threads) {
    if (shifts_text.empty() == orders_text.empty()) {
        std::cerr << "cue: exactly one of --shifts / --orders is required\n";
        return 2;
    }
    cplx exact, leading;
    zm::cue::McResult mc;
    if (!shifts_text.empty()) {
        zm::ShiftSet shifts(parse_shift_list(shifts_text));
        exact = zm::cue::shifted_moment_exact(N, shifts);
        zm::symfunc::ValueVector scaled;
        for (const cplx& a : shifts.shifts) scaled.entries.push_back(a * static_cast<double>(N));
        leading = zm::cue::scaled_limit_series(scaled, 60);
        mc = zm::cue::mc_moment(N, shifts, samples, seed, threads);
    } else {
        std::vector<int> orders;
        std::stringstream ss(orders_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) orders.push_back(std::stoi(tok));
        exact = zm::cue::derivative_moment_exact(N, orders);
        leading = zm::cue::derivative_moment_leading(orders, N);
        mc = zm::cue::mc_moment(N, orders, samples, seed, threads);
    }
    std::printf("%-22s %s\n", "exact:", fmt_complex(exact).c_str());
    std::printf("%-22s %s   (stderr %.3g, %.3g)\n", "monte carlo:",
                fmt_complex(mc.estimate).c_str(), mc.stderr_mean.real(), mc.stderr_mean.imag());
    std::printf("%-22s %s\n", "leading order:", fmt_complex(leading).c_str());
    double dev_re = std::abs(mc.estimate.real() - exact.real());
    double dev_im = std::abs(mc.estimate.imag() - exact.imag());
    bool within = dev_re <= 3.0 * std::max(mc.stderr_mean.real(), 1e-14) &&
                  dev_im <= 3.0 * std::max(mc.stderr_mean.imag(), 1e-14);
    std::printf("within 3 sigma: %s\n", within ? "yes" : "no");
    return within ? 0 : 1;
}

int run_derive(const std::string& orders_text, std::size_t prime_count,
               const std::string& out_path, unsigned threads) {
    std::vector<int> orders;
    std::stringstream ss(orders_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) orders.push_back(std::stoi(tok));
    long total = 0;
    for (int n : orders) total += n;
    bool single = orders.size() == 1 && orders[0] >= 1 && orders[0] <= 6;
    bool pair11 = orders.size() == 2 && orders[0] == 1 && orders[1] == 1;
    if (total > 6 || (!single && !pair11)) {
        std::cerr << "derive: supported order tuples are (n) with n <= 6 and (1,1)\n";
        return 3;
    }
    zm::predict::LogPolynomial poly;
    auto gammas = zm::arith::stieltjes_upto(8);
    if (single) {
        int n = orders[0];
        poly = zm::predict::shanks_integrand(n);
        std::printf("integrand for orders (%d): degree %d in L = log(t/2pi)\n", n, poly.degree());
        std::printf("  symbolic: n! * [ A_n + (-1)^{n+1} L^{n+1}/(n+1)! "
                    "+ sum_{m=0..n} (-1)^{m+1} L^m gamma_{n-m}/(m!(n-m)!) ]\n");
        std::printf("  (A_n from the zeta'/zeta expansion, gamma_j Stieltjes)\n");
    } else {
        auto primes = zm::arith::PrimeTable::first(prime_count);
        auto tensor = zm::arith::arith_deriv_tensor(2, 3, primes, threads);
        poly = zm::predict::second_moment_integrand(tensor, gammas);
        auto check = zm::predict::second_moment_integrand_series(tensor, gammas);
        double dev = 0.0;
        for (std::size_t i = 0; i < poly.coeffs.size(); ++i)
            dev = std::max(dev, std::abs(poly.coeffs[i] - check.coeffs[i]));
        std::printf("integrand for orders (1,1): degree 3 in L = log(t/2pi), %zu primes\n",
                    prime_count);
        std::printf("  symbolic: L^3/6 + L^2 (2 g0 + A001)/2\n");
        std::printf("          + L (-8 g1 + 4 g0 A001 + A002 + 2 A011)/2\n");
        std::printf("          + (-12 g0^3 - 36 g0 g1 + 6 g2 - 24 g1 A001 + 6 g0 A002 + A003\n");
        std::printf("             + 12 g0 A011 + 3 A012 - 3 A021 + 6 A111)/6\n");
        std::printf("  transcribed vs from-scratch series derivation: max dev %.3e\n", dev);
    }
    std::printf("  numeric coefficients (c_0..c_%d):", poly.degree());
    for (double c : poly.coeffs) std::printf(" %.15g", c);
    std::printf("\n");
    // Exact closed-form integration: (1/2pi) int_1^T P(L) dt = (T/2pi) Q(log(T/2pi)) + const,
    // where the coefficient of t L^j in the antiderivative of L^m is (-1)^{m-j} m!/j!.
    std::vector<double> q(poly.coeffs.size());
    {
        int d = poly.degree();
        for (int j = 0; j <= d; ++j) {
            double acc = 0.0;
            for (int m = j; m <= d; ++m) {
                double w = 1.0;
                for (int i = j + 1; i <= m; ++i) w *= i;
                if ((m - j) % 2 == 1) w = -w;
                acc += poly.coeffs[static_cast<std::size_t>(m)] * w;
            }
            q[static_cast<std::size_t>(j)] = acc;
        }
    }
    std::printf("  integrated: (T/2pi) * [");
    for (std::size_t j = q.size(); j-- > 0;)
        std::printf(" %+.15g L^%zu", q[j], j);
    std::printf(" ] + const\n");
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) {
            std::cerr << "derive: cannot open " << out_path << "\n";
            return 1;
        }
        f << "# schema v1\n";
        f << "power,integrand_coeff,integrated_coeff\n";
        f.precision(15);
        for (std::size_t j = 0; j < poly.coeffs.size(); ++j)
            f << j << ',' << poly.coeffs[j] << ',' << q[j] << '\n';
    }
    return 0;
}

int run_zeros(std::size_t count, double max_t, const std::string& cache_path,
              const std::string& import_path, unsigned threads) {
    namespace fs = std::filesystem;
    if (!import_path.empty()) {
        std::vector<zm::zeta::ZeroRecord> zeros;
        try {
            zeros = zm::zeta::import_zero_table(import_path);
        } catch (const std::exception& e) {
            std::cerr << "zeros: import failed: " << e.what() << "\n";
            return 4;
        }
        zm::zeta::save_zero_cache(cache_path, zeros);
        std::printf("imported %zu zeros into %s\n", zeros.size(), cache_path.c_str());
        return 0;
    }
    if (fs::exists(cache_path)) {
        try {
            auto existing = zm::zeta::load_zero_cache(cache_path);
            bool satisfied = count > 0 ? existing.size() >= count
                                       : (!existing.empty() && existing.back().gamma >= max_t);
            if (satisfied) {
                std::printf("cache hit: %s already holds %zu zeros\n", cache_path.c_str(),
                            existing.size());
                return 0;
            }
        } catch (const std::exception& e) {
            std::cerr << "zeros: existing cache unreadable, recomputing (" << e.what() << ")\n";
        }
    }
    zm::zeta::ZeroSearchOptions opt;
    opt.threads = threads;
    std::vector<zm::zeta::ZeroRecord> zeros;
    try {
        zeros = count > 0 ? zm::zeta::find_zeros_count(count, opt)
                          : zm::zeta::find_zeros_max_t(max_t, opt);
    } catch (const zm::zeta::integrity_error& e) {
        std::cerr << "zeros: integrity failure: " << e.what() << "\n";
        return 1;
    }
    zm::zeta::save_zero_cache(cache_path, zeros);
    double worst_tol = 0.0;
    for (const auto& z : zeros) worst_tol = std::max(worst_tol, z.tolerance);
    std::printf("%zu zeros written to %s (first %.9f, last %.9f, worst tolerance %.1e)\n",
                zeros.size(), cache_path.c_str(), zeros.front().gamma, zeros.back().gamma,
                worst_tol);
    std::printf("blockwise counts validated against the counting function\n");
    return 0;
}

std::vector<int> parse_orders(const std::string& text) {
    std::vector<int> orders;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) orders.push_back(std::stoi(tok));
    return orders;
}

int run_sum(const std::string& orders_text, const std::string& cache_path, std::size_t stride,
            const std::string& out_path, unsigned threads) {
    namespace fs = std::filesystem;
    if (!fs::exists(cache_path)) {
        std::cerr << "sum: zero cache " << cache_path << " not found\n";
        return 5;
    }
    auto zeros = zm::zeta::load_zero_cache(cache_path);
    auto orders = parse_orders(orders_text);
    if (stride == 0) stride = zeros.size() > 10000 ? 10 : 1;  // CSV-size default
    auto trace = zm::zeta::discrete_moment(zeros, orders, threads);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "sum: cannot open " << out_path << "\n";
            return 1;
        }
        out = &file;
    }
    *out << "# schema v1\n";
    *out << "T,re_sum,im_sum\n";
    out->precision(15);
    for (std::size_t i = 0; i < trace.rows.size(); i += stride) {
        const auto& r = trace.rows[i];
        *out << r.T << ',' << r.sum.real() << ',' << r.sum.imag() << '\n';
    }
    return 0;
}

int run_compare(const std::string& orders_text, const std::string& cache_path,
                std::size_t prime_count, std::size_t stride, const std::string& out_path,
                unsigned threads) {
    namespace fs = std::filesystem;
    if (!fs::exists(cache_path)) {
        std::cerr << "compare: zero cache " << cache_path << " not found\n";
        return 5;
    }
    auto zeros = zm::zeta::load_zero_cache(cache_path);
    auto orders = parse_orders(orders_text);
    if (stride == 0) stride = zeros.size() > 10000 ? 10 : 1;  // CSV-size default
    zm::predict::LogPolynomial poly;
    try {
        if (orders.size() == 2 && orders[0] == 1 && orders[1] == 1) {
            auto primes = zm::arith::PrimeTable::first(prime_count);
            auto tensor = zm::arith::arith_deriv_tensor(2, 3, primes, threads);
            poly = zm::predict::second_moment_integrand(tensor, zm::arith::stieltjes_upto(2));
        } else {
            poly = zm::predict::integrand_for_orders(orders, nullptr, {});
        }
    } catch (const std::domain_error& e) {
        std::cerr << "compare: " << e.what() << "\n";
        return 3;
    }
    auto trace = zm::predict::compare(zm::zeta::discrete_moment(zeros, orders, threads), poly);
    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "compare: cannot open " << out_path << "\n";
            return 1;
        }
        out = &file;
    }
    *out << "# schema v1\n";
    *out << "T,re_sum,im_sum,prediction,residual_leading,residual_full\n";
    out->precision(15);
    for (std::size_t i = 0; i < trace.rows.size(); i += stride) {
        const auto& r = trace.rows[i];
        *out << r.T << ',' << r.sum.real() << ',' << r.sum.imag() << ',' << r.prediction << ','
             << r.residual_leading << ',' << r.residual_full << '\n';
    }
    if (!out_path.empty()) write_plot_script(out_path, out_path + ".gp");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CUE characteristic-polynomial moments and discrete zeta-zero moments"};
    app.require_subcommand(1);

    auto* sym = app.add_subcommand("symcheck", "randomized symmetric-identity suite");
    std::size_t sym_samples = 500;
    std::uint64_t sym_seed = kDefaultSeed;
    sym->add_option("--samples", sym_samples, "number of random instances (default 500)");
    sym->add_option("--seed", sym_seed, "RNG seed (default fixed)");

    auto* cue_cmd = app.add_subcommand("cue", "exact vs Monte Carlo CUE moments");
    int cue_N = 8;
    std::string cue_shifts, cue_orders;
    std::size_t cue_samples = 200000;
    std::uint64_t cue_seed = kDefaultSeed;
    unsigned cue_threads = 0;
    cue_cmd->add_option("--matrix-size", cue_N, "matrix size N (default 8)");
    cue_cmd->add_option("--shifts", cue_shifts, "comma-separated complex shifts a+bi");
    cue_cmd->add_option("--orders", cue_orders, "comma-separated derivative orders");
    cue_cmd->add_option("--samples", cue_samples, "Monte Carlo samples (default 200000)");
    cue_cmd->add_option("--seed", cue_seed, "RNG seed (default fixed)");
    cue_cmd->add_option("--threads", cue_threads, "worker threads (default hardware)");

    auto* derive_cmd = app.add_subcommand("derive", "moment-polynomial integrand in L");
    std::string derive_orders;
    std::size_t derive_primes = 1000;
    std::string derive_out;
    unsigned derive_threads = 0;
    derive_cmd->add_option("--orders", derive_orders, "order tuple, e.g. 1 or 1,1")->required();
    derive_cmd->add_option("--primes", derive_primes, "prime cutoff (default 1000)");
    derive_cmd->add_option("--out", derive_out, "write coefficients as CSV");
    derive_cmd->add_option("--threads", derive_threads, "worker threads");

    auto* zeros_cmd = app.add_subcommand("zeros", "compute or import zeta zeros");
    std::size_t zeros_count = 0;
    double zeros_max_t = 0.0;
    std::string zeros_cache, zeros_import;
    unsigned zeros_threads = 0;
    zeros_cmd->add_option("--count", zeros_count, "number of zeros");
    zeros_cmd->add_option("--max-t", zeros_max_t, "height limit");
    zeros_cmd->add_option("--cache", zeros_cache, "zero cache path")->required();
    zeros_cmd->add_option("--import", zeros_import, "import an external zero table");
    zeros_cmd->add_option("--threads", zeros_threads, "worker threads");

    auto* sum_cmd = app.add_subcommand("sum", "cumulative discrete moment over cached zeros");
    std::string sum_orders, sum_cache, sum_out;
    std::size_t sum_stride = 0;
    unsigned sum_threads = 0;
    sum_cmd->add_option("--orders", sum_orders, "order tuple")->required();
    sum_cmd->add_option("--cache", sum_cache, "zero cache path")->required();
    sum_cmd->add_option("--stride", sum_stride, "row stride (0 = auto: 10 beyond 1e4 zeros)");
    sum_cmd->add_option("--out", sum_out, "CSV output path (default stdout)");
    sum_cmd->add_option("--threads", sum_threads, "worker threads");

    auto* cmp_cmd = app.add_subcommand("compare", "discrete moment vs prediction CSV");
    std::string cmp_orders, cmp_cache, cmp_out;
    std::size_t cmp_primes = 1000, cmp_stride = 0;
    unsigned cmp_threads = 0;
    cmp_cmd->add_option("--orders", cmp_orders, "order tuple")->required();
    cmp_cmd->add_option("--cache", cmp_cache, "zero cache path")->required();
    cmp_cmd->add_option("--primes", cmp_primes, "prime cutoff (default 1000)");
    cmp_cmd->add_option("--stride", cmp_stride, "row stride (0 = auto: 10 beyond 1e4 zeros)");
    cmp_cmd->add_option("--out", cmp_out, "CSV output path (default stdout)");
    cmp_cmd->add_option("--threads", cmp_threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sym->parsed()) return run_symcheck(sym_samples, sym_seed);
        if (cue_cmd->parsed())
            return run_cue(cue_N, cue_shifts, cue_orders, cue_samples, cue_seed, cue_threads);
        if (derive_cmd->parsed())
            return run_derive(derive_orders, derive_primes, derive_out, derive_threads);
        if (zeros_cmd->parsed()) {
            if ((zeros_count == 0) == (zeros_max_t == 0.0) && zeros_import.empty()) {
                std::cerr << "zeros: exactly one of --count / --max-t is required\n";
                return 2;
            }
            if (zeros_count > 1000000) {
                std::cerr << "zeros: target exceeds the 1e6 cap\n";
                return 2;
            }
            return run_zeros(zeros_count, zeros_max_t, zeros_cache, zeros_import, zeros_threads);
        }
        if (sum_cmd->parsed()) return run_sum(sum_orders, sum_cache, sum_stride, sum_out, sum_threads);
        if (cmp_cmd->parsed())
            return run_compare(cmp_orders, cmp_cache, cmp_primes, cmp_stride, cmp_out,
                               cmp_threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
