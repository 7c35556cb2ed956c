#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "zm/util.hpp"
#include "zm/zeta.hpp"

// Zero localization. Gram points partition the line into intervals carrying
// one expected zero each; blocks bounded by "good" Gram points (where
// (-1)^n Z(g_n) > 0) carry exactly as many zeros as intervals at these
// heights, so counting sign changes per block against the Gram indices gives
// a hard integrity check. Brackets are refined on the Riemann-Siegel Z and
// polished with the Euler-Maclaurin Z.

namespace zm::zeta {

namespace {

double brent_root(const std::function<double(double)>& f, double a, double b, double fa,
                  double fb, double tol, int max_iter = 200) {
    // Standard Brent-Dekker.
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        double tol1 = 2.0 * 1e-16 * std::abs(b) + 0.5 * tol;
        double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                double r = fb / fc;
                q = fa / fc;
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
                q = (q - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

// Refine one bracketed sign change to a ZeroRecord.
ZeroRecord refine_zero(double lo, double hi, double zlo, double zhi) {
    double g = brent_root([](double t) { return hardy_z(t); }, lo, hi, zlo, zhi, 1e-12);
    // Polish on the Euler-Maclaurin Z, which removes the Riemann-Siegel
    // truncation bias. The slope comes from one central difference (accurate
    // to ~1e-8 relative here) and is reused; re-estimating it from secant
    // updates after convergence would only measure evaluation noise.
    const double h = 1e-5;
    double slope = (hardy_z_em(g + h) - hardy_z_em(g - h)) / (2.0 * h);
    if (slope == 0.0) slope = 1e-3;
    double gamma = g;
    double zc = hardy_z_em(gamma);
    for (int it = 0; it < 3; ++it) {
        double step = zc / slope;
        gamma -= step;
        zc = hardy_z_em(gamma);
        if (std::abs(step) < 1e-13) break;
    }
    ZeroRecord r;
    r.gamma = gamma;
    r.tolerance = std::max(3.0 * std::abs(zc / slope), 1e-12);
    return r;
}

struct Block {
    long lo_index;  // good Gram index at the left edge
    long hi_index;  // good Gram index at the right edge
    double lo_t, hi_t;
    std::vector<double> inner_grams;  // bad Gram points strictly inside
};

// Find exactly `expected` sign changes in [lo, hi] by progressive refinement.
std::vector<std::pair<double, double>> bracket_signs(const Block& blk, long expected) {
    std::vector<double> knots;
    knots.push_back(blk.lo_t);
    for (double g : blk.inner_grams) knots.push_back(g);
    knots.push_back(blk.hi_t);
    for (int pieces = 4; pieces <= 4096; pieces *= 2) {
        std::vector<std::pair<double, double>> found;
        for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
            double a = knots[i], b = knots[i + 1];
            double fa = hardy_z(a);
            for (int j = 1; j <= pieces; ++j) {
                double x = a + (b - a) * j / pieces;
                double fx = hardy_z(x);
                if ((fa > 0.0) != (fx > 0.0)) found.emplace_back(a + (b - a) * (j - 1) / pieces, x);
                fa = fx;
            }
        }
        if (static_cast<long>(found.size()) == expected) return found;
        if (static_cast<long>(found.size()) > expected) {
            std::ostringstream msg;
            msg << "zero search: Gram block [" << blk.lo_index << ", " << blk.hi_index
                << "] (t in [" << blk.lo_t << ", " << blk.hi_t << "]) shows "
                << found.size() << " sign changes, expected " << expected;
            throw integrity_error(msg.str(), blk.lo_index, blk.hi_index);
        }
    }
    std::ostringstream msg;
    msg << "zero search: Gram block [" << blk.lo_index << ", " << blk.hi_index << "] (t in ["
        << blk.lo_t << ", " << blk.hi_t << "]) still missing sign changes at maximum "
        << "subdivision; expected " << expected;
    throw integrity_error(msg.str(), blk.lo_index, blk.hi_index);
}

std::vector<ZeroRecord> find_zeros_impl(std::size_t count_limit, double t_limit,
                                        ZeroSearchOptions opt) {
    // Gram index budget: one zero per Gram interval on average, with margin
    // so the final block can still close on a good Gram point.
    long n_max;
    if (count_limit > 0) {
        n_max = static_cast<long>(count_limit) + 8;
    } else {
        n_max = static_cast<long>(std::floor(riemann_siegel_theta(t_limit) / kPi)) + 8;
    }

    std::vector<double> grams(static_cast<std::size_t>(n_max + 2));  // g_{-1}..g_{n_max}
    std::vector<double> zvals(grams.size());
    parallel_for(grams.size(), opt.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            grams[i] = gram_point(static_cast<long>(i) - 1);
            zvals[i] = hardy_z(grams[i]);
        }
    });
    auto good = [&](std::size_t i) {
        long n = static_cast<long>(i) - 1;
        double sign = (((n % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
        return sign * zvals[i] > 0.0;
    };

    // Build blocks between consecutive good Gram points.
    std::vector<Block> blocks;
    std::size_t i = 0;
    while (i < grams.size() && !good(i)) ++i;
    if (i != 0) {
        // The left anchor g_{-1} is expected to be good at these heights; if
        // not, fall back to starting at the first good point (zeros below it
        // would be missed, so flag it).
        if (i >= grams.size())
            throw integrity_error("zero search: no good Gram point found", -1, n_max);
    }
    std::size_t left = i;
    for (std::size_t j = left + 1; j < grams.size(); ++j) {
        if (!good(j)) continue;
        Block blk;
        blk.lo_index = static_cast<long>(left) - 1;
        blk.hi_index = static_cast<long>(j) - 1;
        blk.lo_t = grams[left];
        blk.hi_t = grams[j];
        for (std::size_t m = left + 1; m < j; ++m) blk.inner_grams.push_back(grams[m]);
        blocks.push_back(std::move(blk));
        left = j;
    }

    // Locate and refine per block, in parallel, stitched back in order.
    std::vector<std::vector<ZeroRecord>> per_block(blocks.size());
    parallel_for(blocks.size(), opt.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t bi = b; bi < e; ++bi) {
            const Block& blk = blocks[bi];
            long expected = blk.hi_index - blk.lo_index;
            auto brackets = bracket_signs(blk, expected);
            std::vector<ZeroRecord> zs;
            zs.reserve(brackets.size());
            for (auto& [lo, hi] : brackets)
                zs.push_back(refine_zero(lo, hi, hardy_z(lo), hardy_z(hi)));
            per_block[bi] = std::move(zs);
        }
    });

    std::vector<ZeroRecord> zeros;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        // Hard check: cumulative count at each good Gram boundary must equal
        // the Gram index plus one.
        for (const auto& z : per_block[bi]) {
            ZeroRecord r = z;
            r.index = zeros.size() + 1;
            zeros.push_back(r);
        }
        long boundary_count = blocks[bi].hi_index + 1;
        if (static_cast<long>(zeros.size()) != boundary_count) {
            std::ostringstream msg;
            msg << "zero search: count " << zeros.size() << " below Gram point g_"
                << blocks[bi].hi_index << " disagrees with counting function value "
                << boundary_count;
            throw integrity_error(msg.str(), blocks[bi].lo_index, blocks[bi].hi_index);
        }
        if (count_limit > 0 && zeros.size() >= count_limit) break;
        if (t_limit > 0 && zeros.back().gamma > t_limit) break;
    }

    if (count_limit > 0) {
        if (zeros.size() < count_limit)
            throw integrity_error("zero search: fewer zeros found than requested", -1, n_max);
        zeros.resize(count_limit);
    } else {
        while (!zeros.empty() && zeros.back().gamma > t_limit) zeros.pop_back();
    }
    for (std::size_t j = 1; j < zeros.size(); ++j)
        if (zeros[j].gamma <= zeros[j - 1].gamma)
            throw integrity_error("zero search: ordinates not strictly increasing", -1, n_max);
    return zeros;
}

}  // namespace

double gram_point(long n) {
    if (n < -1) throw std::domain_error("gram_point: n >= -1 required");
    double target = static_cast<double>(n) * kPi;
    // theta is increasing beyond its minimum at t = 2 pi; bracket then polish.
    double lo = 7.0, hi = 20.0;
    while (riemann_siegel_theta(hi) < target) {
        lo = hi;
        hi *= 1.5;
    }
    for (int it = 0; it < 60; ++it) {
        double mid = 0.5 * (lo + hi);
        if (riemann_siegel_theta(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    double g = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it)
        g -= (riemann_siegel_theta(g) - target) / riemann_siegel_theta_deriv(g);
    return g;
}

std::vector<ZeroRecord> find_zeros_count(std::size_t count, ZeroSearchOptions opt) {
    if (count == 0) throw std::domain_error("find_zeros: count must be positive");
    return find_zeros_impl(count, 0.0, opt);
}

std::vector<ZeroRecord> find_zeros_max_t(double max_t, ZeroSearchOptions opt) {
    if (max_t <= 14.0) throw std::domain_error("find_zeros: max_t must exceed 14");
    return find_zeros_impl(0, max_t, opt);
}

void save_zero_cache(const std::string& path, const std::vector<ZeroRecord>& zeros) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << "# zeta-zeros v1\n";
    f.precision(15);
    for (const auto& z : zeros) f << z.index << '\t' << z.gamma << '\n';
}

namespace {

std::vector<ZeroRecord> parse_zero_lines(std::istream& in, const std::string& path) {
    std::vector<ZeroRecord> zeros;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::size_t idx;
        double gamma;
        if (!(ss >> idx >> gamma)) {
            std::ostringstream msg;
            msg << path << ":" << lineno << ": malformed zero record '" << line << "'";
            throw std::runtime_error(msg.str());
        }
        std::string rest;
        if (ss >> rest) {
            std::ostringstream msg;
            msg << path << ":" << lineno << ": trailing content '" << rest << "'";
            throw std::runtime_error(msg.str());
        }
        ZeroRecord r;
        r.index = idx;
        r.gamma = gamma;
        r.tolerance = 1e-9;
        zeros.push_back(r);
    }
    for (std::size_t j = 0; j < zeros.size(); ++j) {
        if (zeros[j].index != j + 1)
            throw std::runtime_error(path + ": zero indices must be consecutive from 1");
        if (j > 0 && zeros[j].gamma <= zeros[j - 1].gamma)
            throw std::runtime_error(path + ": ordinates must be strictly increasing");
    }
    return zeros;
}

}  // namespace

std::vector<ZeroRecord> load_zero_cache(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::string header;
    std::getline(f, header);
    if (header != "# zeta-zeros v1")
        throw std::runtime_error(path + ": bad zero cache header");
    return parse_zero_lines(f, path);
}

std::vector<ZeroRecord> import_zero_table(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    // Same format; the header line is optional for imports (parse_zero_lines
    // skips comment lines anyway).
    auto zeros = parse_zero_lines(f, path);
    // Spot check against the counting function: N(gamma) must be near
    // theta(gamma)/pi + 1 (the S(T) fluctuation is below 3 at these heights).
    for (const auto& z : zeros) {
        if (z.gamma < 10.0) throw std::runtime_error(path + ": ordinate below first zero");
        double n_main = riemann_siegel_theta(z.gamma) / kPi + 1.0;
        if (std::abs(n_main - static_cast<double>(z.index)) > 3.5) {
            std::ostringstream msg;
            msg << path << ": zero #" << z.index << " at " << z.gamma
                << " is inconsistent with the counting function (" << n_main << ")";
            throw std::runtime_error(msg.str());
        }
    }
    return zeros;
}

}  // namespace zm::zeta
