#pragma once

// Independent reference implementations used only by the tests. Everything
// here is deliberately brute force so it shares no code path with the
// library.

#include <complex>
#include <functional>
#include <vector>

#include "zm/types.hpp"

namespace oracle {

using zm::cplx;

// Elementary symmetric polynomial by subset enumeration.
inline cplx elem_sym_enum(int j, const std::vector<cplx>& v) {
    std::size_t k = v.size();
    if (j == 0) return 1.0;
    cplx acc = 0.0;
    for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
        if (__builtin_popcountll(mask) != j) continue;
        cplx prod = 1.0;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (std::size_t(1) << i)) prod *= v[i];
        acc += prod;
    }
    return acc;
}

// Complete homogeneous symmetric polynomial by monomial enumeration.
inline cplx complete_homogeneous_enum(int m, const std::vector<cplx>& v) {
    std::function<cplx(std::size_t, int)> rec = [&](std::size_t i, int deg) -> cplx {
        if (i + 1 == v.size()) {
            cplx p = 1.0;
            for (int d = 0; d < deg; ++d) p *= v[i];
            return p;
        }
        cplx acc = 0.0;
        cplx p = 1.0;
        for (int d = 0; d <= deg; ++d) {
            acc += p * rec(i + 1, deg - d);
            p *= v[i];
        }
        return acc;
    };
    return rec(0, m);
}

// Determinant of a dense complex matrix by Gaussian elimination with
// partial pivoting.
inline cplx det_complex(std::vector<std::vector<cplx>> a) {
    std::size_t n = a.size();
    cplx det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (std::abs(a[piv][col]) == 0.0) return 0.0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            cplx f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

// The literal left-hand sum of the combinatorial identity.
inline cplx literal_comb_sum(long n, const std::vector<cplx>& v) {
    cplx acc = 0.0;
    for (std::size_t l = 0; l < v.size(); ++l) {
        cplx term = std::pow(v[l], static_cast<double>(n));
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (j == l) continue;
            term *= v[j] / (v[j] - v[l]);
        }
        acc += term;
    }
    return acc;
}

// Central difference with one Richardson step: f'(x) + O(h^4).
inline cplx richardson_diff(const std::function<cplx(double)>& f, double x, double h) {
    auto cd = [&](double step) { return (f(x + step) - f(x - step)) / (2.0 * step); };
    return (4.0 * cd(h / 2.0) - cd(h)) / 3.0;
}

// Adaptive Simpson quadrature.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 28) {
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    std::function<double(double, double, double, double, double, double, int)> rec =
        [&](double lo, double hi, double flo, double fmid, double fhi, double eps,
            int d) -> double {
        double mid = 0.5 * (lo + hi);
        double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        double flm = f(lm), frm = f(rm);
        double s1 = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        double s2 = (hi - lo) / 12.0 * (flo + 4.0 * flm + 2.0 * fmid + 4.0 * frm + fhi);
        if (d <= 0 || std::abs(s2 - s1) < 15.0 * eps) return s2 + (s2 - s1) / 15.0;
        return rec(lo, mid, flo, flm, fmid, eps / 2.0, d - 1) +
               rec(mid, hi, fmid, frm, fhi, eps / 2.0, d - 1);
    };
    return rec(a, b, fa, fm, fb, tol, depth);
}

}  // namespace oracle
