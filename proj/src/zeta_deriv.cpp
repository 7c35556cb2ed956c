#include <cmath>
#include <stdexcept>

#include "zm/util.hpp"
#include "zm/zeta.hpp"

namespace zm::zeta {

namespace {
const cplx kI(0.0, 1.0);
}

std::vector<cplx> zeta_derivs_at(double t, int max_n, double radius, int nodes) {
    if (t < 2.0) throw std::domain_error("zeta_derivs_at: requires t >= 2");
    if (max_n < 0 || max_n > 6) throw std::domain_error("zeta_derivs_at: orders 0..6 supported");
    if (radius <= 0.0 || radius > 0.25)
        throw std::domain_error("zeta_derivs_at: radius must lie in (0, 1/4]");
    if (nodes < 8) throw std::domain_error("zeta_derivs_at: need at least 8 nodes");
    const cplx center(0.5, t);
    std::vector<cplx> fourier(static_cast<std::size_t>(max_n) + 1, cplx(0.0));
    for (int j = 0; j < nodes; ++j) {
        double phi = kTwoPi * j / nodes;
        cplx e = std::exp(kI * phi);
        cplx f = zeta_em(center + radius * e);
        cplx w = 1.0;  // e^{-i n phi}
        for (int n = 0; n <= max_n; ++n) {
            fourier[static_cast<std::size_t>(n)] += f * w;
            w *= std::conj(e);
        }
    }
    std::vector<cplx> out(static_cast<std::size_t>(max_n) + 1);
    double nfact = 1.0, rn = 1.0;
    for (int n = 0; n <= max_n; ++n) {
        if (n > 0) {
            nfact *= n;
            rn *= radius;
        }
        out[static_cast<std::size_t>(n)] =
            fourier[static_cast<std::size_t>(n)] / static_cast<double>(nodes) * nfact / rn;
    }
    return out;
}

cplx zeta_deriv_at(int n, double t, double radius, int nodes) {
    if (n < 0 || n > 6) throw std::domain_error("zeta_deriv_at: orders 0..6 supported");
    return zeta_derivs_at(t, n, radius, nodes)[static_cast<std::size_t>(n)];
}

MomentTrace discrete_moment(const std::vector<ZeroRecord>& zeros,
                            const std::vector<int>& orders, unsigned threads) {
    if (orders.empty()) throw std::domain_error("discrete_moment: empty order tuple");
    int max_n = 0;
    for (int n : orders) {
        if (n < 0) throw std::domain_error("discrete_moment: negative order");
        max_n = std::max(max_n, n);
    }
    std::vector<cplx> products(zeros.size());
    parallel_for(zeros.size(), threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            auto d = zeta_derivs_at(zeros[i].gamma, max_n);
            cplx prod = 1.0;
            for (int n : orders) prod *= d[static_cast<std::size_t>(n)];
            products[i] = prod;
        }
    });
    MomentTrace trace;
    trace.orders = orders;
    trace.rows.resize(zeros.size());
    long double sre = 0.0L, sim = 0.0L;
    for (std::size_t i = 0; i < zeros.size(); ++i) {
        sre += static_cast<long double>(products[i].real());
        sim += static_cast<long double>(products[i].imag());
        trace.rows[i].T = zeros[i].gamma;
        trace.rows[i].sum = cplx(static_cast<double>(sre), static_cast<double>(sim));
    }
    return trace;
}

}  // namespace zm::zeta
