#pragma once

#include <complex>
#include <vector>

namespace zm {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647693;

// Ordered set of complex shift parameters (the alpha_1..alpha_k of a shifted
// moment) plus the tolerance used by its distinctness predicates.
struct ShiftSet {
    std::vector<cplx> shifts;
    double eps_distinct = 1e-9;

    ShiftSet() = default;
    explicit ShiftSet(std::vector<cplx> s, double eps = 1e-9)
        : shifts(std::move(s)), eps_distinct(eps) {}

    std::size_t size() const { return shifts.size(); }

    // Pairwise |a_i - a_j| > eps.
    bool distinct() const {
        for (std::size_t i = 0; i < shifts.size(); ++i)
            for (std::size_t j = i + 1; j < shifts.size(); ++j)
                if (std::abs(shifts[i] - shifts[j]) <= eps_distinct) return false;
        return true;
    }

    // Pairwise distinct as points e^{-i a} on the unit circle, and away from 1
    // (i.e. no shift congruent to 0 mod 2*pi within eps).
    bool distinct_mod_2pi() const {
        std::vector<cplx> u;
        u.reserve(shifts.size());
        for (const cplx& a : shifts) u.push_back(std::exp(cplx(0.0, -1.0) * a));
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (std::abs(u[i] - 1.0) <= eps_distinct) return false;
            for (std::size_t j = i + 1; j < u.size(); ++j)
                if (std::abs(u[i] - u[j]) <= eps_distinct) return false;
        }
        return true;
    }
};

}  // namespace zm
