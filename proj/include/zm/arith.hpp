#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "zm/types.hpp"

// Number-theoretic constants and prime-product arithmetic factors.

namespace zm::arith {

struct PrimeTable {
    std::vector<long> primes;  // ascending, starting at 2

    static PrimeTable first(std::size_t count);
    std::size_t size() const { return primes.size(); }
};

// Stieltjes constant gamma_n, 0 <= n <= 8, to >= 10 significant digits.
// Computed once by an Euler-Maclaurin-corrected limit of
// sum_{k<=m} log^n k / k - log^{n+1} m / (n+1), then cached.
double stieltjes(int n);
std::vector<double> stieltjes_upto(int n);  // gamma_0..gamma_n

// Partial derivatives d^i/da^i d^j/db^j d^m/dd^m of the arithmetic factor
// A_{a(,b)}(d) at the origin, i+j+m <= max_order. For k=1 the j slot is 0.
struct ArithDerivTensor {
    int k = 2;
    int max_order = 3;
    std::size_t prime_cutoff = 1000;
    std::map<std::array<int, 3>, double> values;

    double at(int i, int j, int m) const;  // throws outside i+j+m <= max_order
};

// A_{alpha_1..alpha_k}(delta) = prod_p [1 + F_1(p) + .. + F_k(p)] /
// prod_j (1 - p^{-(1+alpha_j)}), with
// F_m(p) = (-1)^m sum_{|J|=m} p^{-(m + (m-1) delta + sum_{j in J} alpha_j)}.
// Requires |Re alpha_j| < 1/4 and |Re delta| < 1/4.
cplx arith_factor(const ShiftSet& shifts, cplx delta, const PrimeTable& primes);

// Per prime, log of the local factor expanded as a series in (alpha, beta,
// delta) to total degree max_order, summed over the table, exponentiated, and
// read off as partial derivatives. k must be 1 or 2, max_order <= 3, and the
// table must hold at least 10 primes.
ArithDerivTensor arith_deriv_tensor(int k, int max_order, const PrimeTable& primes,
                                    unsigned threads = 0);

// Plain-text caches, 15 significant digits.
void save_stieltjes_cache(const std::string& path, int max_n);
std::vector<std::pair<int, double>> load_stieltjes_cache(const std::string& path);
void save_tensor_cache(const std::string& path, const ArithDerivTensor& t);
ArithDerivTensor load_tensor_cache(const std::string& path);

}  // namespace zm::arith
