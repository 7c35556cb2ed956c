#pragma once

#include <vector>

#include "zm/types.hpp"

// Exact symmetric-function and Vandermonde identities on complex values.
// All functions are pure; values are freely copyable between threads.

namespace zm::symfunc {

struct ValueVector {
    std::vector<cplx> entries;
    double eps_distinct = 1e-9;

    ValueVector() = default;
    explicit ValueVector(std::vector<cplx> e, double eps = 1e-9)
        : entries(std::move(e)), eps_distinct(eps) {}

    std::size_t size() const { return entries.size(); }
    bool distinct() const;  // pairwise |a_i - a_j| > eps_distinct
    bool nonzero() const;   // all |a_i| > eps_distinct
};

// Elementary symmetric polynomial C_j(v); C_0 = 1. Throws std::domain_error
// for j > size.
cplx elem_sym(int j, const ValueVector& v);

// All C_0..C_k at once (stable iterative product expansion).
std::vector<cplx> elem_sym_all(const ValueVector& v);

// Power sum p_j = sum a_i^j.
cplx power_sum(int j, const ValueVector& v);

// Complete homogeneous symmetric polynomial h_m(v), by the power-sum
// recurrence m h_m = sum_{j=1..m} p_j h_{m-j}, so cost is O(m k).
cplx complete_homogeneous(int m, const ValueVector& v);

// h_0..h_m in one sweep; this is the workhorse for the degree-(N-1) values
// needed by the CUE moment formulas.
std::vector<cplx> complete_homogeneous_upto(int m, const ValueVector& v);

// prod_{i<j} (v_j - v_i); 1 for a single entry.
cplx vandermonde(const ValueVector& v);

// sum_l v_l^n prod_{j!=l} v_j/(v_j - v_l) evaluated through its three-branch
// closed form:
//   n >= k        : (-1)^{k+1} h_{n-k}(v) prod v_j
//   1 <= n <= k-1 : 0
//   n <= 0        : h_{|n|}(v^{-1})
// Requires v distinct and nonzero (throws std::domain_error otherwise).
cplx combinatorial_sum(long n, const ValueVector& v);

}  // namespace zm::symfunc
