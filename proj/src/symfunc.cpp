#include "zm/symfunc.hpp"

#include <stdexcept>

namespace zm::symfunc {

bool ValueVector::distinct() const {
    for (std::size_t i = 0; i < entries.size(); ++i)
        for (std::size_t j = i + 1; j < entries.size(); ++j)
            if (std::abs(entries[i] - entries[j]) <= eps_distinct) return false;
    return true;
}

bool ValueVector::nonzero() const {
    for (const cplx& a : entries)
        if (std::abs(a) <= eps_distinct) return false;
    return true;
}

std::vector<cplx> elem_sym_all(const ValueVector& v) {
    // Expand prod (1 + a_i t) one factor at a time.
    std::vector<cplx> c(v.size() + 1, cplx(0.0));
    c[0] = 1.0;
    std::size_t used = 0;
    for (const cplx& a : v.entries) {
        ++used;
        for (std::size_t j = used; j >= 1; --j) c[j] += a * c[j - 1];
    }
    return c;
}

cplx elem_sym(int j, const ValueVector& v) {
    if (j < 0 || static_cast<std::size_t>(j) > v.size())
        throw std::domain_error("elem_sym: j out of range [0, k]");
    return elem_sym_all(v)[static_cast<std::size_t>(j)];
}

cplx power_sum(int j, const ValueVector& v) {
    cplx s = 0.0;
    for (const cplx& a : v.entries) s += std::pow(a, j);
    return s;
}

std::vector<cplx> complete_homogeneous_upto(int m, const ValueVector& v) {
    if (v.size() == 0) throw std::domain_error("complete_homogeneous: empty vector");
    if (m < 0) throw std::domain_error("complete_homogeneous: negative degree");
    std::size_t mm = static_cast<std::size_t>(m);
    // p_j for j = 1..m, computed by cumulative multiplication per entry.
    std::vector<cplx> p(mm + 1, cplx(0.0));
    for (const cplx& a : v.entries) {
        cplx pw = 1.0;
        for (std::size_t j = 1; j <= mm; ++j) {
            pw *= a;
            p[j] += pw;
        }
    }
    std::vector<cplx> h(mm + 1, cplx(0.0));
    h[0] = 1.0;
    for (std::size_t d = 1; d <= mm; ++d) {
        cplx acc = 0.0;
        for (std::size_t j = 1; j <= d; ++j) acc += p[j] * h[d - j];
        h[d] = acc / static_cast<double>(d);
    }
    return h;
}

cplx complete_homogeneous(int m, const ValueVector& v) {
    return complete_homogeneous_upto(m, v).back();
}

cplx vandermonde(const ValueVector& v) {
    cplx prod = 1.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            prod *= v.entries[j] - v.entries[i];
    return prod;
}

cplx combinatorial_sum(long n, const ValueVector& v) {
    if (!v.distinct() || !v.nonzero())
        throw std::domain_error(
            "combinatorial_sum: entries must be pairwise distinct and nonzero");
    long k = static_cast<long>(v.size());
    if (n >= k) {
        cplx prod = 1.0;
        for (const cplx& a : v.entries) prod *= a;
        double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
        return sign * complete_homogeneous(static_cast<int>(n - k), v) * prod;
    }
    if (n >= 1) return 0.0;
    ValueVector inv;
    inv.eps_distinct = v.eps_distinct;
    inv.entries.reserve(v.size());
    for (const cplx& a : v.entries) inv.entries.push_back(1.0 / a);
    return complete_homogeneous(static_cast<int>(-n), inv);
}

}  // namespace zm::symfunc
