#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "zm/symfunc.hpp"

using namespace zm;
using symfunc::ValueVector;

namespace {
ValueVector vv(std::initializer_list<cplx> xs) { return ValueVector(std::vector<cplx>(xs)); }
}  // namespace

TEST_SUITE("symfunc") {

TEST_CASE("elem_sym basics") {
    cplx a(1.3, -0.2), b(0.4, 0.9), c(-2.0, 0.1);
    CHECK(symfunc::elem_sym(0, vv({a, b, c})) == cplx(1.0));
    CHECK(std::abs(symfunc::elem_sym(1, vv({a, b})) - (a + b)) < 1e-15);
    CHECK(std::abs(symfunc::elem_sym(2, vv({cplx(1), cplx(2), cplx(3)})) -
                   oracle::elem_sym_enum(2, {cplx(1), cplx(2), cplx(3)})) < 1e-14);
    CHECK(std::abs(symfunc::elem_sym(2, vv({cplx(1), cplx(2), cplx(3)})) - cplx(11.0)) < 1e-12);
    CHECK_THROWS_AS(symfunc::elem_sym(3, vv({a, b})), std::domain_error);
}

TEST_CASE("elem_sym random vs enumeration") {
    std::mt19937_64 eng(1);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        int k = 1 + static_cast<int>(eng() % 8);
        ValueVector v;
        for (int i = 0; i < k; ++i) v.entries.push_back(cplx(uni(eng), uni(eng)));
        for (int j = 0; j <= k; ++j) {
            cplx got = symfunc::elem_sym(j, v);
            cplx want = oracle::elem_sym_enum(j, v.entries);
            CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("complete_homogeneous basics and recurrence vs enumeration") {
    CHECK(symfunc::complete_homogeneous(0, vv({cplx(5, 2)})) == cplx(1.0));
    cplx x(0.7, -1.1);
    CHECK(std::abs(symfunc::complete_homogeneous(2, vv({x})) - x * x) < 1e-15);
    CHECK(std::abs(symfunc::complete_homogeneous(2, vv({cplx(1), cplx(1)})) - cplx(3.0)) < 1e-14);

    std::mt19937_64 eng(2);
    std::uniform_real_distribution<double> uni(-1.5, 1.5);
    for (int trial = 0; trial < 20; ++trial) {
        int k = 1 + static_cast<int>(eng() % 4);
        ValueVector v;
        for (int i = 0; i < k; ++i) v.entries.push_back(cplx(uni(eng), uni(eng)));
        for (int m = 0; m <= 6; ++m) {
            cplx got = symfunc::complete_homogeneous(m, v);
            cplx want = oracle::complete_homogeneous_enum(m, v.entries);
            CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("Newton relation between elementary and complete") {
    std::mt19937_64 eng(3);
    std::uniform_real_distribution<double> uni(-1.5, 1.5);
    for (int trial = 0; trial < 10; ++trial) {
        int k = 2 + static_cast<int>(eng() % 4);
        ValueVector v;
        for (int i = 0; i < k; ++i) v.entries.push_back(cplx(uni(eng), uni(eng)));
        auto C = symfunc::elem_sym_all(v);
        auto h = symfunc::complete_homogeneous_upto(k, v);
        for (int m = 1; m <= k; ++m) {
            cplx acc = 0.0;
            for (int j = 0; j <= m; ++j) {
                double sign = (j % 2 == 0) ? 1.0 : -1.0;
                acc += sign * C[static_cast<std::size_t>(j)] * h[static_cast<std::size_t>(m - j)];
            }
            CHECK(std::abs(acc) < 1e-12);
        }
    }
}

TEST_CASE("vandermonde") {
    CHECK(symfunc::vandermonde(vv({cplx(3, 1)})) == cplx(1.0));
    CHECK(std::abs(symfunc::vandermonde(vv({cplx(0), cplx(1), cplx(2)})) - cplx(2.0)) < 1e-15);
    CHECK(std::abs(symfunc::vandermonde(vv({cplx(1), cplx(2), cplx(1)}))) == 0.0);

    // Against the generic determinant of the explicit Vandermonde matrix.
    std::mt19937_64 eng(4);
    std::uniform_real_distribution<double> uni(-1.2, 1.2);
    for (int trial = 0; trial < 12; ++trial) {
        int k = 2 + static_cast<int>(eng() % 7);
        ValueVector v;
        for (int i = 0; i < k; ++i) v.entries.push_back(cplx(uni(eng), uni(eng)));
        std::vector<std::vector<cplx>> M(static_cast<std::size_t>(k),
                                         std::vector<cplx>(static_cast<std::size_t>(k)));
        for (int r = 0; r < k; ++r) {
            cplx p = 1.0;
            for (int c = 0; c < k; ++c) {
                M[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = p;
                p *= v.entries[static_cast<std::size_t>(r)];
            }
        }
        cplx want = oracle::det_complex(M);
        cplx got = symfunc::vandermonde(v);
        CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("combinatorial_sum special values") {
    ValueVector v = vv({cplx(0.8, 0.3), cplx(-1.4, 0.2), cplx(0.5, -1.0)});
    CHECK(std::abs(symfunc::combinatorial_sum(0, v) - cplx(1.0)) < 1e-12);
    cplx inv_sum = 0.0;
    for (const cplx& a : v.entries) inv_sum += 1.0 / a;
    CHECK(std::abs(symfunc::combinatorial_sum(-1, v) - inv_sum) < 1e-12);
    CHECK(std::abs(symfunc::combinatorial_sum(1, vv({cplx(2), cplx(5)}))) < 1e-14);
}

TEST_CASE("combinatorial_sum closed form equals literal sum") {
    std::mt19937_64 eng(5);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    int done = 0;
    while (done < 100) {
        int k = 1 + static_cast<int>(eng() % 6);
        long n = static_cast<long>(eng() % 21) - 8;
        ValueVector v;
        for (int i = 0; i < k; ++i) v.entries.push_back(cplx(uni(eng), uni(eng)));
        if (!v.distinct() || !v.nonzero()) continue;
        ++done;
        cplx closed = symfunc::combinatorial_sum(n, v);
        cplx literal = oracle::literal_comb_sum(n, v.entries);
        CHECK(std::abs(closed - literal) <= 1e-10 * std::max(1.0, std::abs(literal)));
    }
}

TEST_CASE("combinatorial_sum rejects confluent or zero input") {
    CHECK_THROWS_AS(symfunc::combinatorial_sum(2, vv({cplx(1), cplx(1)})), std::domain_error);
    CHECK_THROWS_AS(symfunc::combinatorial_sum(2, vv({cplx(0), cplx(1)})), std::domain_error);
}

}  // TEST_SUITE
