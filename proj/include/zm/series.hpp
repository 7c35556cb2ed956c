#pragma once

#include <string>
#include <vector>

#include "zm/types.hpp"

// Truncated multivariate Laurent series over complex coefficients.
//
// A series lives in a rectangular exponent box: per variable, exponents run
// from -pole_order to +max_degree. Coefficients outside the box on the high
// side are truncated away; a multiplication that would push a nonzero
// coefficient below a variable's pole_order throws (losing a pole silently
// would corrupt everything downstream, while dropping high-degree terms is
// just truncation).
//
// Series are immutable values once built; all operations return new objects
// and are safe to share across threads.

namespace zm::series {

struct VarSpec {
    std::string name;
    int pole_order = 1;  // largest allowed negative exponent (as magnitude)
    int max_degree = 6;  // largest kept positive exponent
};

class SeriesBox {
  public:
    SeriesBox() = default;
    explicit SeriesBox(std::vector<VarSpec> vars);

    std::size_t nvars() const { return vars_.size(); }
    const std::vector<VarSpec>& vars() const { return vars_; }
    int index_of(const std::string& name) const;  // -1 if absent
    std::size_t span(std::size_t v) const;        // pole + degree + 1
    std::size_t total_size() const;
    bool operator==(const SeriesBox& o) const;

    // Smallest box containing both (union of variables, max of ranges).
    static SeriesBox merged(const SeriesBox& a, const SeriesBox& b);

  private:
    std::vector<VarSpec> vars_;
};

class TruncSeries {
  public:
    TruncSeries() = default;
    explicit TruncSeries(SeriesBox box);

    static TruncSeries constant(SeriesBox box, cplx c);
    // Single monomial prod var_i^{e_i}.
    static TruncSeries monomial(SeriesBox box, const std::vector<int>& exps, cplx c);

    const SeriesBox& box() const { return box_; }

    // Stored coefficient; throws std::domain_error for tuples outside the box
    // (distinguishing "zero" from "not computed").
    cplx coefficient(const std::vector<int>& exps) const;
    void set_coefficient(const std::vector<int>& exps, cplx c);

    TruncSeries embedded(const SeriesBox& target) const;      // into a superset box
    TruncSeries renamed(const std::string& from, const std::string& to) const;
    TruncSeries substituted_zero(const std::string& var) const;  // set var = 0, drop it
    // Map var -> -var (coefficients flip sign with exponent parity).
    TruncSeries negated_variable(const std::string& var) const;

    TruncSeries operator-() const;
    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator*(cplx s, const TruncSeries& a);

    // Requires the lowest-order term (by total degree, then lex) to be a
    // monomial in at most one variable that divides every stored term.
    // Throws std::domain_error otherwise, or if the leading coefficient is
    // below 1e-300 (singular).
    TruncSeries reciprocal() const;

    TruncSeries exp() const;  // requires zero constant term and no poles
    TruncSeries log() const;  // requires unit constant term and no poles

    TruncSeries derivative(const std::string& var) const;

    double max_abs_coeff() const;
    // Largest |coefficient| over tuples with any negative exponent. The
    // Ratios-pipeline assembles objects whose poles must cancel; this is the
    // hook the cancellation assertions use.
    double max_abs_singular_coeff() const;

    // Enumerates stored nonzero coefficients as (exponent tuple, value).
    std::vector<std::pair<std::vector<int>, cplx>> terms() const;

  private:
    SeriesBox box_;
    std::vector<cplx> coef_;  // dense, mixed-radix indexed

    std::size_t flat_index(const std::vector<int>& exps) const;
    friend TruncSeries mul_impl(const TruncSeries& a, const TruncSeries& b);
};

// --- domain-specific builders -----------------------------------------------

// zeta(1+x) = 1/x + sum_{n>=0} (-1)^n gamma_n x^n / n!, truncated at x^order.
// Stieltjes constants come from zm::arith.
TruncSeries zeta_laurent(int order);

// zeta'/zeta(1+x) = -1/x + sum A_n x^n, derived as d/dx log(x*zeta(1+x)) - 1/x.
// The A_n are never hardcoded.
TruncSeries zeta_logderiv_laurent(int order);

// (t/2pi)^{-alpha} = sum_j (-1)^j alpha^j L^j / j!, L a formal variable, in
// variables ("alpha", "L").
TruncSeries t_power_expansion(int order);

// 1/(hi - lo) expanded for |lo| < |hi|: sum_{n>=0} lo^n hi^{-n-1}, with n
// running to the smaller of lo's max_degree and hi's pole_order - 1.
TruncSeries inverse_difference(const SeriesBox& box, const std::string& var_hi,
                               const std::string& var_lo);

TruncSeries pow(const TruncSeries& s, int n);

}  // namespace zm::series
