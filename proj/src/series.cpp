#include "zm/series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "zm/arith.hpp"

namespace zm::series {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

// --- SeriesBox ---------------------------------------------------------------

SeriesBox::SeriesBox(std::vector<VarSpec> vars) : vars_(std::move(vars)) {
    for (const auto& v : vars_)
        if (v.pole_order < 0 || v.max_degree < 0)
            throw std::domain_error("SeriesBox: negative pole order or degree");
    for (std::size_t i = 0; i < vars_.size(); ++i)
        for (std::size_t j = i + 1; j < vars_.size(); ++j)
            if (vars_[i].name == vars_[j].name)
                throw std::domain_error("SeriesBox: duplicate variable " + vars_[i].name);
}

int SeriesBox::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name == name) return static_cast<int>(i);
    return -1;
}

std::size_t SeriesBox::span(std::size_t v) const {
    return static_cast<std::size_t>(vars_[v].pole_order + vars_[v].max_degree + 1);
}

std::size_t SeriesBox::total_size() const {
    std::size_t n = 1;
    for (std::size_t v = 0; v < vars_.size(); ++v) n *= span(v);
    return n;
}

bool SeriesBox::operator==(const SeriesBox& o) const {
    if (vars_.size() != o.vars_.size()) return false;
    for (std::size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i].name != o.vars_[i].name || vars_[i].pole_order != o.vars_[i].pole_order ||
            vars_[i].max_degree != o.vars_[i].max_degree)
            return false;
    return true;
}

SeriesBox SeriesBox::merged(const SeriesBox& a, const SeriesBox& b) {
    std::vector<VarSpec> out = a.vars_;
    for (const auto& vb : b.vars_) {
        int i = -1;
        for (std::size_t j = 0; j < out.size(); ++j)
            if (out[j].name == vb.name) i = static_cast<int>(j);
        if (i < 0) {
            out.push_back(vb);
        } else {
            out[static_cast<std::size_t>(i)].pole_order =
                std::max(out[static_cast<std::size_t>(i)].pole_order, vb.pole_order);
            out[static_cast<std::size_t>(i)].max_degree =
                std::max(out[static_cast<std::size_t>(i)].max_degree, vb.max_degree);
        }
    }
    return SeriesBox(std::move(out));
}

// --- TruncSeries basics ------------------------------------------------------

TruncSeries::TruncSeries(SeriesBox box) : box_(std::move(box)) {
    coef_.assign(box_.total_size(), cplx(0.0));
}

TruncSeries TruncSeries::constant(SeriesBox box, cplx c) {
    TruncSeries s(std::move(box));
    s.set_coefficient(std::vector<int>(s.box_.nvars(), 0), c);
    return s;
}

TruncSeries TruncSeries::monomial(SeriesBox box, const std::vector<int>& exps, cplx c) {
    TruncSeries s(std::move(box));
    s.set_coefficient(exps, c);
    return s;
}

std::size_t TruncSeries::flat_index(const std::vector<int>& exps) const {
    if (exps.size() != box_.nvars())
        throw std::domain_error("TruncSeries: exponent tuple arity mismatch");
    std::size_t idx = 0;
    for (std::size_t v = 0; v < exps.size(); ++v) {
        const VarSpec& spec = box_.vars()[v];
        if (exps[v] < -spec.pole_order || exps[v] > spec.max_degree)
            throw std::domain_error("TruncSeries: exponent of " + spec.name +
                                    " outside the declared box");
        idx = idx * box_.span(v) + static_cast<std::size_t>(exps[v] + spec.pole_order);
    }
    return idx;
}

cplx TruncSeries::coefficient(const std::vector<int>& exps) const {
    return coef_[flat_index(exps)];
}

void TruncSeries::set_coefficient(const std::vector<int>& exps, cplx c) {
    coef_[flat_index(exps)] = c;
}

std::vector<std::pair<std::vector<int>, cplx>> TruncSeries::terms() const {
    std::vector<std::pair<std::vector<int>, cplx>> out;
    std::vector<int> e(box_.nvars(), 0);
    for (std::size_t idx = 0; idx < coef_.size(); ++idx) {
        if (coef_[idx] != cplx(0.0)) {
            std::size_t rem = idx;
            for (std::size_t v = box_.nvars(); v-- > 0;) {
                std::size_t sp = box_.span(v);
                e[v] = static_cast<int>(rem % sp) - box_.vars()[v].pole_order;
                rem /= sp;
            }
            out.emplace_back(e, coef_[idx]);
        }
    }
    return out;
}

TruncSeries TruncSeries::embedded(const SeriesBox& target) const {
    // Every variable of *this must exist in target with at least our range.
    for (const auto& v : box_.vars()) {
        int i = target.index_of(v.name);
        if (i < 0 || target.vars()[static_cast<std::size_t>(i)].pole_order < v.pole_order ||
            target.vars()[static_cast<std::size_t>(i)].max_degree < v.max_degree)
            throw std::domain_error("TruncSeries::embedded: target box does not contain " +
                                    v.name);
    }
    TruncSeries out(target);
    std::vector<int> te(target.nvars(), 0);
    for (const auto& [e, c] : terms()) {
        std::fill(te.begin(), te.end(), 0);
        for (std::size_t v = 0; v < e.size(); ++v)
            te[static_cast<std::size_t>(target.index_of(box_.vars()[v].name))] = e[v];
        out.set_coefficient(te, c);
    }
    return out;
}

TruncSeries TruncSeries::renamed(const std::string& from, const std::string& to) const {
    std::vector<VarSpec> vs = box_.vars();
    bool hit = false;
    for (auto& v : vs) {
        if (v.name == from) { v.name = to; hit = true; }
    }
    if (!hit) throw std::domain_error("TruncSeries::renamed: no variable " + from);
    TruncSeries out = *this;
    out.box_ = SeriesBox(std::move(vs));
    return out;
}

TruncSeries TruncSeries::substituted_zero(const std::string& var) const {
    int vi = box_.index_of(var);
    if (vi < 0) throw std::domain_error("TruncSeries::substituted_zero: no variable " + var);
    std::vector<VarSpec> vs;
    for (const auto& v : box_.vars())
        if (v.name != var) vs.push_back(v);
    TruncSeries out{SeriesBox(std::move(vs))};
    for (const auto& [e, c] : terms()) {
        if (e[static_cast<std::size_t>(vi)] != 0) continue;
        std::vector<int> ne;
        for (std::size_t v = 0; v < e.size(); ++v)
            if (static_cast<int>(v) != vi) ne.push_back(e[v]);
        out.set_coefficient(ne, c);
    }
    return out;
}

TruncSeries TruncSeries::negated_variable(const std::string& var) const {
    int vi = box_.index_of(var);
    if (vi < 0) throw std::domain_error("TruncSeries::negated_variable: no variable " + var);
    TruncSeries out(box_);
    for (const auto& [e, c] : terms()) {
        double sign = (e[static_cast<std::size_t>(vi)] % 2 == 0) ? 1.0 : -1.0;
        out.set_coefficient(e, sign * c);
    }
    return out;
}

// --- arithmetic --------------------------------------------------------------

TruncSeries TruncSeries::operator-() const {
    TruncSeries out = *this;
    for (auto& c : out.coef_) c = -c;
    return out;
}

TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
    SeriesBox box = SeriesBox::merged(a.box(), b.box());
    TruncSeries ea = a.embedded(box), eb = b.embedded(box);
    for (std::size_t i = 0; i < ea.coef_.size(); ++i) ea.coef_[i] += eb.coef_[i];
    return ea;
}

TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) { return a + (-b); }

TruncSeries operator*(cplx s, const TruncSeries& a) {
    TruncSeries out = a;
    for (auto& c : out.coef_) c *= s;
    return out;
}

TruncSeries mul_impl(const TruncSeries& a, const TruncSeries& b) {
    SeriesBox box = SeriesBox::merged(a.box(), b.box());
    TruncSeries ea = a.embedded(box), eb = b.embedded(box);
    auto ta = ea.terms();
    auto tb = eb.terms();
    TruncSeries out(box);
    // Contributions that would land below a pole cap are collected and must
    // net out to ~0, otherwise the product genuinely exceeds the cap.
    std::map<std::vector<int>, cplx> below;
    double scale = 0.0;
    std::vector<int> e(box.nvars());
    for (const auto& [ea_t, ca] : ta) {
        for (const auto& [eb_t, cb] : tb) {
            bool high = false, low = false;
            for (std::size_t v = 0; v < box.nvars(); ++v) {
                e[v] = ea_t[v] + eb_t[v];
                if (e[v] > box.vars()[v].max_degree) high = true;
                if (e[v] < -box.vars()[v].pole_order) low = true;
            }
            cplx prod = ca * cb;
            scale = std::max(scale, std::abs(prod));
            if (low) {
                below[e] += prod;
            } else if (!high) {
                out.coef_[out.flat_index(e)] += prod;
            }
        }
    }
    for (const auto& [et, c] : below) {
        if (std::abs(c) > 1e-12 * std::max(1.0, scale)) {
            const auto& vs = box.vars();
            std::string which;
            for (std::size_t v = 0; v < vs.size(); ++v)
                if (et[v] < -vs[v].pole_order) which += (which.empty() ? "" : ",") + vs[v].name;
            throw std::domain_error("TruncSeries: product pole order exceeds cap for " + which);
        }
    }
    return out;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) { return mul_impl(a, b); }

TruncSeries pow(const TruncSeries& s, int n) {
    if (n < 0) throw std::domain_error("series::pow: negative exponent");
    TruncSeries out = TruncSeries::constant(s.box(), 1.0);
    for (int i = 0; i < n; ++i) out = out * s;
    return out;
}

// --- reciprocal, exp, log ----------------------------------------------------

TruncSeries TruncSeries::reciprocal() const {
    auto ts = terms();
    if (ts.empty()) throw std::domain_error("reciprocal: zero series");
    // Lowest term under (total degree, then lex).
    auto total = [](const std::vector<int>& e) {
        int t = 0;
        for (int x : e) t += x;
        return t;
    };
    const std::vector<int>* lead = &ts[0].first;
    cplx lead_c = ts[0].second;
    for (const auto& [e, c] : ts) {
        int te = total(e), tl = total(*lead);
        if (te < tl || (te == tl && e < *lead)) { lead = &e; lead_c = c; }
    }
    std::vector<int> le = *lead;
    int nonzero_vars = 0;
    for (int x : le)
        if (x != 0) ++nonzero_vars;
    if (nonzero_vars > 1)
        throw std::domain_error("reciprocal: leading term involves several variables");
    for (const auto& [e, c] : ts)
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v] < le[v])
                throw std::domain_error("reciprocal: leading term does not divide the support");
    if (std::abs(lead_c) < 1e-300) throw std::domain_error("reciprocal: singular leading term");

    // Factor out the leading monomial: this = lead_c * x^le * (1 + v).
    std::vector<int> neg_le(le.size());
    for (std::size_t v = 0; v < le.size(); ++v) neg_le[v] = -le[v];
    // u := this / (lead_c x^le), computed by exponent shift. Terms pushed
    // past a max_degree influence only coefficients beyond the box, so they
    // are truncated like any other high-order term.
    TruncSeries u(box_);
    for (const auto& [e, c] : ts) {
        std::vector<int> ne(e.size());
        bool high = false;
        for (std::size_t v = 0; v < e.size(); ++v) {
            ne[v] = e[v] - le[v];
            if (ne[v] > box_.vars()[v].max_degree) high = true;
        }
        if (!high) u.set_coefficient(ne, c / lead_c);
    }
    std::vector<int> zero(le.size(), 0);
    TruncSeries v = u - TruncSeries::constant(box_, 1.0);
    // Neumann series sum (-v)^n; v has min total degree >= 1 so it nilpotizes.
    int span_total = 0;
    for (const auto& vs : box_.vars()) span_total += vs.pole_order + vs.max_degree;
    TruncSeries acc = TruncSeries::constant(box_, 1.0);
    TruncSeries term = TruncSeries::constant(box_, 1.0);
    for (int n = 1; n <= span_total; ++n) {
        term = term * v;
        if (term.max_abs_coeff() == 0.0) break;
        acc = (n % 2 == 0) ? acc + term : acc - term;
    }
    // Result = (1/lead_c) x^{-le} * acc.
    TruncSeries shift = TruncSeries::monomial(box_, neg_le, 1.0 / lead_c);
    return shift * acc;
}

TruncSeries TruncSeries::exp() const {
    std::vector<int> zero(box_.nvars(), 0);
    if (std::abs(coefficient(zero)) > 1e-9)
        throw std::domain_error("exp: constant term must be zero");
    for (const auto& [e, c] : terms()) {
        (void)c;
        for (int x : e)
            if (x < 0) throw std::domain_error("exp: input must have no poles");
    }
    int span_total = 0;
    for (const auto& vs : box_.vars()) span_total += vs.max_degree;
    TruncSeries acc = TruncSeries::constant(box_, 1.0);
    TruncSeries term = TruncSeries::constant(box_, 1.0);
    for (int n = 1; n <= span_total; ++n) {
        term = term * *this;
        if (term.max_abs_coeff() == 0.0) break;
        acc = acc + (cplx(1.0 / factorial(n)) * term);
    }
    return acc;
}

TruncSeries TruncSeries::log() const {
    std::vector<int> zero(box_.nvars(), 0);
    if (std::abs(coefficient(zero) - 1.0) > 1e-9)
        throw std::domain_error("log: constant term must be one");
    for (const auto& [e, c] : terms()) {
        (void)c;
        for (int x : e)
            if (x < 0) throw std::domain_error("log: input must have no poles");
    }
    TruncSeries v = *this - TruncSeries::constant(box_, 1.0);
    int span_total = 0;
    for (const auto& vs : box_.vars()) span_total += vs.max_degree;
    TruncSeries acc(box_);
    TruncSeries term = TruncSeries::constant(box_, 1.0);
    for (int n = 1; n <= span_total; ++n) {
        term = term * v;
        if (term.max_abs_coeff() == 0.0) break;
        double sign = (n % 2 == 1) ? 1.0 : -1.0;
        acc = acc + (cplx(sign / n) * term);
    }
    return acc;
}

TruncSeries TruncSeries::derivative(const std::string& var) const {
    int vi = box_.index_of(var);
    if (vi < 0) throw std::domain_error("derivative: no variable " + var);
    // d/dx x^e = e x^{e-1}; the pole may deepen by one, so widen the box.
    std::vector<VarSpec> vs = box_.vars();
    vs[static_cast<std::size_t>(vi)].pole_order += 1;
    TruncSeries out{SeriesBox(std::move(vs))};
    for (const auto& [e, c] : terms()) {
        int ev = e[static_cast<std::size_t>(vi)];
        if (ev == 0) continue;
        std::vector<int> ne = e;
        ne[static_cast<std::size_t>(vi)] = ev - 1;
        out.set_coefficient(ne, c * static_cast<double>(ev));
    }
    return out;
}

double TruncSeries::max_abs_coeff() const {
    double m = 0.0;
    for (const cplx& c : coef_) m = std::max(m, std::abs(c));
    return m;
}

double TruncSeries::max_abs_singular_coeff() const {
    double m = 0.0;
    for (const auto& [e, c] : terms())
        for (int x : e)
            if (x < 0) { m = std::max(m, std::abs(c)); break; }
    return m;
}

// --- builders ----------------------------------------------------------------

TruncSeries zeta_laurent(int order) {
    if (order < 0) throw std::domain_error("zeta_laurent: negative order");
    SeriesBox box({VarSpec{"x", 1, order}});
    TruncSeries s(box);
    s.set_coefficient({-1}, 1.0);
    double sign = 1.0;
    for (int n = 0; n <= order; ++n) {
        s.set_coefficient({n}, sign * arith::stieltjes(n) / factorial(n));
        sign = -sign;
    }
    return s;
}

TruncSeries zeta_logderiv_laurent(int order) {
    if (order < 0) throw std::domain_error("zeta_logderiv_laurent: negative order");
    // Work one degree deeper so the derivative is exact through x^order.
    int deep = order + 1;
    TruncSeries z = zeta_laurent(deep);
    SeriesBox wide({VarSpec{"x", 1, deep + 1}});
    TruncSeries xz = TruncSeries::monomial(wide, {1}, 1.0) * z.embedded(wide);
    TruncSeries d = xz.log().derivative("x");
    TruncSeries result = d - TruncSeries::monomial(d.box(), {-1}, 1.0);
    // Restrict back to the requested order.
    SeriesBox out_box({VarSpec{"x", 1, order}});
    TruncSeries out(out_box);
    out.set_coefficient({-1}, result.coefficient({-1}));
    for (int n = 0; n <= order; ++n) out.set_coefficient({n}, result.coefficient({n}));
    return out;
}

TruncSeries t_power_expansion(int order) {
    if (order < 0) throw std::domain_error("t_power_expansion: negative order");
    SeriesBox box({VarSpec{"alpha", 0, order}, VarSpec{"L", 0, order}});
    TruncSeries s(box);
    double sign = 1.0;
    for (int j = 0; j <= order; ++j) {
        s.set_coefficient({j, j}, sign / factorial(j));
        sign = -sign;
    }
    return s;
}

TruncSeries inverse_difference(const SeriesBox& box, const std::string& var_hi,
                               const std::string& var_lo) {
    int hi = box.index_of(var_hi), lo = box.index_of(var_lo);
    if (hi < 0 || lo < 0)
        throw std::domain_error("inverse_difference: variable not in box");
    const VarSpec& h = box.vars()[static_cast<std::size_t>(hi)];
    const VarSpec& l = box.vars()[static_cast<std::size_t>(lo)];
    if (h.pole_order < 1)
        throw std::domain_error("inverse_difference: " + var_hi + " needs a pole");
    TruncSeries s(box);
    int nmax = std::min(l.max_degree, h.pole_order - 1);
    std::vector<int> e(box.nvars(), 0);
    for (int n = 0; n <= nmax; ++n) {
        std::fill(e.begin(), e.end(), 0);
        e[static_cast<std::size_t>(lo)] = n;
        e[static_cast<std::size_t>(hi)] = -n - 1;
        s.set_coefficient(e, 1.0);
    }
    return s;
}

}  // namespace zm::series
