#ifndef DESSIN_RATFUNC_HPP
#define DESSIN_RATFUNC_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "dessin/multipoly.hpp"

namespace dessin {

namespace detail {

inline int top_variable(const MultiPoly& f, const MultiPoly& g) {
    int nv = static_cast<int>(std::max(f.nvars(), g.nvars()));
    for (int v = nv - 1; v >= 0; --v)
        if (f.degree_in(v) > 0 || g.degree_in(v) > 0) return v;
    return -1;
}

inline std::map<int, MultiPoly> as_univariate(const MultiPoly& f, int v) {
    std::map<int, MultiPoly> out;
    for (const auto& [m, c] : f.terms()) {
        int e = v < static_cast<int>(m.size()) ? m[static_cast<size_t>(v)] : 0;
        Monomial rest = m;
        if (v < static_cast<int>(rest.size())) rest[static_cast<size_t>(v)] = 0;
        auto it = out.try_emplace(e, MultiPoly(f.vars())).first;
        it->second += MultiPoly::monomial(f.vars(), rest, c);
    }
    return out;
}

inline MultiPoly from_univariate(const std::map<int, MultiPoly>& coeffs, int v,
                                 const VarNamesPtr& vars) {
    MultiPoly r(vars);
    for (const auto& [e, c] : coeffs) {
        if (c.is_zero()) continue;
        r += c * MultiPoly::variable(vars, v, e);
    }
    return r;
}

}  // namespace detail

MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b);

namespace detail {

// Makes the lexicographically-leading coefficient one.
inline MultiPoly unit_normalize(const MultiPoly& f) {
    if (f.is_zero()) return f;
    return f / f.terms().rbegin()->second;
}

inline int deg_v(const std::map<int, MultiPoly>& u) {
    int d = -1;
    for (const auto& [e, c] : u)
        if (!c.is_zero()) d = std::max(d, e);
    return d;
}

inline MultiPoly lead_v(const std::map<int, MultiPoly>& u) {
    int d = deg_v(u);
    auto it = u.find(d);
    return it == u.end() ? MultiPoly() : it->second;
}

inline MultiPoly content_v(const std::map<int, MultiPoly>& u) {
    MultiPoly c;
    for (const auto& [e, p] : u)
        if (!p.is_zero()) c = poly_gcd(c, p);
    return c;
}

// Pseudo-remainder of f by g with respect to variable v.
inline MultiPoly pseudo_rem(MultiPoly f, const MultiPoly& g, int v) {
    auto gu = as_univariate(g, v);
    int dg = deg_v(gu);
    MultiPoly lg = lead_v(gu);
    while (true) {
        if (f.is_zero()) return f;
        auto fu = as_univariate(f, v);
        int df = deg_v(fu);
        if (df < dg) return f;
        MultiPoly lf = lead_v(fu);
        MultiPoly shift = MultiPoly::variable(f.vars() ? f.vars() : g.vars(), v, df - dg);
        f = lg * f - lf * shift * g;
    }
}

}  // namespace detail

// Multivariate gcd over Q by a primitive pseudo-remainder sequence.
// Result is unit-normalized (leading coefficient one), so it is canonical.
inline MultiPoly poly_gcd(const MultiPoly& a, const MultiPoly& b) {
    using namespace detail;
    if (a.is_zero()) return unit_normalize(b);
    if (b.is_zero()) return unit_normalize(a);
    int v = top_variable(a, b);
    if (v < 0) return MultiPoly::constant(Rational::one());

    auto au = as_univariate(a, v);
    auto bu = as_univariate(b, v);
    MultiPoly ca = content_v(au);
    MultiPoly cb = content_v(bu);
    MultiPoly cg = poly_gcd(ca, cb);

    MultiPoly f = a.divexact(ca);
    MultiPoly g = b.divexact(cb);
    if (deg_v(as_univariate(f, v)) < deg_v(as_univariate(g, v))) std::swap(f, g);
    while (!g.is_zero()) {
        MultiPoly r = pseudo_rem(f, g, v);
        f = g;
        if (r.is_zero()) {
            g = r;
        } else {
            auto ru = as_univariate(r, v);
            MultiPoly cr = content_v(ru);
            g = r.divexact(cr);
        }
    }
    return unit_normalize(cg * f);
}

// Reduced fraction of multivariate polynomials. Canonical form: gcd-reduced
// with leading coefficient of the denominator equal to one, so equality is
// plain structural comparison.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(MultiPoly::constant(Rational::one())) {}

    RationalFunction(const MultiPoly& num, const MultiPoly& den) : num_(num), den_(den) {
        if (den_.is_zero()) throw std::domain_error("RationalFunction: zero denominator");
        reduce();
    }

    /* implicit */ RationalFunction(const MultiPoly& p)
        : num_(p), den_(MultiPoly::constant(Rational::one())) {}

    static RationalFunction constant(const Rational& c) {
        return RationalFunction(MultiPoly::constant(c));
    }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }

    MultiPoly as_polynomial() const {
        if (!is_polynomial()) throw std::logic_error("RationalFunction: not a polynomial");
        return num_ / den_.constant_value();
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("RationalFunction: division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction operator-() const {
        RationalFunction r = *this;
        r.num_ = -r.num_;
        return r;
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
        return !(a == b);
    }

    RationalFunction derive(int var) const {
        return RationalFunction(num_.derive(var) * den_ - num_ * den_.derive(var), den_ * den_);
    }

    Rational eval(const std::vector<Rational>& point) const {
        Rational d = den_.eval(point);
        if (d.is_zero()) throw std::domain_error("RationalFunction: pole at sample point");
        return num_.eval(point) / d;
    }

    RationalFunction subst(const std::vector<MultiPoly>& images) const {
        return RationalFunction(num_.subst(images), den_.subst(images));
    }

    std::string str() const {
        if (is_polynomial()) return as_polynomial().str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void reduce() {
        if (num_.is_zero()) {
            den_ = MultiPoly::constant(Rational::one());
            return;
        }
        MultiPoly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = num_.divexact(g);
            den_ = den_.divexact(g);
        }
        Rational lc = den_.terms().rbegin()->second;
        num_ /= lc;
        den_ /= lc;
    }

    MultiPoly num_;
    MultiPoly den_;
};

}  // namespace dessin

#endif
