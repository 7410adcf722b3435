#ifndef DESSIN_SERIES_HPP
#define DESSIN_SERIES_HPP

#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dessin/multipoly.hpp"
#include "dessin/ratfunc.hpp"

namespace dessin {

template <class C>
struct RingTraits;

template <>
struct RingTraits<Rational> {
    static Rational zero() { return Rational(); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& c) { return c.is_zero(); }
    static Rational scale(const Rational& c, const Rational& r) { return c * r; }
    static Rational div(const Rational& a, const Rational& b) { return a / b; }
    static Rational embed(const Rational& r) { return r; }
};

template <>
struct RingTraits<MultiPoly> {
    static MultiPoly zero() { return MultiPoly(); }
    static MultiPoly one() { return MultiPoly::constant(Rational(1)); }
    static bool is_zero(const MultiPoly& c) { return c.is_zero(); }
    static MultiPoly scale(const MultiPoly& c, const Rational& r) { return c * r; }
    static MultiPoly div(const MultiPoly& a, const MultiPoly& b) {
        if (!b.is_constant()) throw std::domain_error("MultiPoly unit division: non-constant");
        return a / b.constant_value();
    }
    static MultiPoly embed(const Rational& r) { return MultiPoly::constant(r); }
};

template <>
struct RingTraits<RationalFunction> {
    static RationalFunction zero() { return RationalFunction(); }
    static RationalFunction one() { return RationalFunction::constant(Rational(1)); }
    static bool is_zero(const RationalFunction& c) { return c.is_zero(); }
    static RationalFunction scale(const RationalFunction& c, const Rational& r) {
        return c * RationalFunction::constant(r);
    }
    static RationalFunction div(const RationalFunction& a, const RationalFunction& b) {
        return a / b;
    }
    static RationalFunction embed(const Rational& r) { return RationalFunction::constant(r); }
};

// Formal power series in finitely many variables, truncated by weighted
// total degree. Every stored term has weight <= cutoff, and cutoff tracks
// the trusted window through all ring operations: a product is trusted only
// as far as both factors support it.
template <class C>
class TruncatedSeries {
    using T = RingTraits<C>;

public:
    static constexpr int kInf = std::numeric_limits<int>::max() / 4;

    TruncatedSeries() : cutoff_(0) {}

    TruncatedSeries(VarNamesPtr vars, std::vector<int> weights, int cutoff)
        : vars_(std::move(vars)), weights_(std::move(weights)), cutoff_(cutoff) {
        if (vars_->size() != weights_.size())
            throw std::invalid_argument("TruncatedSeries: weights/vars mismatch");
        for (int w : weights_)
            if (w <= 0) throw std::invalid_argument("TruncatedSeries: weights must be positive");
    }

    static TruncatedSeries constant(VarNamesPtr vars, std::vector<int> weights, int cutoff,
                                    const C& value) {
        TruncatedSeries s(std::move(vars), std::move(weights), cutoff);
        s.set_coeff(Monomial(s.nvars(), 0), value);
        return s;
    }

    static TruncatedSeries variable(const TruncatedSeries& like, int i) {
        TruncatedSeries s = like.zero_like();
        Monomial m(s.nvars(), 0);
        m[static_cast<size_t>(i)] = 1;
        s.set_coeff(m, T::one());
        return s;
    }

    TruncatedSeries zero_like() const {
        TruncatedSeries s;
        s.vars_ = vars_;
        s.weights_ = weights_;
        s.cutoff_ = cutoff_;
        return s;
    }

    size_t nvars() const { return weights_.size(); }
    int cutoff() const { return cutoff_; }
    const VarNamesPtr& vars() const { return vars_; }
    const std::vector<int>& weights() const { return weights_; }
    const std::map<Monomial, C>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    int weight_of(const Monomial& m) const {
        int w = 0;
        for (size_t i = 0; i < m.size(); ++i) w += m[i] * weights_[i];
        return w;
    }

    // Lowest weight among stored terms (kInf when zero).
    int order() const {
        int o = kInf;
        for (const auto& [m, c] : terms_) o = std::min(o, weight_of(m));
        return o;
    }

    C coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? T::zero() : it->second;
    }

    C constant_term() const { return coeff(Monomial(nvars(), 0)); }

    void set_coeff(const Monomial& m, const C& v) {
        if (weight_of(m) > cutoff_) return;
        if (T::is_zero(v))
            terms_.erase(m);
        else
            terms_[m] = v;
    }

    void set_cutoff(int cutoff) {
        cutoff_ = cutoff;
        prune();
    }

    TruncatedSeries& operator+=(const TruncatedSeries& o) {
        check_compatible(o);
        cutoff_ = std::min(cutoff_, o.cutoff_);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        prune();
        return *this;
    }
    TruncatedSeries& operator-=(const TruncatedSeries& o) {
        check_compatible(o);
        cutoff_ = std::min(cutoff_, o.cutoff_);
        for (const auto& [m, c] : o.terms_) add_term(m, T::scale(c, Rational(-1)));
        prune();
        return *this;
    }
    friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) {
        a += b;
        return a;
    }
    friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) {
        a -= b;
        return a;
    }
    TruncatedSeries operator-() const {
        TruncatedSeries r = *this;
        for (auto& [m, c] : r.terms_) c = T::scale(c, Rational(-1));
        return r;
    }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
        a.check_compatible(b);
        TruncatedSeries r = a.zero_like();
        long trusted = std::min<long>(static_cast<long>(a.cutoff_) + b.order(),
                                      static_cast<long>(b.cutoff_) + a.order());
        r.cutoff_ = static_cast<int>(std::min<long>(trusted, kInf));
        for (const auto& [ma, ca] : a.terms_) {
            int wa = a.weight_of(ma);
            for (const auto& [mb, cb] : b.terms_) {
                if (wa + b.weight_of(mb) > r.cutoff_) continue;
                Monomial m = ma;
                for (size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                r.add_term(m, ca * cb);
            }
        }
        r.prune();
        return r;
    }
    TruncatedSeries& operator*=(const TruncatedSeries& o) { return *this = *this * o; }

    TruncatedSeries scaled_coeff(const C& c) const {
        TruncatedSeries r = *this;
        for (auto& [m, v] : r.terms_) v = v * c;
        r.prune();
        return r;
    }
    TruncatedSeries scaled(const Rational& c) const {
        TruncatedSeries r = *this;
        for (auto& [m, v] : r.terms_) v = T::scale(v, c);
        r.prune();
        return r;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        TruncatedSeries d = a - b;
        return d.is_zero();
    }

    // d/dx_i; the trusted window shrinks by the weight of x_i.
    TruncatedSeries derive(int var) const {
        TruncatedSeries r = zero_like();
        r.cutoff_ = cutoff_ - weights_[static_cast<size_t>(var)];
        for (const auto& [m, c] : terms_) {
            int e = m[static_cast<size_t>(var)];
            if (e == 0) continue;
            Monomial d = m;
            d[static_cast<size_t>(var)] -= 1;
            r.add_term(d, T::scale(c, Rational(e)));
        }
        r.prune();
        return r;
    }

    // Multiplication by the variable x_i; the trusted window grows.
    TruncatedSeries mul_var(int var, int exp = 1) const {
        TruncatedSeries r = zero_like();
        r.cutoff_ = static_cast<int>(
            std::min<long>(static_cast<long>(cutoff_) + exp * weights_[static_cast<size_t>(var)], kInf));
        for (const auto& [m, c] : terms_) {
            Monomial d = m;
            d[static_cast<size_t>(var)] += exp;
            r.add_term(d, c);
        }
        r.prune();
        return r;
    }

    TruncatedSeries weight_part(int w) const {
        TruncatedSeries r = zero_like();
        for (const auto& [m, c] : terms_)
            if (weight_of(m) == w) r.terms_[m] = c;
        return r;
    }

    bool is_zero_to(int w) const {
        for (const auto& [m, c] : terms_)
            if (weight_of(m) <= w) return false;
        return true;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << coeff_str(c) << ")";
            for (size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                os << "*" << (*vars_)[i];
                if (m[i] != 1) os << "^" << m[i];
            }
        }
        return os.str();
    }

private:
    template <class X>
    static std::string coeff_str(const X& c) {
        return c.str();
    }

    void check_compatible(const TruncatedSeries& o) const {
        if (weights_ != o.weights_)
            throw std::invalid_argument("TruncatedSeries: incompatible variable families");
    }

    void add_term(const Monomial& m, const C& c) {
        if (T::is_zero(c) || weight_of(m) > cutoff_) return;
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second = it->second + c;
            if (T::is_zero(it->second)) terms_.erase(it);
        }
    }

    void prune() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = (weight_of(it->first) > cutoff_ || T::is_zero(it->second)) ? terms_.erase(it)
                                                                            : std::next(it);
    }

    VarNamesPtr vars_;
    std::vector<int> weights_;
    int cutoff_ = 0;
    std::map<Monomial, C> terms_;
};

// exp(s) for s with zero constant term, via the weighted Euler recursion:
// d * E_d = sum_j (j * s_j) * E_{d-j}.
template <class C>
TruncatedSeries<C> series_exp(const TruncatedSeries<C>& s) {
    using T = RingTraits<C>;
    if (!T::is_zero(s.constant_term()))
        throw std::domain_error("series_exp: nonzero constant term");
    int D = s.cutoff();
    std::vector<TruncatedSeries<C>> spart(static_cast<size_t>(D) + 1, s.zero_like());
    for (int j = 1; j <= D; ++j) spart[static_cast<size_t>(j)] = s.weight_part(j);
    std::vector<TruncatedSeries<C>> epart(static_cast<size_t>(D) + 1, s.zero_like());
    epart[0] = s.zero_like();
    epart[0].set_coeff(Monomial(s.nvars(), 0), T::one());
    TruncatedSeries<C> result = epart[0];
    for (int d = 1; d <= D; ++d) {
        TruncatedSeries<C> acc = s.zero_like();
        for (int j = 1; j <= d; ++j)
            acc += (spart[static_cast<size_t>(j)] * epart[static_cast<size_t>(d - j)]).scaled(Rational(j));
        epart[static_cast<size_t>(d)] = acc.scaled(Rational(1, d));
        result += epart[static_cast<size_t>(d)];
    }
    result.set_cutoff(D);
    return result;
}

// log(s) for s with constant term 1: d * L_d = d * s_d - sum_{j<d} s_j (d-j) L_{d-j}.
template <class C>
TruncatedSeries<C> series_log(const TruncatedSeries<C>& s) {
    using T = RingTraits<C>;
    C c0 = s.constant_term();
    if (!(c0 == T::one()))
        throw std::domain_error("series_log: constant term is not one");
    int D = s.cutoff();
    std::vector<TruncatedSeries<C>> spart(static_cast<size_t>(D) + 1, s.zero_like());
    for (int j = 1; j <= D; ++j) spart[static_cast<size_t>(j)] = s.weight_part(j);
    std::vector<TruncatedSeries<C>> lpart(static_cast<size_t>(D) + 1, s.zero_like());
    TruncatedSeries<C> result = s.zero_like();
    for (int d = 1; d <= D; ++d) {
        TruncatedSeries<C> acc = spart[static_cast<size_t>(d)].scaled(Rational(d));
        for (int j = 1; j < d; ++j)
            acc -= (spart[static_cast<size_t>(j)] * lpart[static_cast<size_t>(d - j)])
                       .scaled(Rational(d - j));
        lpart[static_cast<size_t>(d)] = acc.scaled(Rational(1, d));
        result += lpart[static_cast<size_t>(d)];
    }
    result.set_cutoff(D);
    return result;
}

// 1/s for invertible constant term.
template <class C>
TruncatedSeries<C> series_inverse(const TruncatedSeries<C>& s) {
    using T = RingTraits<C>;
    C c0 = s.constant_term();
    if (T::is_zero(c0)) throw std::domain_error("series_inverse: zero constant term");
    int D = s.cutoff();
    C inv0 = T::div(T::one(), c0);
    std::vector<TruncatedSeries<C>> spart(static_cast<size_t>(D) + 1, s.zero_like());
    for (int j = 1; j <= D; ++j) spart[static_cast<size_t>(j)] = s.weight_part(j);
    std::vector<TruncatedSeries<C>> upart(static_cast<size_t>(D) + 1, s.zero_like());
    upart[0] = TruncatedSeries<C>::constant(s.vars(), s.weights(), D, inv0);
    TruncatedSeries<C> result = upart[0];
    for (int d = 1; d <= D; ++d) {
        TruncatedSeries<C> acc = s.zero_like();
        for (int j = 1; j <= d; ++j)
            acc += spart[static_cast<size_t>(j)] * upart[static_cast<size_t>(d - j)];
        upart[static_cast<size_t>(d)] = (-acc).scaled_coeff(inv0);
        result += upart[static_cast<size_t>(d)];
    }
    result.set_cutoff(D);
    return result;
}

// sqrt with a designated root of the constant term.
template <class C>
TruncatedSeries<C> series_sqrt(const TruncatedSeries<C>& s, const C& root0) {
    using T = RingTraits<C>;
    if (!(root0 * root0 == s.constant_term()))
        throw std::domain_error("series_sqrt: designated root does not square to the constant term");
    int D = s.cutoff();
    C inv2r = T::div(T::one(), root0 + root0);
    std::vector<TruncatedSeries<C>> rpart(static_cast<size_t>(D) + 1, s.zero_like());
    rpart[0] = TruncatedSeries<C>::constant(s.vars(), s.weights(), D, root0);
    TruncatedSeries<C> result = rpart[0];
    for (int d = 1; d <= D; ++d) {
        TruncatedSeries<C> acc = s.weight_part(d);
        for (int j = 1; j < d; ++j)
            acc -= rpart[static_cast<size_t>(j)] * rpart[static_cast<size_t>(d - j)];
        rpart[static_cast<size_t>(d)] = acc.scaled_coeff(inv2r);
        result += rpart[static_cast<size_t>(d)];
    }
    result.set_cutoff(D);
    return result;
}

// Substitute series for the variables of an exact polynomial (the
// composition used to evaluate symmetric functions and theta-polynomials on
// series arguments). images[i] substitutes variable i of p.
template <class C>
TruncatedSeries<C> subst_poly(const MultiPoly& p, const std::vector<TruncatedSeries<C>>& images,
                              const TruncatedSeries<C>& proto) {
    using T = RingTraits<C>;
    TruncatedSeries<C> r = proto.zero_like();
    std::vector<std::vector<TruncatedSeries<C>>> pows(images.size());
    for (const auto& [m, c] : p.terms()) {
        TruncatedSeries<C> t =
            TruncatedSeries<C>::constant(proto.vars(), proto.weights(), proto.cutoff(), T::embed(c));
        for (size_t i = 0; i < m.size(); ++i) {
            int e = m[i];
            if (e == 0) continue;
            auto& cache = pows[i];
            if (cache.empty()) cache.push_back(images.at(i));
            while (static_cast<int>(cache.size()) < e) cache.push_back(cache.back() * images.at(i));
            t *= cache[static_cast<size_t>(e - 1)];
        }
        r += t;
    }
    return r;
}

}  // namespace dessin

#endif
