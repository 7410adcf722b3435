#ifndef DESSIN_MULTIPOLY_HPP
#define DESSIN_MULTIPOLY_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dessin/rational.hpp"

namespace dessin {

using VarNames = std::vector<std::string>;
using VarNamesPtr = std::shared_ptr<const VarNames>;

inline VarNamesPtr make_vars(std::initializer_list<std::string> names) {
    return std::make_shared<const VarNames>(names);
}
inline VarNamesPtr make_vars(const VarNames& names) {
    return std::make_shared<const VarNames>(names);
}

// Exponent vector; compared lexicographically by std::map.
using Monomial = std::vector<int>;

// Sparse multivariate polynomial with exact rational coefficients.
// A default-constructed poly is the universal zero: it carries no variable
// set and combines with polynomials over any variables. Same for constants
// created by MultiPoly::constant.
class MultiPoly {
public:
    MultiPoly() = default;

    explicit MultiPoly(VarNamesPtr vars) : vars_(std::move(vars)) {}

    static MultiPoly constant(const Rational& c) {
        MultiPoly p;
        if (!c.is_zero()) p.terms_[Monomial{}] = c;
        return p;
    }

    static MultiPoly variable(const VarNamesPtr& vars, int i, int exp = 1) {
        MultiPoly p(vars);
        if (i < 0 || i >= static_cast<int>(vars->size()))
            throw std::out_of_range("MultiPoly::variable index");
        Monomial m(vars->size(), 0);
        m[static_cast<size_t>(i)] = exp;
        if (exp != 0)
            p.terms_[m] = Rational::one();
        else
            p.terms_[Monomial(vars->size(), 0)] = Rational::one();
        return p;
    }

    static MultiPoly monomial(const VarNamesPtr& vars, const Monomial& m, const Rational& c) {
        if (!vars) {
            bool trivial = std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
            if (!trivial) throw std::invalid_argument("monomial: variables required");
            return constant(c);
        }
        MultiPoly p(vars);
        if (m.size() != vars->size()) throw std::invalid_argument("monomial arity");
        if (!c.is_zero()) p.terms_[m] = c;
        return p;
    }

    const VarNamesPtr& vars() const { return vars_; }
    size_t nvars() const { return vars_ ? vars_->size() : 0; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    bool is_constant() const {
        if (terms_.empty()) return true;
        if (terms_.size() != 1) return false;
        const Monomial& m = terms_.begin()->first;
        return std::all_of(m.begin(), m.end(), [](int e) { return e == 0; });
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational::zero();
        if (!is_constant()) throw std::logic_error("MultiPoly: not a constant");
        return terms_.begin()->second;
    }

    Rational coeff(const Monomial& m) const {
        Monomial key = m;
        key.resize(nvars(), 0);
        auto it = terms_.find(key);
        return it == terms_.end() ? Rational::zero() : it->second;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [m, c] : terms_) {
            int s = 0;
            for (int e : m) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    int degree_in(int var) const {
        int d = -1;
        for (const auto& [m, c] : terms_)
            d = std::max(d, var < static_cast<int>(m.size()) ? m[static_cast<size_t>(var)] : 0);
        return d;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        merge_vars(o);
        for (const auto& [m, c] : o.terms_) add_term(widen(m, o), c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        merge_vars(o);
        for (const auto& [m, c] : o.terms_) add_term(widen(m, o), -c);
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { a += b; return a; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { a -= b; return a; }

    MultiPoly operator-() const {
        MultiPoly r(*this);
        for (auto& [m, c] : r.terms_) c = -c;
        return r;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly r;
        r.vars_ = pick_vars(a, b);
        size_t nv = r.nvars();
        for (const auto& [ma, ca] : a.terms_) {
            Monomial wa = ma;
            wa.resize(nv, 0);
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m = wa;
                for (size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
                r.add_term(m, ca * cb);
            }
        }
        return r;
    }
    MultiPoly& operator*=(const MultiPoly& o) { *this = *this * o; return *this; }

    MultiPoly& operator*=(const Rational& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { a *= c; return a; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { a *= c; return a; }

    MultiPoly& operator/=(const Rational& c) {
        if (c.is_zero()) throw std::domain_error("MultiPoly: division by zero scalar");
        for (auto& [m, v] : terms_) v /= c;
        return *this;
    }
    friend MultiPoly operator/(MultiPoly a, const Rational& c) { a /= c; return a; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        size_t nv = std::max(a.nvars(), b.nvars());
        for (; ia != a.terms_.end(); ++ia, ++ib) {
            Monomial ma = ia->first, mb = ib->first;
            ma.resize(nv, 0);
            mb.resize(nv, 0);
            if (ma != mb || ia->second != ib->second) return false;
        }
        return true;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly pow(int e) const {
        if (e < 0) throw std::domain_error("MultiPoly::pow negative");
        MultiPoly acc = constant(Rational::one());
        MultiPoly base = *this;
        while (e) {
            if (e & 1) acc *= base;
            if (e >>= 1) base *= base;
        }
        return acc;
    }

    MultiPoly derive(int var) const {
        MultiPoly r(vars_);
        for (const auto& [m, c] : terms_) {
            if (var >= static_cast<int>(m.size()) || m[static_cast<size_t>(var)] == 0) continue;
            Monomial d = m;
            int e = d[static_cast<size_t>(var)]--;
            r.add_term(d, c * Rational(e));
        }
        return r;
    }

    // Evaluation homomorphism: image of variable i is images[i] (over any
    // common target variable set). Used for renames and substitutions.
    MultiPoly subst(const std::vector<MultiPoly>& images) const {
        if (images.size() < nvars()) throw std::invalid_argument("subst: missing images");
        std::vector<std::vector<MultiPoly>> pows(images.size());
        MultiPoly r;
        for (const auto& [m, c] : terms_) {
            MultiPoly t = constant(c);
            for (size_t i = 0; i < m.size(); ++i) {
                int e = m[i];
                if (e == 0) continue;
                auto& cache = pows[i];
                if (cache.empty()) cache.push_back(images[i]);
                while (static_cast<int>(cache.size()) < e) cache.push_back(cache.back() * images[i]);
                t *= cache[static_cast<size_t>(e - 1)];
            }
            r += t;
        }
        return r;
    }

    Rational eval(const std::vector<Rational>& point) const {
        Rational r;
        for (const auto& [m, c] : terms_) {
            Rational t = c;
            for (size_t i = 0; i < m.size(); ++i)
                if (m[i]) t *= point.at(i).pow(m[i]);
            r += t;
        }
        return r;
    }

    // Exact division; throws if the divisor does not divide exactly.
    MultiPoly divexact(const MultiPoly& g) const {
        if (g.is_zero()) throw std::domain_error("MultiPoly: division by zero");
        if (g.is_constant()) return *this / g.constant_value();
        MultiPoly rem = *this;
        rem.merge_vars(g);
        MultiPoly q(rem.vars_);
        size_t nv = rem.nvars();
        Monomial glead = g.terms_.rbegin()->first;
        glead.resize(nv, 0);
        const Rational& gc = g.terms_.rbegin()->second;
        while (!rem.is_zero()) {
            Monomial rlead = rem.terms_.rbegin()->first;
            const Rational rc = rem.terms_.rbegin()->second;
            Monomial d(nv, 0);
            for (size_t i = 0; i < nv; ++i) {
                d[i] = rlead[i] - glead[i];
                if (d[i] < 0) throw std::domain_error("MultiPoly::divexact: not divisible");
            }
            Rational qc = rc / gc;
            MultiPoly t = monomial(rem.vars_, d, qc);
            q += t;
            rem -= t * g;
        }
        return q;
    }

    bool divisible_by(const MultiPoly& g) const {
        try {
            (void)divexact(g);
            return true;
        } catch (const std::domain_error&) {
            return false;
        }
    }

    // Deterministic rendering: descending lexicographic term order.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            Rational c = it->second;
            if (!first)
                os << (c.sign() < 0 ? " - " : " + ");
            else if (c.sign() < 0)
                os << "-";
            first = false;
            if (c.sign() < 0) c = -c;
            bool has_vars = false;
            std::ostringstream vs;
            for (size_t i = 0; i < it->first.size(); ++i) {
                int e = it->first[i];
                if (e == 0) continue;
                if (has_vars) vs << "*";
                vs << (*vars_)[i];
                if (e != 1) vs << "^" << e;
                has_vars = true;
            }
            if (!has_vars)
                os << c.str();
            else if (c.is_one())
                os << vs.str();
            else
                os << c.str() << "*" << vs.str();
        }
        return os.str();
    }

private:
    static VarNamesPtr pick_vars(const MultiPoly& a, const MultiPoly& b) {
        if (!a.vars_) return b.vars_;
        if (!b.vars_) return a.vars_;
        if (a.vars_ != b.vars_ && *a.vars_ != *b.vars_)
            throw std::invalid_argument("MultiPoly: incompatible variable sets");
        return a.vars_;
    }

    void merge_vars(const MultiPoly& o) {
        VarNamesPtr merged = pick_vars(*this, o);
        if (merged == vars_) return;
        vars_ = merged;
        // keys stored while this was a bare constant must be widened
        std::map<Monomial, Rational> rebuilt;
        for (auto& [m, c] : terms_) {
            Monomial key = m;
            key.resize(nvars(), 0);
            rebuilt.emplace(std::move(key), c);
        }
        terms_ = std::move(rebuilt);
    }

    Monomial widen(const Monomial& m, const MultiPoly&) const {
        Monomial r = m;
        r.resize(nvars(), 0);
        return r;
    }

    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        Monomial key = m;
        key.resize(nvars(), 0);
        auto [it, inserted] = terms_.try_emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    VarNamesPtr vars_;
    std::map<Monomial, Rational> terms_;
};

}  // namespace dessin

#endif
