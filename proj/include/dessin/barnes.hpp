#ifndef DESSIN_BARNES_HPP
#define DESSIN_BARNES_HPP

#include <map>
#include <string>

#include "dessin/loglinear.hpp"

namespace dessin {

// Bernoulli numbers with B_1 = -1/2, by the defining recursion.
const Rational& bernoulli(int k);

// Laurent expansion in eps with LogLinearScalar coefficients.
class EpsExpansion {
public:
    std::map<int, LogLinearScalar> coeff;  // eps power -> coefficient

    LogLinearScalar at(int k) const {
        auto it = coeff.find(k);
        return it == coeff.end() ? LogLinearScalar() : it->second;
    }
    void add(int k, const LogLinearScalar& v) {
        if (v.is_zero()) return;
        auto [it, inserted] = coeff.try_emplace(k, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero()) coeff.erase(it);
        }
    }

    EpsExpansion& operator+=(const EpsExpansion& o) {
        for (const auto& [k, v] : o.coeff) add(k, v);
        return *this;
    }
    EpsExpansion& operator-=(const EpsExpansion& o) {
        for (const auto& [k, v] : o.coeff) add(k, -v);
        return *this;
    }
    friend EpsExpansion operator+(EpsExpansion a, const EpsExpansion& b) { a += b; return a; }
    friend EpsExpansion operator-(EpsExpansion a, const EpsExpansion& b) { a -= b; return a; }

    bool is_zero() const { return coeff.empty(); }
    bool vanishes_through(int max_order) const {
        for (const auto& [k, v] : coeff)
            if (k <= max_order && !v.is_zero()) return false;
        return true;
    }
};

// Which argument scale enters G(1 + c/eps).
enum class BarnesArg { kX, kXplusA, kA };

// Asymptotic expansion of log G(1 + c/eps) through the eps^{2G} tail terms,
// with the log eps and log 2pi parts tracked explicitly.
EpsExpansion barnes_log_asymp(BarnesArg arg, int G);

// The constant-in-couplings part of the corrected free energy, assembled two
// ways: (i) the displayed closed form; (ii) from three Barnes expansions plus
// the eps- and 2pi-prefactors. Both must agree identically, and the log eps
// and log 2pi coefficients of (ii) must cancel. Throws on mismatch.
EpsExpansion corrected_constant_term(int G);

// Applies (e^{eps d/dx} + e^{-eps d/dx} - 2) to the corrected constant term
// and verifies the result equals eps^2 (log x + log(x+a)) through eps^{2G}.
bool deftau3_initial_check(int G, std::string* msg);

// eps d/deps + x d/dx + a d/da + 1/12 applied to the corrected constant term
// equals x(x+a)/eps^2 (the coupling-free part of the dilaton equation).
bool dilaton_constant_check(int G, std::string* msg);

}  // namespace dessin

#endif
