#ifndef DESSIN_LOGLINEAR_HPP
#define DESSIN_LOGLINEAR_HPP

#include <stdexcept>
#include <string>

#include "dessin/ratfunc.hpp"
#include "dessin/series.hpp"

namespace dessin {

const VarNamesPtr& vars_xa();
MultiPoly xa_x();
MultiPoly xa_a();

// Element of the ring Q(x,a) + Q(x,a) * {log x, log(x+a), log a, log eps,
// log 2pi} + Q(x,a) * {zeta'(-1), log(-1)}, closed under d/dx and d/da.
// Products of two log-bearing elements never arise in scope; multiplication
// asserts that at least one factor is log-free.
class LogLinearScalar {
public:
    RationalFunction rat;
    RationalFunction logx, logxa, loga, logeps, log2pi;
    RationalFunction zeta1, logm1;  // zeta'(-1) and log(-1)

    LogLinearScalar() = default;
    explicit LogLinearScalar(const RationalFunction& r) : rat(r) {}

    static LogLinearScalar constant(const Rational& c) {
        return LogLinearScalar(RationalFunction::constant(c));
    }

    bool log_free() const {
        return logx.is_zero() && logxa.is_zero() && loga.is_zero() && logeps.is_zero() &&
               log2pi.is_zero() && zeta1.is_zero() && logm1.is_zero();
    }
    bool is_zero() const { return rat.is_zero() && log_free(); }

    LogLinearScalar& operator+=(const LogLinearScalar& o);
    LogLinearScalar& operator-=(const LogLinearScalar& o);
    friend LogLinearScalar operator+(LogLinearScalar a, const LogLinearScalar& b) {
        a += b;
        return a;
    }
    friend LogLinearScalar operator-(LogLinearScalar a, const LogLinearScalar& b) {
        a -= b;
        return a;
    }
    LogLinearScalar operator-() const;

    friend LogLinearScalar operator*(const LogLinearScalar& a, const LogLinearScalar& b);

    friend bool operator==(const LogLinearScalar& a, const LogLinearScalar& b) {
        return a.rat == b.rat && a.logx == b.logx && a.logxa == b.logxa && a.loga == b.loga &&
               a.logeps == b.logeps && a.log2pi == b.log2pi && a.zeta1 == b.zeta1 &&
               a.logm1 == b.logm1;
    }
    friend bool operator!=(const LogLinearScalar& a, const LogLinearScalar& b) { return !(a == b); }

    LogLinearScalar scaled(const RationalFunction& c) const;
    LogLinearScalar derive_x() const;
    LogLinearScalar derive_a() const;

    std::string str() const;
};

template <>
struct RingTraits<LogLinearScalar> {
    static LogLinearScalar zero() { return LogLinearScalar(); }
    static LogLinearScalar one() { return LogLinearScalar::constant(Rational(1)); }
    static bool is_zero(const LogLinearScalar& c) { return c.is_zero(); }
    static LogLinearScalar scale(const LogLinearScalar& c, const Rational& r) {
        return c.scaled(RationalFunction::constant(r));
    }
    static LogLinearScalar div(const LogLinearScalar& a, const LogLinearScalar& b) {
        if (!b.log_free()) throw std::domain_error("LogLinearScalar: division by log-bearing element");
        LogLinearScalar r = a;
        return r.scaled(RationalFunction::constant(Rational(1)) / b.rat);
    }
    static LogLinearScalar embed(const Rational& r) { return LogLinearScalar::constant(r); }
};

}  // namespace dessin

#endif
