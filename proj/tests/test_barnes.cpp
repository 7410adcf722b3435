#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dessin/barnes.hpp"

using namespace dessin;

namespace {
RationalFunction rfc(const Rational& c) { return RationalFunction::constant(c); }
}

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(3) == Rational(0));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(6) == Rational(1, 42));
    CHECK(bernoulli(12) == Rational(-691, 2730));
}

TEST_CASE("barnes expansion tail coefficients") {
    EpsExpansion e = barnes_log_asymp(BarnesArg::kX, 2);
    // z^{-2} term: B_4/8 = -1/240 times x^{-2}
    RationalFunction x(xa_x());
    LogLinearScalar l2 = e.at(2);
    CHECK(l2.rat == rfc(Rational(-1, 240)) / (x * x));
    LogLinearScalar l4 = e.at(4);
    CHECK(l4.rat == rfc(Rational(1, 1008)) / (x * x * x * x));
    // zeta'(-1) coefficient one
    CHECK(e.at(0).zeta1 == rfc(Rational(1)));
}

TEST_CASE("corrected constant term blocks") {
    EpsExpansion F = corrected_constant_term(3);
    RationalFunction x(xa_x()), a(xa_a());
    RationalFunction v = x + a;

    LogLinearScalar em2 = F.at(-2);
    CHECK(em2.logx == x * x * rfc(Rational(1, 2)));
    CHECK(em2.logxa == v * v * rfc(Rational(1, 2)));
    CHECK(em2.loga == -(a * a * rfc(Rational(1, 2))));
    CHECK(em2.rat == x * v * rfc(Rational(-3, 2)));

    LogLinearScalar e0 = F.at(0);
    CHECK(e0.logx == rfc(Rational(-1, 12)));
    CHECK(e0.logxa == rfc(Rational(-1, 12)));
    CHECK(e0.loga == rfc(Rational(1, 12)));
    CHECK(e0.zeta1 == rfc(Rational(1)));

    LogLinearScalar e2 = F.at(2);
    RationalFunction b48 = rfc(Rational(-1, 240));  // B_4 / 8
    CHECK(e2.rat == b48 / (x * x) + b48 / (v * v) - b48 / (a * a));

    // no log eps, no log 2pi, no odd powers
    for (const auto& [k, c] : F.coeff) {
        CHECK(c.logeps.is_zero());
        CHECK(c.log2pi.is_zero());
        CHECK(k % 2 == 0);
    }
}

TEST_CASE("two assemblies agree (the assembly itself throws on mismatch)") {
    CHECK_NOTHROW(corrected_constant_term(4));
}

TEST_CASE("shift identity for the initial tau condition through eps^8") {
    std::string msg;
    CHECK_MESSAGE(deftau3_initial_check(4, &msg), msg);
}

TEST_CASE("dilaton equation at zero couplings") {
    std::string msg;
    CHECK_MESSAGE(dilaton_constant_check(4, &msg), msg);
}

TEST_CASE("loglinear derivative rules") {
    LogLinearScalar f;
    f.logx = RationalFunction(xa_x() * xa_x());  // x^2 log x
    LogLinearScalar d = f.derive_x();
    RationalFunction x(xa_x());
    CHECK(d.logx == x * rfc(Rational(2)));
    CHECK(d.rat == x);
    // product guard
    LogLinearScalar g;
    g.loga = rfc(Rational(1));
    CHECK_THROWS(f * g);
}
