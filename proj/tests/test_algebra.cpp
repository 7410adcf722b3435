#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dessin/laurent.hpp"
#include "dessin/multipoly.hpp"
#include "dessin/ratfunc.hpp"
#include "dessin/rational.hpp"
#include "dessin/series.hpp"

using namespace dessin;

namespace {

// Small deterministic generator for property tests.
struct Lcg {
    uint64_t s;
    explicit Lcg(uint64_t seed) : s(seed) {}
    uint64_t next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s >> 33;
    }
    int range(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<uint64_t>(hi - lo + 1)); }
    Rational rat() { return Rational(range(-9, 9), range(1, 7)); }
};

MultiPoly random_poly(Lcg& rng, const VarNamesPtr& vars, int terms, int maxdeg) {
    MultiPoly p(vars);
    for (int t = 0; t < terms; ++t) {
        Monomial m(vars->size());
        for (auto& e : m) e = rng.range(0, maxdeg);
        p += MultiPoly::monomial(vars, m, rng.rat());
    }
    return p;
}

using QSeries = TruncatedSeries<Rational>;

QSeries random_series(Lcg& rng, const QSeries& proto, int terms, bool zero_const) {
    QSeries s = proto.zero_like();
    for (int t = 0; t < terms; ++t) {
        Monomial m(proto.nvars());
        for (auto& e : m) e = rng.range(0, 3);
        if (zero_const && std::all_of(m.begin(), m.end(), [](int x) { return x == 0; })) continue;
        s.set_coeff(m, rng.rat());
    }
    return s;
}

}  // namespace

TEST_CASE("rational basics") {
    Rational a(3, 6);
    CHECK(a == Rational(1, 2));
    CHECK(a.str() == "1/2");
    CHECK((a + a).str() == "1");
    CHECK(Rational(-4, 8).str() == "-1/2");
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(7).pow(-2) == Rational(1, 49));
    CHECK_THROWS(Rational(1, 0));
    CHECK(Rational(mpz_class("123456789012345678901234567890"), mpz_class(3)).is_integer());
}

TEST_CASE("multipoly ring axioms on random inputs") {
    auto vars = make_vars({"x", "y", "z"});
    Lcg rng(7);
    for (int rep = 0; rep < 30; ++rep) {
        MultiPoly a = random_poly(rng, vars, 4, 3);
        MultiPoly b = random_poly(rng, vars, 4, 3);
        MultiPoly c = random_poly(rng, vars, 4, 3);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("canonical equality across construction orders") {
    auto vars = make_vars({"x", "y"});
    MultiPoly x = MultiPoly::variable(vars, 0);
    MultiPoly y = MultiPoly::variable(vars, 1);
    MultiPoly p1 = (x + y) * (x - y);
    MultiPoly p2 = x * x - y * y;
    CHECK(p1 == p2);
    CHECK(p1.str() == p2.str());
}

TEST_CASE("exact division and gcd") {
    auto vars = make_vars({"x", "y"});
    MultiPoly x = MultiPoly::variable(vars, 0);
    MultiPoly y = MultiPoly::variable(vars, 1);
    MultiPoly f = (x + y).pow(2) * (x - y);
    MultiPoly g = (x + y) * (x - y);
    CHECK(f.divexact(g) == x + y);
    MultiPoly gc = poly_gcd(f, g);
    CHECK(gc == (x + y) * (x - y));
    CHECK_THROWS(x.divexact(y));
}

TEST_CASE("rational function canonical form") {
    auto vars = make_vars({"x", "y"});
    MultiPoly x = MultiPoly::variable(vars, 0);
    MultiPoly y = MultiPoly::variable(vars, 1);
    RationalFunction r1(x * x - y * y, x + y);
    CHECK(r1.is_polynomial());
    CHECK(r1.as_polynomial() == x - y);
    RationalFunction r2(x, y);
    RationalFunction r3 = r2 + RationalFunction(y, x);
    CHECK(r3 == RationalFunction(x * x + y * y, x * y));
    CHECK((r3 - r3).is_zero());
    RationalFunction d = RationalFunction(MultiPoly::constant(Rational(1)), x).derive(0);
    CHECK(d == -RationalFunction(MultiPoly::constant(Rational(1)), x * x));
}

TEST_CASE("series exp basics") {
    auto vars = make_vars({"p1"});
    QSeries proto(vars, {1}, 2);
    QSeries p1 = QSeries::variable(proto, 0);
    QSeries e = series_exp(p1);
    CHECK(e.constant_term() == Rational(1));
    CHECK(e.coeff({1}) == Rational(1));
    CHECK(e.coeff({2}) == Rational(1, 2));

    QSeries zero = proto.zero_like();
    QSeries ez = series_exp(zero);
    CHECK(ez.constant_term() == Rational(1));
    CHECK(ez.is_zero_to(0) == false);
    CHECK((ez - QSeries::constant(vars, {1}, 2, Rational(1))).is_zero());

    QSeries bad = QSeries::constant(vars, {1}, 2, Rational(1));
    CHECK_THROWS(series_exp(bad));
}

TEST_CASE("log(exp(s)) = s round trip on random series") {
    auto vars = make_vars({"p1", "p2", "p3"});
    Lcg rng(11);
    QSeries proto(vars, {1, 2, 3}, 6);
    for (int rep = 0; rep < 12; ++rep) {
        QSeries s = random_series(rng, proto, 5, true);
        QSeries e = series_exp(s);
        CHECK((series_log(e) - s).is_zero());
    }
}

TEST_CASE("sqrt round trip and perfect square") {
    auto vars = make_vars({"p1"});
    QSeries proto(vars, {1}, 6);
    QSeries p1 = QSeries::variable(proto, 0);
    QSeries sq = QSeries::constant(vars, {1}, 6, Rational(1)) + p1.scaled(Rational(2)) + p1 * p1;
    QSeries r = series_sqrt(sq, Rational(1));
    CHECK((r - (QSeries::constant(vars, {1}, 6, Rational(1)) + p1)).is_zero());

    Lcg rng(13);
    QSeries proto3(make_vars({"p1", "p2"}), {1, 2}, 6);
    for (int rep = 0; rep < 10; ++rep) {
        QSeries s = random_series(rng, proto3, 4, true) +
                    QSeries::constant(proto3.vars(), {1, 2}, 6, Rational(1));
        QSeries rt = series_sqrt(s, Rational(1));
        CHECK((rt * rt - s).is_zero());
    }
}

TEST_CASE("series inverse") {
    auto vars = make_vars({"t"});
    QSeries proto(vars, {1}, 8);
    QSeries t = QSeries::variable(proto, 0);
    QSeries s = QSeries::constant(vars, {1}, 8, Rational(1)) - t;
    QSeries inv = series_inverse(s);
    for (int k = 0; k <= 8; ++k) CHECK(inv.coeff({k}) == Rational(1));
}

TEST_CASE("series derivative and trusted window") {
    auto vars = make_vars({"p1", "p2"});
    QSeries proto(vars, {1, 2}, 5);
    QSeries p1 = QSeries::variable(proto, 0);
    QSeries p2 = QSeries::variable(proto, 1);
    QSeries f = p1 * p2;
    // product trust improves by the order of each factor: min(5+2, 5+1) = 6
    CHECK(f.cutoff() == 6);
    QSeries d = f.derive(1);
    CHECK(d.coeff({1, 0}) == Rational(1));
    CHECK(d.cutoff() == 4);
    QSeries up = d.mul_var(1);
    CHECK(up.cutoff() == 6);
}

TEST_CASE("laurent tail multiplication matches geometric series") {
    // (sum z^-k) * (1 - z^-1) = 1
    LaurentTail<Rational> geo(6);
    for (int k = 0; k <= 6; ++k) geo.set_coeff(k, Rational(1));
    LaurentTail<Rational> one_minus(6);
    one_minus.set_coeff(0, Rational(1));
    one_minus.set_coeff(1, Rational(-1));
    auto prod = geo * one_minus;
    CHECK(prod.coeff(0) == Rational(1));
    for (int k = 1; k <= prod.order(); ++k) CHECK(prod.coeff(k) == Rational(0));
}

TEST_CASE("mat2 arithmetic") {
    using M = Mat2<Rational>;
    M a(Rational(1), Rational(2), Rational(3), Rational(4));
    M b(Rational(0), Rational(1), Rational(1), Rational(0));
    CHECK((a * b) == M(Rational(2), Rational(1), Rational(4), Rational(3)));
    CHECK(a.trace() == Rational(5));
    CHECK(a.det() == Rational(-2));
}
