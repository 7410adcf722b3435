#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dessin/lue.hpp"

using namespace dessin;

namespace {
MultiPoly X() { return na_n(); }
MultiPoly A() { return na_a(); }
MultiPoly C(long k) { return MultiPoly::constant(Rational(k)); }
}  // namespace

TEST_CASE("A and B basics") {
    MultiPoly n = X(), np = X() + A();
    CHECK(ggr_A(0, n, np) == n);
    CHECK(ggr_B(0, n, np) == C(1));
    // A_1 = n n' and A_2 = n n'(n + n') under the rising convention
    CHECK(ggr_A(1, n, np) == n * np);
    CHECK(ggr_A(2, n, np) == n * np * (n + np));
}

TEST_CASE("A_l equals the connected one-point correlator") {
    MultiPoly n = X(), np = X() + A();
    for (int l = 1; l <= 6; ++l) {
        MultiPoly expected = one_point(l).subst({n, np}) * Rational(l);
        CHECK(ggr_A(l, n, np) == expected);
    }
}

TEST_CASE("conjugation to M holds with the rising convention") {
    std::string msg;
    CHECK_MESSAGE(conjugation_check(8, Pochhammer::kRising, &msg), msg);
    CHECK_MESSAGE(conjugation_check(3, Pochhammer::kRising, &msg), msg);
}

TEST_CASE("conjugation fails with the flipped convention (negative control)") {
    std::string msg;
    CHECK_FALSE(conjugation_check(8, Pochhammer::kFalling, &msg));
    INFO(msg);
    CHECK(!msg.empty());
}

TEST_CASE("explicit low correlators") {
    CHECK(lue_correlator({1}) == X() * (X() + A()));
    CHECK(lue_correlator({2}) == X() * (X() + A()) * (X() + X() + A()));
    CHECK(lue_correlator({1, 1}) == X() * (X() + A()));
}

TEST_CASE("two-point resolvent route matches the kernel route for mu_i <= 6") {
    for (auto mu : std::vector<std::vector<int>>{{1, 6}, {2, 5}, {3, 4}, {6, 6}, {2, 2}}) {
        CHECK_NOTHROW(lue_correlator(mu));  // internal two-route comparison
    }
}

TEST_CASE("wishart symmetry n -> n+a, a -> -a") {
    for (auto mu : std::vector<std::vector<int>>{{1}, {3}, {2, 2}, {1, 2}, {1, 1, 2}}) {
        MultiPoly p = lue_correlator(mu);
        MultiPoly q = p.subst({X() + A(), -A()});
        CHECK(p == q);
    }
}

TEST_CASE("cdoc coefficients for small partitions") {
    auto c1 = cdoc_coefficients(Partition({1}));
    REQUIRE(c1.size() == 1);
    CHECK(c1.at({0, 1}) == Rational(1));

    auto c2 = cdoc_coefficients(Partition({2}));
    REQUIRE(c2.size() == 2);
    CHECK(c2.at({0, 1}) == Rational(1));
    CHECK(c2.at({0, 2}) == Rational(1));
}

TEST_CASE("cdoc coefficients respect the summation bound") {
    for (int d = 1; d <= 5; ++d) {
        for (const auto& mu : partitions_of(d)) {
            if (mu.length() > 3) continue;
            auto cs = cdoc_coefficients(mu);
            for (const auto& [gs, v] : cs) {
                CHECK(gs.second >= 1);
                CHECK(gs.second <= 1 - 2 * gs.first + d - mu.length());
            }
        }
    }
}
