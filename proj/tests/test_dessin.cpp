#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dessin/dessin_correlators.hpp"

using namespace dessin;

namespace {
MultiPoly N() { return nw_n(); }
MultiPoly W() { return nw_w(); }
MultiPoly C(long k) { return MultiPoly::constant(Rational(k)); }

MultiPoly swap_nw(const MultiPoly& p) { return p.subst({W(), N()}); }
}  // namespace

TEST_CASE("kernel coefficients") {
    CHECK(a_coeff(0, 0) == N() * W());
    CHECK(a_coeff(1, 0) == N() * W() * (N() + C(1)) * (W() + C(1)) / Rational(2));
    CHECK(a_coeff(0, 1) == -(N() * W() * (N() - C(1)) * (W() - C(1))) / Rational(2));
}

TEST_CASE("h series coefficients") {
    auto h = h_series(3);
    CHECK(h.coeff(0) == C(1));
    CHECK(h.coeff(1) == N() * W());
    CHECK(h.coeff(2) == N() * W() * (N() + C(1)) * (W() + C(1)) / Rational(2));
}

TEST_CASE("one point correlators") {
    CHECK(one_point(1) == N() * W());
    CHECK(one_point(2) == N() * W() * (N() + W()) / Rational(2));
    // parity: <tau_mu> has only monomials with k+l == mu+1 (mod 2)
    for (int mu = 1; mu <= 7; ++mu) {
        MultiPoly p = one_point(mu);
        for (const auto& [m, c] : p.terms()) CHECK((m[0] + m[1]) % 2 == (mu + 1) % 2);
    }
}

TEST_CASE("two point correlators against Virasoro-derived values") {
    CHECK(m_point({1, 1}) == N() * W());
    CHECK(m_point({1, 2}) == N() * W() * (N() + W()));
    CHECK(m_point({2, 1}) == N() * W() * (N() + W()));
}

TEST_CASE("three point correlator from the L0 constraint") {
    CHECK(m_point({1, 1, 1}) == C(2) * N() * W());
}

TEST_CASE("permutation symmetry of the arguments") {
    MultiPoly a = m_point({1, 2, 3});
    CHECK(a == m_point({3, 2, 1}));
    CHECK(a == m_point({2, 3, 1}));
    CHECK(m_point({2, 4}) == m_point({4, 2}));
}

TEST_CASE("n <-> w symmetry") {
    for (auto mu : std::vector<std::vector<int>>{{1}, {3}, {2, 2}, {1, 2, 3}}) {
        MultiPoly p = correlator(mu);
        CHECK(p == swap_nw(p));
    }
}

TEST_CASE("two point kernel truncated to pure geometric part vanishes") {
    // With A == 0 the cyclic sum is (+1)*1/(l-m) * (-1)*1/(l-m) = -1/(l-m)^2,
    // whose expansion has no monomials with both exponents negative; so the
    // full two-point tail at negative exponents comes from the A-terms only.
    // Checked indirectly: the (lambda^-2, mu^0) coefficient of the cyclic sum
    // must match the 1/(lambda-mu)^2 correction exactly.
    MultiPoly c0 = two_point_rhs_coeff(2, 0, 4);
    CHECK(c0 == C(1));
}

TEST_CASE("theorem-A well-formedness: no positive powers survive") {
    // RHS := (-1)^{m-1} cyclic-sum - delta-correction must be a pure tail:
    // at lambda2-exponent k >= 0 the cyclic sum equals (k+1) delta_{i,k}
    // (the expansion of 1/(lambda1-lambda2)^2).
    for (int i = 0; i <= 3; ++i)
        for (int k = 0; k <= 3; ++k) {
            MultiPoly coeff = two_point_rhs_coeff(i + 2, -k, 6);
            MultiPoly expect = (i == k) ? C(k + 1) : MultiPoly();
            CHECK(coeff == expect);
        }
}

TEST_CASE("dessin counts N_kl") {
    auto counts1 = n_kl(Partition({1}));
    REQUIRE(counts1.size() == 1);
    CHECK(counts1[0].k == 1);
    CHECK(counts1[0].l == 1);
    CHECK(counts1[0].g == 0);
    CHECK(counts1[0].value == Rational(1));

    auto counts2 = n_kl(Partition({2}));
    REQUIRE(counts2.size() == 2);
    for (const auto& e : counts2) {
        CHECK(e.g == 0);
        CHECK(e.value == Rational(1, 2));
        CHECK(((e.k == 2 && e.l == 1) || (e.k == 1 && e.l == 2)));
    }

    auto counts11 = n_kl(Partition({1, 1}));
    REQUIRE(counts11.size() == 1);
    CHECK(counts11[0].k == 1);
    CHECK(counts11[0].l == 1);
    CHECK(counts11[0].g == 0);
    CHECK(counts11[0].value == Rational(1));
}

TEST_CASE("all counts nonnegative and graded, |mu| <= 6") {
    for (int d = 1; d <= 6; ++d) {
        for (const auto& mu : partitions_of(d)) {
            if (mu.length() > 4) continue;
            int m = mu.length();
            for (const auto& e : n_kl(mu)) {
                CHECK(e.value >= Rational(0));
                CHECK(e.k >= 1);
                CHECK(e.l >= 1);
                CHECK(e.k + e.l <= d - m + 2);
                CHECK((d - m + 2 - e.k - e.l) % 2 == 0);
                CHECK(e.g >= 0);
            }
        }
    }
}
