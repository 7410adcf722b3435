#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dessin/toda_mr.hpp"

using namespace dessin;

TEST_CASE("resolvent first orders by hand") {
    JetRing ring(6);
    ResolventSeries R = solve_resolvent(ring, 4);
    // R_1 = [[0, -W0], [1, 0]]
    CHECK(R.alpha[1] == MultiPoly());
    CHECK(R.beta[1] == -ring.W(0));
    CHECK(R.gamma[1] == ring.one());
    // R_2 = [[W0, -V0 W0], [V_{-1}, -W0]]
    CHECK(R.alpha[2] == ring.W(0));
    CHECK(R.beta[2] == -(ring.V(0) * ring.W(0)));
    CHECK(R.gamma[2] == ring.V(-1));
}

TEST_CASE("resolvent satisfies the unused equation entries") {
    JetRing ring(10);
    ResolventSeries R = solve_resolvent(ring, 8);
    std::string msg;
    CHECK_MESSAGE(resolvent_equation_check(ring, R, &msg), msg);
}

TEST_CASE("resolvent trace normalization is built in and det vanishes") {
    JetRing ring(8);
    ResolventSeries R = solve_resolvent(ring, 6);
    // trace of R_k is alpha_k - alpha_k = 0 by the ansatz; the nontrivial
    // check is the determinant identity, covered by resolvent_equation_check.
    std::string msg;
    CHECK_MESSAGE(resolvent_equation_check(ring, R, &msg), msg);
}

TEST_CASE("omega table: first value and symmetry") {
    JetRing ring(10);
    ResolventSeries R = solve_resolvent(ring, 8);
    TauStructure tau = omega_and_s(ring, R, 3);
    CHECK(tau.Omega.at({0, 0}) == ring.W(0));
    CHECK(tau.Omega.at({1, 2}) == tau.Omega.at({2, 1}));
    CHECK(tau.Omega.at({0, 3}) == tau.Omega.at({3, 0}));
    // S_0 = V_0
    CHECK(tau.S[0] == ring.V(0));
}

TEST_CASE("tau structure identities hold for i, j <= 3") {
    std::string msg;
    CHECK_MESSAGE(verify_tau_structure(3, &msg), msg);
}

TEST_CASE("solver re-run determinism") {
    JetRing ring(8);
    ResolventSeries R1 = solve_resolvent(ring, 6);
    ResolventSeries R2 = solve_resolvent(ring, 6);
    for (int k = 1; k <= 6; ++k) {
        CHECK(R1.alpha[static_cast<size_t>(k)] == R2.alpha[static_cast<size_t>(k)]);
        CHECK(R1.gamma[static_cast<size_t>(k)] == R2.gamma[static_cast<size_t>(k)]);
    }
}

TEST_CASE("M matrix axioms and entries") {
    MMatrix M = m_matrix(8);
    std::string msg;
    CHECK_MESSAGE(m_matrix_axioms(M, &msg), msg);
    // (1,1) coefficient of lambda^{-2} is <tau_1> = n w
    CHECK(M.m11.coeff(2) == nw_n() * nw_w());
    // (2,1) leading coefficients: lambda^{-1} and (n+w-1) lambda^{-2}
    CHECK(M.m21.coeff(1) == MultiPoly::constant(Rational(1)));
    CHECK(M.m21.coeff(2) == nw_n() + nw_w() - MultiPoly::constant(Rational(1)));
}

TEST_CASE("specialized resolvent (1,1) entry reproduces one-point values") {
    MMatrix M = m_matrix(8);
    for (int mu = 1; mu <= 6; ++mu) {
        CHECK(M.m11.coeff(mu + 1) == one_point(mu) * Rational(static_cast<long>(mu) * mu));
    }
}

TEST_CASE("wave pair: eigen equations and normalization") {
    std::string msg;
    CHECK_MESSAGE(wave_pair_eigen_check(8, &msg), msg);
    CHECK_MESSAGE(wave_pair_normalization_check(8, &msg), msg);
}

TEST_CASE("wave bridge equals the m-point kernel") {
    std::string msg;
    CHECK_MESSAGE(wave_bridge_check(6, &msg), msg);
}

TEST_CASE("product formula: specialized resolvent equals M") {
    JetRing ring(8);
    std::string msg;
    CHECK_MESSAGE(product_formula_check(ring, 6, &msg), msg);
    // specialized first orders: R_1 (1,2) entry is -W = -n(n+a); R_2 (2,1) is
    // V at the shifted point, 2n+a-1
    ResolventSeries R = solve_resolvent(ring, 2);
    MultiPoly x = na_n(), a = na_a();
    CHECK(ring.specialize_dessin(R.beta[1]) == -(x * (x + a)));
    CHECK(ring.specialize_dessin(R.gamma[2]) == x + x + a - MultiPoly::constant(Rational(1)));
}

TEST_CASE("initial data from tau differencing") {
    // eps (Lambda - 1) <tau_1> at eps = 1: (n+1)(n+1+a) - n(n+a) = 2n + a + 1
    MultiPoly x = na_n(), a = na_a();
    MultiPoly tau1 = x * (x + a);
    MultiPoly shifted = (x + MultiPoly::constant(Rational(1))) * (x + a + MultiPoly::constant(Rational(1)));
    CHECK(shifted - tau1 == x + x + a + MultiPoly::constant(Rational(1)));
}

TEST_CASE("mr n-point agrees with the kernel route") {
    MultiPoly x = na_n(), a = na_a();
    std::vector<MultiPoly> to_na = {x, x + a};
    for (auto mu : std::vector<std::vector<int>>{{1, 1}, {1, 2}, {2, 2}, {1, 3}, {2, 3},
                                                 {1, 1, 1}, {1, 1, 2}, {1, 2, 3}}) {
        MultiPoly lhs = mr_n_point(mu);
        MultiPoly rhs = m_point(mu).subst(to_na);
        CHECK_MESSAGE(lhs == rhs, "mu size ", mu.size());
    }
}

TEST_CASE("tr M(l) M(m) symmetry via two-point route") {
    CHECK(mr_n_point({2, 4}) == mr_n_point({4, 2}));
    CHECK(mr_n_point({1, 5}) == mr_n_point({5, 1}));
}

TEST_CASE("jet ring shift guard") {
    JetRing ring(2);
    CHECK_THROWS(ring.shift(ring.V(2), 1));
    CHECK(ring.shift(ring.V(0), 2) == ring.V(2));
    CHECK(ring.shift(ring.W(-1) * ring.V(1), -1) == ring.W(-2) * ring.V(0));
}
