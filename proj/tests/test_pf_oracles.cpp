#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dessin/pf_oracles.hpp"

using namespace dessin;

namespace {
MultiPoly N() { return nw_n(); }
MultiPoly W() { return nw_w(); }

CouplingSeries random_coupling(uint64_t seed, int D, int terms) {
    CouplingSeries s = coupling_zero(D);
    uint64_t st = seed;
    auto next = [&] {
        st = st * 6364136223846793005ULL + 1442695040888963407ULL;
        return st >> 33;
    };
    for (int t = 0; t < terms; ++t) {
        Monomial m(static_cast<size_t>(D), 0);
        for (auto& e : m) e = static_cast<int>(next() % 2);
        long num = static_cast<long>(next() % 11) - 5;
        s.set_coeff(m, MultiPoly::constant(Rational(num, 1 + static_cast<long>(next() % 4))));
    }
    return s;
}
}  // namespace

TEST_CASE("cut-and-join weight parts") {
    CouplingSeries Z = cut_and_join_Z(4);
    // constant term 1
    CHECK(Z.coeff(Monomial{0, 0, 0, 0}) == MultiPoly::constant(Rational(1)));
    // weight 1: uv p1
    CHECK(Z.coeff(Monomial{1, 0, 0, 0}) == N() * W());
    // weight 2: <tau_2> p2 with <tau_2> = uv(u+v)/2, and (uv + u^2v^2)/2 p1^2
    CHECK(Z.coeff(Monomial{0, 1, 0, 0}) == N() * W() * (N() + W()) / Rational(2));
    CHECK(Z.coeff(Monomial{2, 0, 0, 0}) ==
          (N() * W() + N() * N() * W() * W()) / Rational(2));
}

TEST_CASE("laguerre cut-and-join equals dessin form under u->x, v->x+a") {
    int D = 6;
    CouplingSeries Zl = cut_and_join_Z_laguerre(D);
    CouplingSeries Zd = cut_and_join_Z(D);
    // substitute (n,w) -> (x, x+a) in the dessin coefficients
    MultiPoly x = na_n(), xa = na_n() + na_a();
    for (const auto& [m, c] : Zd.terms()) {
        CHECK(Zl.coeff(m) == c.subst({x, xa}));
    }
    CHECK(Zl.coeff(Monomial{1, 0, 0, 0, 0, 0}) == x * xa);
}

TEST_CASE("schur expansion agrees with cut-and-join") {
    int D = 6;
    CouplingSeries Zs = schur_Z(D);
    CouplingSeries Zc = cut_and_join_Z(D);
    CHECK((Zs - Zc).is_zero());
}

TEST_CASE("schur coefficients are u<->v symmetric") {
    CouplingSeries Zs = schur_Z(4);
    for (const auto& [m, c] : Zs.terms()) CHECK(c == c.subst({W(), N()}));
}

TEST_CASE("correlators from Z match the explicit formulas") {
    CouplingSeries Z = cut_and_join_Z(7);
    for (int d = 1; d <= 7; ++d) {
        for (const auto& mu : partitions_of(d)) {
            if (mu.length() > 3) continue;
            CHECK(correlator_from_Z(Z, mu.parts()) == correlator(mu.parts()));
        }
    }
}

TEST_CASE("virasoro annihilation of the dessin partition function") {
    int D = 8;
    CouplingSeries Z = cut_and_join_Z(D);
    for (int b = 0; b <= 3; ++b) {
        CouplingSeries LZ = virasoro_dessin(b, D).apply(Z);
        INFO("b = ", b, " trusted to ", LZ.cutoff());
        CHECK(LZ.cutoff() >= D - b - 1);
        CHECK(LZ.is_zero_to(LZ.cutoff()));
    }
}

TEST_CASE("virasoro annihilation of the normalized Laguerre partition function") {
    int D = 8;
    CouplingSeries Z = cut_and_join_Z_laguerre(D);
    for (int m = 0; m <= 3; ++m) {
        CouplingSeries LZ = virasoro_lue1(m, D).apply(Z);
        CHECK(LZ.is_zero_to(LZ.cutoff()));
    }
}

TEST_CASE("virasoro commutator [L1, L2] = -L3 on random series") {
    int D = 8;
    auto L1 = virasoro_dessin(1, D);
    auto L2 = virasoro_dessin(2, D);
    auto L3 = virasoro_dessin(3, D);
    for (uint64_t seed : {1u, 2u, 3u}) {
        CouplingSeries f = random_coupling(seed, D, 12);
        CouplingSeries lhs = L1.apply(L2.apply(f)) - L2.apply(L1.apply(f));
        CouplingSeries rhs = -L3.apply(f);
        CouplingSeries diff = lhs - rhs;
        CHECK(diff.is_zero_to(diff.cutoff()));
    }
}

TEST_CASE("virasoro commutator [L0, Lk] = -k Lk on random series") {
    int D = 7;
    auto L0 = virasoro_dessin(0, D);
    auto L2 = virasoro_dessin(2, D);
    CouplingSeries f = random_coupling(99, D, 10);
    CouplingSeries lhs = L0.apply(L2.apply(f)) - L2.apply(L0.apply(f));
    CouplingSeries rhs = (-L2.apply(f)).scaled(Rational(2));
    CouplingSeries diff = lhs - rhs;
    CHECK(diff.is_zero_to(diff.cutoff()));
}

TEST_CASE("coupling grading (homogeneity identity)") {
    CouplingSeries Z = cut_and_join_Z(6);
    std::string msg;
    CHECK(check_coupling_grading(Z, 6, &msg));
}

TEST_CASE("dilaton equation, coupling part, with negative control") {
    CouplingSeries Z = cut_and_join_Z_laguerre(7);
    CouplingSeries F = series_log(Z);
    std::string msg;
    CHECK(check_dilaton_coupling_part(F, &msg));
    // derivative at p = 0 is <tau_1> = x(x+a), the piece the constant-term
    // assembly must absorb
    CouplingSeries dF = F.derive(0);
    CHECK(dF.coeff(Monomial(7, 0)) == na_n() * (na_n() + na_a()));
    // negative control: perturb one coefficient
    CouplingSeries bad = F;
    Monomial m(7, 0);
    m[2] = 1;
    bad.set_coeff(m, bad.coeff(m) + MultiPoly::constant(Rational(1, 7)));
    CHECK_FALSE(check_dilaton_coupling_part(bad, &msg));
}
