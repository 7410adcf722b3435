#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "dessin/partitions.hpp"
#include "dessin/ratfunc.hpp"

using namespace dessin;

TEST_CASE("partitions_of counts and order") {
    CHECK(partitions_of(0).size() == 1);
    CHECK(partitions_of(0)[0].empty());
    CHECK(partitions_of(4).size() == 5);
    CHECK(partitions_of(10).size() == 42);
    // reverse lexicographic: largest first part first
    auto p4 = partitions_of(4);
    CHECK(p4[0] == Partition({4}));
    CHECK(p4[1] == Partition({3, 1}));
    CHECK(p4[2] == Partition({2, 2}));
    CHECK(p4[3] == Partition({2, 1, 1}));
    CHECK(p4[4] == Partition({1, 1, 1, 1}));
}

TEST_CASE("hooks and contents") {
    auto single = hooks_contents(Partition({1}));
    REQUIRE(single.size() == 1);
    CHECK(single[0].hook == 1);
    CHECK(single[0].content == 0);

    auto hc = hooks_contents(Partition({2, 1}));
    std::multiset<int> hooks, contents;
    for (auto& c : hc) {
        hooks.insert(c.hook);
        contents.insert(c.content);
    }
    CHECK(hooks == std::multiset<int>({3, 1, 1}));
    CHECK(contents == std::multiset<int>({0, 1, -1}));

    CHECK(hook_product(Partition({2, 2})) == 12);
}

namespace {
// Standard Young tableaux by brute force, as an independent oracle for the
// hook length formula.
int count_syt(const Partition& mu) {
    int n = mu.weight();
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    int count = 0;
    do {
        // entry k goes to cell (row r, col c) scanning the diagram row by row
        std::vector<std::vector<int>> grid(static_cast<size_t>(mu.length()));
        for (int r = 0; r < mu.length(); ++r)
            grid[static_cast<size_t>(r)].assign(static_cast<size_t>(mu.part(r)), -1);
        int idx = 0;
        bool ok = true;
        for (int r = 0; r < mu.length() && ok; ++r)
            for (int c = 0; c < mu.part(r) && ok; ++c) {
                int v = perm[static_cast<size_t>(idx++)];
                grid[static_cast<size_t>(r)][static_cast<size_t>(c)] = v;
                if (c > 0 && grid[static_cast<size_t>(r)][static_cast<size_t>(c - 1)] > v) ok = false;
                if (r > 0 && grid[static_cast<size_t>(r - 1)][static_cast<size_t>(c)] > v) ok = false;
            }
        if (ok) ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}
}  // namespace

TEST_CASE("hook length formula vs SYT enumeration") {
    for (const auto& mu : {Partition({2, 2}), Partition({3, 1}), Partition({2, 1, 1}),
                           Partition({3, 2})}) {
        mpz_class dim = factorial(mu.weight()) / hook_product(mu);
        CHECK(dim == count_syt(mu));
    }
    CHECK(factorial(4) / hook_product(Partition({2, 2})) == 2);
}

TEST_CASE("class size identity sum_mu d!/z_mu over partitions") {
    for (int d = 1; d <= 8; ++d) {
        Rational sum;
        for (const auto& mu : partitions_of(d)) sum += Rational(factorial(d)) / mu.z();
        // sum over classes of class sizes = d!; here sum d!/z = p-number of perms / ...
        // each conjugacy class of type mu has size d!/z_mu, so the total is d!.
        CHECK(sum == Rational(factorial(d)));
    }
}

TEST_CASE("permutation cycle type, compose, transitivity") {
    Permutation t = Permutation::transposition(3, 0, 1);
    CHECK(t.cycle_type() == Partition({2, 1}));
    CHECK(is_transitive({Permutation(1)}, 1));
    CHECK_FALSE(is_transitive({Permutation::transposition(3, 0, 1)}, 3));
    CHECK(is_transitive({Permutation({1, 2, 0})}, 3));
    Permutation a({1, 0, 2});
    Permutation b({0, 2, 1});
    CHECK(a.compose(b) == Permutation({1, 2, 0}));
}

TEST_CASE("schur polynomials in power sums: classical cases") {
    auto pv = power_sum_vars(2);
    MultiPoly p1 = MultiPoly::variable(pv, 0);
    MultiPoly p2 = MultiPoly::variable(pv, 1);
    CHECK(schur_in_power_sums(Partition({1}), power_sum_vars(1)) ==
          MultiPoly::variable(power_sum_vars(1), 0));
    CHECK(schur_in_power_sums(Partition({2}), pv) == (p1 * p1 + p2) / Rational(2));
    CHECK(schur_in_power_sums(Partition({1, 1}), pv) == (p1 * p1 - p2) / Rational(2));
}

namespace {
// Bialternant Schur polynomial in three variables at a rational point.
Rational schur_bialternant3(const Partition& mu, const std::vector<Rational>& x) {
    auto det3 = [](std::vector<std::vector<Rational>> m) {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    };
    std::vector<std::vector<Rational>> num(3, std::vector<Rational>(3)), den = num;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            num[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                x[static_cast<size_t>(i)].pow(mu.part(j) + 2 - j);
            den[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                x[static_cast<size_t>(i)].pow(2 - j);
        }
    return det3(num) / det3(den);
}
}  // namespace

TEST_CASE("schur expansion agrees with bialternant on random points") {
    std::vector<std::vector<Rational>> points = {
        {Rational(1, 2), Rational(2), Rational(-3)},
        {Rational(3), Rational(1, 3), Rational(5, 7)},
        {Rational(-1, 2), Rational(4, 3), Rational(2, 5)},
    };
    for (int d = 1; d <= 5; ++d) {
        for (const auto& mu : partitions_of(d)) {
            if (mu.length() > 3) continue;
            MultiPoly s = schur_in_power_sums(mu, power_sum_vars(d));
            for (const auto& x : points) {
                std::vector<Rational> powers;
                for (int k = 1; k <= d; ++k)
                    powers.push_back(x[0].pow(k) + x[1].pow(k) + x[2].pow(k));
                CHECK(s.eval(powers) == schur_bialternant3(mu, x));
            }
        }
    }
}

TEST_CASE("schur expansion vanishes when length exceeds variable count") {
    MultiPoly s = schur_in_power_sums(Partition({1, 1, 1, 1}), power_sum_vars(4));
    std::vector<Rational> x = {Rational(2), Rational(3), Rational(5)};
    std::vector<Rational> powers;
    for (int k = 1; k <= 4; ++k) powers.push_back(x[0].pow(k) + x[1].pow(k) + x[2].pow(k));
    CHECK(s.eval(powers) == Rational(0));
}
