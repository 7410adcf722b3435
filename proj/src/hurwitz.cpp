#include "dessin/hurwitz.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "dessin/dessin_correlators.hpp"

namespace dessin {

namespace {

const std::vector<Permutation>& conjugacy_class(const Partition& mu) {
    static std::map<std::vector<int>, std::vector<Permutation>> cache;
    auto it = cache.find(mu.parts());
    if (it != cache.end()) return it->second;
    int d = mu.weight();
    std::vector<int> img(static_cast<size_t>(d));
    std::iota(img.begin(), img.end(), 0);
    std::vector<Permutation> cls;
    do {
        Permutation p(img);
        if (p.cycle_type() == mu) cls.push_back(p);
    } while (std::next_permutation(img.begin(), img.end()));
    return cache.emplace(mu.parts(), std::move(cls)).first->second;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

bool generated_group_transitive(const Permutation& alpha,
                                const std::vector<std::pair<int, int>>& taus, int d) {
    UnionFind uf(d);
    for (int i = 0; i < d; ++i) uf.unite(i, alpha(i));
    for (const auto& [a, b] : taus) uf.unite(a, b);
    int root = uf.find(0);
    for (int i = 1; i < d; ++i)
        if (uf.find(i) != root) return false;
    return true;
}

// DFS over strictly monotone transposition sequences: the increasing b-values
// are chosen first, each a_j < b_j freely; the product is maintained
// incrementally by right multiplication.
long long count_sequences(const Permutation& alpha, const Partition& nu, int d, int r) {
    long long count = 0;
    std::vector<std::pair<int, int>> taus(static_cast<size_t>(r));
    Permutation cur = alpha;

    // choose b-values b_1 < ... < b_r from {1..d-1} (0-based), then a < b
    std::vector<int> bs(static_cast<size_t>(r));
    auto leaf = [&]() {
        if (cur.cycle_type() == nu && generated_group_transitive(alpha, taus, d)) ++count;
    };
    auto rec = [&](auto&& self, int j, int minb) -> void {
        if (j == r) {
            leaf();
            return;
        }
        for (int b = minb; b < d; ++b) {
            if (d - 1 - b < r - 1 - j) break;  // not enough larger b's left
            for (int a = 0; a < b; ++a) {
                taus[static_cast<size_t>(j)] = {a, b};
                cur.apply_transposition_right(a, b);
                self(self, j + 1, b + 1);
                cur.apply_transposition_right(a, b);
            }
        }
    };
    if (r == 0) {
        leaf();
        return count;
    }
    rec(rec, 0, 1);
    return count;
}

}  // namespace

long long strictly_monotone_hurwitz(int g, const Partition& mu, const Partition& nu,
                                    int degree_cap) {
    if (g < 0) throw std::invalid_argument("strictly_monotone_hurwitz: negative genus");
    int d = mu.weight();
    if (d != nu.weight())
        throw std::invalid_argument("strictly_monotone_hurwitz: |mu| != |nu|");
    if (d == 0) return 0;
    if (d > degree_cap)
        throw std::invalid_argument("strictly_monotone_hurwitz: degree above cap");
    long long r = mu.length() + nu.length() + 2L * g - 2;
    if (r < 0) return 0;
    if (r > d - 1) return 0;  // b-values are strictly increasing in {2..d}

    static std::map<std::tuple<int, std::vector<int>, std::vector<int>>, long long> cache;
    auto key = std::make_tuple(g, mu.parts(), nu.parts());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    long long total = 0;
    for (const auto& alpha : conjugacy_class(mu))
        total += count_sequences(alpha, nu, d, static_cast<int>(r));
    cache.emplace(key, total);
    return total;
}

DessinHurwitzComparison verify_dessin_hurwitz(const Partition& mu, int g, int l) {
    DessinHurwitzComparison out;
    int d = mu.weight();
    int m = mu.length();
    int k = d - m - l - 2 * g + 2;
    out.k = k;
    if (k < 1 || l < 1)
        throw std::invalid_argument("verify_dessin_hurwitz: inconsistent (g, k, l) grading");

    for (const auto& e : n_kl(mu)) {
        if (e.k == k && e.l == l) out.lhs = e.value;
    }

    Rational mult(1);
    for (const auto& [part, cnt] : mu.multiplicities()) mult *= Rational(factorial(cnt));
    Rational sum;
    for (const auto& nu : partitions_of(d)) {
        if (nu.length() != l) continue;
        sum += Rational(strictly_monotone_hurwitz(g, mu, nu));
    }
    out.rhs = mult / Rational(factorial(d)) * sum;
    out.equal = out.lhs == out.rhs;
    return out;
}

}  // namespace dessin
