#ifndef DESSIN_PARTITIONS_HPP
#define DESSIN_PARTITIONS_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "dessin/multipoly.hpp"

namespace dessin {

// Integer partition: weakly decreasing positive parts.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0) throw std::invalid_argument("Partition: nonpositive part");
            if (i && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("Partition: parts not sorted");
        }
    }

    static Partition of_unsorted(std::vector<int> parts) {
        std::sort(parts.begin(), parts.end(), std::greater<int>());
        while (!parts.empty() && parts.back() == 0) parts.pop_back();
        return Partition(std::move(parts));
    }

    const std::vector<int>& parts() const { return parts_; }
    int weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    int length() const { return static_cast<int>(parts_.size()); }
    bool empty() const { return parts_.empty(); }
    int part(int i) const { return i < length() ? parts_[static_cast<size_t>(i)] : 0; }

    std::map<int, int> multiplicities() const {
        std::map<int, int> m;
        for (int p : parts_) ++m[p];
        return m;
    }

    // z_mu = prod_i i^{n_i} n_i!
    Rational z() const {
        Rational z(1);
        for (const auto& [i, n] : multiplicities()) z *= Rational(i).pow(n) * Rational(factorial(n));
        return z;
    }

    friend bool operator==(const Partition& a, const Partition& b) { return a.parts_ == b.parts_; }
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }
    friend bool operator<(const Partition& a, const Partition& b) { return a.parts_ < b.parts_; }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(parts_[i]);
        }
        return s + ")";
    }

private:
    std::vector<int> parts_;
};

namespace detail {
inline void partitions_rec(int d, int maxpart, std::vector<int>& cur,
                           std::vector<Partition>& out) {
    if (d == 0) {
        out.push_back(Partition(cur));
        return;
    }
    for (int p = std::min(d, maxpart); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(d - p, p, cur, out);
        cur.pop_back();
    }
}
}  // namespace detail

// All partitions of d in reverse lexicographic order: (d), (d-1,1), ...
inline std::vector<Partition> partitions_of(int d) {
    if (d < 0) throw std::invalid_argument("partitions_of: negative");
    std::vector<Partition> out;
    std::vector<int> cur;
    detail::partitions_rec(d, d, cur, out);
    if (d == 0) out = {Partition()};
    return out;
}

struct CellData {
    int hook;
    int content;
};

// One entry per Young-diagram box; contents are column-row (1-indexed rows
// and columns), hooks by arm + leg + 1.
inline std::vector<CellData> hooks_contents(const Partition& mu) {
    std::vector<CellData> out;
    const auto& parts = mu.parts();
    int rows = mu.length();
    for (int i = 1; i <= rows; ++i) {
        int len = parts[static_cast<size_t>(i - 1)];
        for (int j = 1; j <= len; ++j) {
            int arm = len - j;
            int leg = 0;
            for (int k = i + 1; k <= rows; ++k)
                if (parts[static_cast<size_t>(k - 1)] >= j) ++leg;
            out.push_back({arm + leg + 1, j - i});
        }
    }
    return out;
}

inline mpz_class hook_product(const Partition& mu) {
    mpz_class h(1);
    for (const auto& c : hooks_contents(mu)) h *= c.hook;
    return h;
}

// Permutation of {1..d}, stored 0-based.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(int d) : img_(static_cast<size_t>(d)) {
        std::iota(img_.begin(), img_.end(), 0);
    }
    explicit Permutation(std::vector<int> img) : img_(std::move(img)) {
        std::vector<bool> seen(img_.size(), false);
        for (int v : img_) {
            if (v < 0 || v >= static_cast<int>(img_.size()) || seen[static_cast<size_t>(v)])
                throw std::invalid_argument("Permutation: not a bijection");
            seen[static_cast<size_t>(v)] = true;
        }
    }

    static Permutation transposition(int d, int a, int b) {
        Permutation p(d);
        std::swap(p.img_[static_cast<size_t>(a)], p.img_[static_cast<size_t>(b)]);
        return p;
    }

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[static_cast<size_t>(i)]; }
    const std::vector<int>& images() const { return img_; }

    // (a.compose(b))(i) = a(b(i))
    Permutation compose(const Permutation& b) const {
        if (degree() != b.degree()) throw std::invalid_argument("Permutation: degree mismatch");
        std::vector<int> r(img_.size());
        for (size_t i = 0; i < img_.size(); ++i) r[i] = img_[static_cast<size_t>(b.img_[i])];
        return Permutation(std::move(r));
    }

    // Right multiplication by the transposition (a b), in place.
    void apply_transposition_right(int a, int b) {
        std::swap(img_[static_cast<size_t>(a)], img_[static_cast<size_t>(b)]);
    }

    Partition cycle_type() const {
        std::vector<bool> seen(img_.size(), false);
        std::vector<int> cyc;
        for (size_t i = 0; i < img_.size(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            size_t j = i;
            while (!seen[j]) {
                seen[j] = true;
                j = static_cast<size_t>(img_[j]);
                ++len;
            }
            cyc.push_back(len);
        }
        return Partition::of_unsorted(std::move(cyc));
    }

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.img_ == b.img_; }
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.img_ < b.img_; }

private:
    std::vector<int> img_;
};

// Transitivity of the group generated by `gens` on {1..d}: connectivity of
// the orbit graph.
inline bool is_transitive(const std::vector<Permutation>& gens, int d) {
    if (d <= 0) throw std::invalid_argument("is_transitive: d must be positive");
    if (d == 1) return true;
    std::vector<int> reach{0};
    std::vector<bool> seen(static_cast<size_t>(d), false);
    seen[0] = true;
    while (!reach.empty()) {
        int i = reach.back();
        reach.pop_back();
        for (const auto& g : gens) {
            for (int j : {g(i), [&] {
                              // preimage of i under g
                              for (int k = 0; k < d; ++k)
                                  if (g(k) == i) return k;
                              return i;
                          }()}) {
                if (!seen[static_cast<size_t>(j)]) {
                    seen[static_cast<size_t>(j)] = true;
                    reach.push_back(j);
                }
            }
        }
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

// Symmetric-group character chi^lambda(rho) by the Murnaghan-Nakayama rule,
// computed on beta-sets and memoized per (lambda, rho).
class CharacterTable {
public:
    long long chi(const Partition& lambda, const Partition& rho) {
        if (lambda.weight() != rho.weight())
            throw std::invalid_argument("chi: weight mismatch");
        auto key = std::make_pair(lambda.parts(), rho.parts());
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        long long val = compute(lambda, rho);
        memo_[key] = val;
        return val;
    }

private:
    long long compute(const Partition& lambda, const Partition& rho) {
        if (lambda.weight() == 0) return 1;
        int r = rho.parts().front();
        Partition rho_rest(std::vector<int>(rho.parts().begin() + 1, rho.parts().end()));

        int l = lambda.length();
        std::vector<int> beta(static_cast<size_t>(l));
        for (int i = 0; i < l; ++i) beta[static_cast<size_t>(i)] = lambda.part(i) + (l - 1 - i);
        std::set<int> bs(beta.begin(), beta.end());

        long long total = 0;
        for (int b : beta) {
            int nb = b - r;
            if (nb < 0 || bs.count(nb)) continue;
            int between = 0;
            for (int x : bs)
                if (x > nb && x < b) ++between;
            std::set<int> nbs = bs;
            nbs.erase(b);
            nbs.insert(nb);
            std::vector<int> sorted(nbs.rbegin(), nbs.rend());
            std::vector<int> parts;
            for (int i = 0; i < l; ++i) {
                int p = sorted[static_cast<size_t>(i)] - (l - 1 - i);
                if (p > 0) parts.push_back(p);
            }
            long long sign = (between % 2 == 0) ? 1 : -1;
            total += sign * chi(Partition(std::move(parts)), rho_rest);
        }
        return total;
    }

    std::map<std::pair<std::vector<int>, std::vector<int>>, long long> memo_;
};

inline CharacterTable& character_table() {
    static CharacterTable table;
    return table;
}

// Power-sum variable set p_1..p_d used by the Schur expansion.
inline VarNamesPtr power_sum_vars(int d) {
    VarNames names;
    for (int j = 1; j <= d; ++j) names.push_back("p" + std::to_string(j));
    return make_vars(names);
}

// s_mu expanded in power sums: sum_nu chi^mu(nu) p_nu / z_nu.
inline MultiPoly schur_in_power_sums(const Partition& mu, const VarNamesPtr& pvars) {
    int d = mu.weight();
    MultiPoly out(pvars);
    if (d == 0) return MultiPoly::constant(Rational(1));
    for (const auto& nu : partitions_of(d)) {
        long long ch = character_table().chi(mu, nu);
        if (ch == 0) continue;
        Monomial m(pvars->size(), 0);
        for (int p : nu.parts()) m[static_cast<size_t>(p - 1)] += 1;
        out += MultiPoly::monomial(pvars, m, Rational(ch) / nu.z());
    }
    return out;
}

inline MultiPoly schur_in_power_sums(const Partition& mu) {
    return schur_in_power_sums(mu, power_sum_vars(std::max(mu.weight(), 1)));
}

}  // namespace dessin

#endif
