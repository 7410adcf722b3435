#include "dessin/dessin_correlators.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace dessin {

const VarNamesPtr& vars_nw() {
    static VarNamesPtr vars = make_vars({"n", "w"});
    return vars;
}

MultiPoly nw_n() { return MultiPoly::variable(vars_nw(), 0); }
MultiPoly nw_w() { return MultiPoly::variable(vars_nw(), 1); }

const MultiPoly& a_coeff(int i, int j) {
    if (i < 0 || j < 0) throw std::invalid_argument("a_coeff: negative index");
    static std::map<std::pair<int, int>, MultiPoly> memo;
    auto key = std::make_pair(i, j);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    MultiPoly n = nw_n(), w = nw_w();
    MultiPoly p = n * w;
    for (int r = 1; r <= i; ++r)
        p *= (n + MultiPoly::constant(Rational(r))) * (w + MultiPoly::constant(Rational(r)));
    for (int r = 1; r <= j; ++r)
        p *= (n - MultiPoly::constant(Rational(r))) * (w - MultiPoly::constant(Rational(r)));
    Rational scale = Rational((j % 2 == 0) ? 1 : -1) /
                     (Rational(i + j + 1) * Rational(factorial(i)) * Rational(factorial(j)));
    p *= scale;
    return memo.emplace(key, std::move(p)).first->second;
}

LaurentTail<MultiPoly> h_tail(int order, const MultiPoly& A, const MultiPoly& B,
                              bool minus_lambda) {
    LaurentTail<MultiPoly> t(order);
    MultiPoly run = MultiPoly::constant(Rational(1));
    t.set_coeff(0, run);
    for (int i = 1; i <= order; ++i) {
        MultiPoly r1 = A + MultiPoly::constant(Rational(i - 1));
        MultiPoly r2 = B + MultiPoly::constant(Rational(i - 1));
        run *= r1 * r2;
        Rational c = inv_factorial(i);
        if (minus_lambda && (i % 2 == 1)) c = -c;
        t.set_coeff(i, run * c);
    }
    return t;
}

LaurentTail<MultiPoly> h_series(int order) { return h_tail(order, nw_n(), nw_w()); }

std::vector<std::vector<int>> cyclic_class_representatives(int m) {
    std::vector<int> rest;
    for (int i = 1; i < m; ++i) rest.push_back(i);
    std::vector<std::vector<int>> out;
    do {
        std::vector<int> sigma{0};
        sigma.insert(sigma.end(), rest.begin(), rest.end());
        out.push_back(sigma);
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

namespace {

// The two-variable kernel of the m-point formula, with the geometric part
// of 1/(x - y) expanded in the nested region |lambda_1| > |lambda_2| > ...
// (so the variable with the smaller index is the major one), plus the
// bilinear tail sum_{i,j} A_{i,j} x^{-j-1} y^{-i-1}.
//
// The tail pairs the A-indices transposed relative to the geometric
// orientation; this is the assignment under which the two-point values match
// the Virasoro constraints and the matrix-resolvent route (the convention is
// pinned by the cross-oracle tests).
BiFactor<MultiPoly> a_hat_factor(bool first_is_major, int tail_order, int kmax) {
    BiFactor<MultiPoly> f;
    MultiPoly one = MultiPoly::constant(Rational(1));
    for (int k = 0; k <= kmax; ++k) {
        if (first_is_major)
            f.add(-k - 1, k, one);
        else
            f.add(k, -k - 1, -one);
    }
    // per-edge degree budget: a tail cell of depth i+j+2 can only contribute
    // when i + j + 2 <= sum(d) - (m-1), and m >= 2
    for (int i = 0; i <= tail_order; ++i)
        for (int j = 0; i + j <= tail_order; ++j) f.add(-j - 1, -i - 1, a_coeff(i, j));
    return f;
}

// factors shared across calls with the same window
const BiFactor<MultiPoly>& a_hat_cached(bool first_is_major, int tail_order, int kmax) {
    static std::map<std::tuple<bool, int, int>, BiFactor<MultiPoly>> cache;
    static std::mutex cache_mutex;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_tuple(first_is_major, tail_order, kmax);
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, a_hat_factor(first_is_major, tail_order, kmax)).first;
    return it->second;
}

MultiPoly cyclic_sum_a_hat(const std::vector<int>& degrees, int tail_order) {
    const int m = static_cast<int>(degrees.size());
    int dsum = 0;
    for (int d : degrees) dsum += std::abs(d);
    const int kmax = dsum + tail_order + 2;
    const BiFactor<MultiPoly>& plus = a_hat_cached(true, tail_order, kmax);
    const BiFactor<MultiPoly>& minus = a_hat_cached(false, tail_order, kmax);

    return cyclic_class_sum(plus, minus, degrees, -(tail_order + m + 2), kmax);
}

}  // namespace

MultiPoly one_point(int mu) {
    if (mu < 1) throw std::invalid_argument("one_point: mu must be >= 1");
    int order = mu + 1;
    auto minus = h_tail(order, -nw_n(), -nw_w(), true);
    auto plus = h_tail(order, nw_n(), nw_w(), false);
    auto prod = minus * plus;
    MultiPoly num = prod.coeff(mu + 1);
    return num / Rational(static_cast<long>(mu) * mu);
}

MultiPoly m_point(const std::vector<int>& mu) {
    const int m = static_cast<int>(mu.size());
    if (m < 2) throw std::invalid_argument("m_point: need m >= 2");
    int musum = 0;
    for (int p : mu) {
        if (p < 1) throw std::invalid_argument("m_point: parts must be >= 1");
        musum += p;
    }
    std::vector<int> degrees;
    degrees.reserve(mu.size());
    for (int p : mu) degrees.push_back(p + 1);
    MultiPoly total = cyclic_sum_a_hat(degrees, musum);
    if (m % 2 == 0) total = -total;  // (-1)^{m-1}
    Rational div(1);
    for (int p : mu) div *= Rational(p);
    return total / div;
}

MultiPoly correlator(const std::vector<int>& mu) {
    if (mu.size() == 1) return one_point(mu[0]);
    return m_point(mu);
}

MultiPoly two_point_rhs_coeff(int e1, int e2, int tail_order) {
    return -cyclic_sum_a_hat({e1, e2}, tail_order);  // (-1)^{m-1} with m = 2
}

std::vector<DessinCount> n_kl(const Partition& mu) {
    if (mu.empty()) throw std::invalid_argument("n_kl: empty partition");
    std::vector<int> parts = mu.parts();
    MultiPoly corr = correlator(parts);
    int m = mu.length();
    int top = mu.weight() - m + 2;
    std::vector<DessinCount> out;
    for (const auto& [mon, c] : corr.terms()) {
        int k = mon.size() > 0 ? mon[0] : 0;
        int l = mon.size() > 1 ? mon[1] : 0;
        int rem = top - k - l;
        if (rem < 0 || rem % 2 != 0)
            throw std::logic_error("n_kl: monomial violates the genus grading");
        out.push_back({k, l, rem / 2, c});
    }
    std::sort(out.begin(), out.end(), [](const DessinCount& a, const DessinCount& b) {
        return std::tie(a.g, a.k, a.l) < std::tie(b.g, b.k, b.l);
    });
    return out;
}

}  // namespace dessin
