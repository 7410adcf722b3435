#ifndef DESSIN_DESSIN_CORRELATORS_HPP
#define DESSIN_DESSIN_CORRELATORS_HPP

#include <map>
#include <utility>
#include <vector>

#include "dessin/laurent.hpp"
#include "dessin/multipoly.hpp"
#include "dessin/partitions.hpp"

namespace dessin {

// Shared two-variable family for dessin correlators. The paper's couplings
// (u, v) are identified with (n, w) throughout.
const VarNamesPtr& vars_nw();

MultiPoly nw_n();
MultiPoly nw_w();

// A_{i,j} = (-1)^j n w / ((i+j+1) i! j!) prod_{r=1}^i (n+r)(w+r) prod_{r=1}^j (n-r)(w-r),
// memoized.
const MultiPoly& a_coeff(int i, int j);

// Tail of h(lambda, A, B) = sum_i (1/i!) prod_{r=0}^{i-1} (A+r)(B+r) lambda^{-i}.
// With minus_lambda set, the expansion variable is -lambda, i.e. the i-th
// coefficient picks up (-1)^i.
LaurentTail<MultiPoly> h_tail(int order, const MultiPoly& A, const MultiPoly& B,
                              bool minus_lambda = false);

// h-series of the paper's wave-function building block in (n, w).
LaurentTail<MultiPoly> h_series(int order);

// --- Cyclic contraction engine -------------------------------------------
//
// Computes one coefficient of a cyclic product of two-variable kernels
// F_1(x_1,x_2) F_2(x_2,x_3) ... F_m(x_m,x_1), namely the coefficient of
// prod_j x_j^{-d_j}. Factors are sparse maps (e, f) -> value, where e is the
// exponent contributed to the factor's first variable and f to its second.
template <class Val>
struct BiFactor {
    // rows keyed by first-variable exponent; cells with equal (e, f) merged
    std::map<int, std::vector<std::pair<int, Val>>> rows;

    void add(int e, int f, const Val& v) {
        auto& row = rows[e];
        for (auto& [ff, vv] : row) {
            if (ff == f) {
                vv = vv + v;
                return;
            }
        }
        row.emplace_back(f, v);
    }
};

template <class Val>
Val cyclic_contract(const std::vector<const BiFactor<Val>*>& factors, const std::vector<int>& d,
                    int fmin, int fmax) {
    using T = RingTraits<Val>;
    const size_t m = factors.size();
    Val total = T::zero();
    for (int t = fmin; t <= fmax; ++t) {
        // the first factor must have a row at e = -d_0 - t
        if (factors[0]->rows.find(-d[0] - t) == factors[0]->rows.end()) continue;
        std::map<int, Val> state;
        state[t] = T::one();
        for (size_t j = 0; j < m; ++j) {
            const bool closing = (j + 1 == m);
            std::map<int, Val> next;
            for (const auto& [fprev, acc] : state) {
                int e = -d[j] - fprev;
                auto row = factors[j]->rows.find(e);
                if (row == factors[j]->rows.end()) continue;
                for (const auto& [f, val] : row->second) {
                    if (f < fmin || f > fmax) continue;
                    if (closing && f != t) continue;  // the cycle must close at f = t
                    auto [it, inserted] = next.try_emplace(f, T::zero());
                    it->second = it->second + acc * val;
                }
            }
            state = std::move(next);
            if (state.empty()) break;
        }
        auto it = state.find(t);
        if (it != state.end()) total = total + it->second;
    }
    return total;
}

// All permutations of {0..m-1} fixing 0, as representatives of S_m / C_m.
std::vector<std::vector<int>> cyclic_class_representatives(int m);

// Sum of cyclic contractions over all class representatives. The chain
// value only depends on the cyclic sequence of (degree, orientation) pairs,
// so representatives sharing a signature (up to rotation) are computed once.
template <class Val>
Val cyclic_class_sum(const BiFactor<Val>& plus, const BiFactor<Val>& minus,
                     const std::vector<int>& degrees, int fmin, int fmax) {
    using T = RingTraits<Val>;
    const int m = static_cast<int>(degrees.size());
    std::map<std::vector<std::pair<int, bool>>, Val> memo;
    Val total = T::zero();
    for (const auto& sigma : cyclic_class_representatives(m)) {
        std::vector<std::pair<int, bool>> sig(static_cast<size_t>(m));
        for (int j = 0; j < m; ++j) {
            int a = sigma[static_cast<size_t>(j)];
            int b = sigma[static_cast<size_t>((j + 1) % m)];
            sig[static_cast<size_t>(j)] = {degrees[static_cast<size_t>(a)], a < b};
        }
        std::vector<std::pair<int, bool>> canon = sig;
        for (int r = 1; r < m; ++r) {
            std::rotate(sig.begin(), sig.begin() + 1, sig.end());
            if (sig < canon) canon = sig;
        }
        auto it = memo.find(canon);
        if (it == memo.end()) {
            std::vector<const BiFactor<Val>*> fac;
            std::vector<int> d(static_cast<size_t>(m));
            for (int j = 0; j < m; ++j) {
                fac.push_back(canon[static_cast<size_t>(j)].second ? &plus : &minus);
                d[static_cast<size_t>(j)] = canon[static_cast<size_t>(j)].first;
            }
            it = memo.emplace(canon, cyclic_contract(fac, d, fmin, fmax)).first;
        }
        total = total + it->second;
    }
    return total;
}

// Connected m-point dessin correlator <tau_{mu_1} ... tau_{mu_m}>(n, w, 1)
// as a polynomial in n, w.
MultiPoly one_point(int mu);
MultiPoly m_point(const std::vector<int>& mu);
MultiPoly correlator(const std::vector<int>& mu);

// Coefficient of x1^{-e1} x2^{-e2} in the full two-point right-hand side
// (cyclic sum only, before the 1/(lambda-mu)^2 subtraction). Used by the
// polynomiality well-formedness checks; e2 may be negative (positive powers).
MultiPoly two_point_rhs_coeff(int e1, int e2, int tail_order);

struct DessinCount {
    int k;
    int l;
    int g;
    Rational value;
};

// Reads N_{k,l}(mu) off the correlator polynomial, with genus labels.
std::vector<DessinCount> n_kl(const Partition& mu);

}  // namespace dessin

#endif
