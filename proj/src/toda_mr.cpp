#include "dessin/toda_mr.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace dessin {

JetRing::JetRing(int window) : window_(window) {
    if (window < 0) throw std::invalid_argument("JetRing: negative window");
    VarNames names;
    for (int k = -window; k <= window; ++k) names.push_back("V[" + std::to_string(k) + "]");
    for (int k = -window; k <= window; ++k) names.push_back("W[" + std::to_string(k) + "]");
    vars_ = make_vars(names);
}

int JetRing::index_V(int k) const {
    if (k < -window_ || k > window_) throw std::out_of_range("JetRing: V shift out of window");
    return k + window_;
}
int JetRing::index_W(int k) const {
    if (k < -window_ || k > window_) throw std::out_of_range("JetRing: W shift out of window");
    return (2 * window_ + 1) + k + window_;
}

MultiPoly JetRing::V(int k) const { return MultiPoly::variable(vars_, index_V(k)); }
MultiPoly JetRing::W(int k) const { return MultiPoly::variable(vars_, index_W(k)); }

MultiPoly JetRing::shift(const MultiPoly& p, int s) const {
    if (s == 0) return p;
    int span = 2 * window_ + 1;
    MultiPoly out(vars_);
    for (const auto& [m, c] : p.terms()) {
        Monomial sm(m.size(), 0);
        sm.resize(vars_->size(), 0);
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            int block = static_cast<int>(i) / span;  // 0 = V, 1 = W
            int k = static_cast<int>(i) % span - window_;
            int nk = k + s;
            if (nk < -window_ || nk > window_)
                throw std::out_of_range("JetRing: shift leaves the declared window");
            sm[static_cast<size_t>(block * span + nk + window_)] += m[i];
        }
        out += MultiPoly::monomial(vars_, sm, c);
    }
    return out;
}

MultiPoly JetRing::specialize_dessin(const MultiPoly& p) const {
    MultiPoly n = na_n(), a = na_a();
    std::vector<MultiPoly> images;
    for (int k = -window_; k <= window_; ++k)
        images.push_back(n + n + a + MultiPoly::constant(Rational(2L * k + 1)));
    for (int k = -window_; k <= window_; ++k) {
        MultiPoly nk = n + MultiPoly::constant(Rational(k));
        images.push_back(nk * (nk + a));
    }
    return p.subst(images);
}

ResolventSeries solve_resolvent(const JetRing& ring, int order) {
    ResolventSeries R;
    R.order = order;
    R.ring = &ring;
    size_t sz = static_cast<size_t>(order) + 2;
    R.alpha.assign(sz, MultiPoly());
    R.beta.assign(sz, MultiPoly());
    R.gamma.assign(sz, MultiPoly());
    R.gamma_plus.assign(sz, MultiPoly());

    MultiPoly V0 = ring.V(0), W0 = ring.W(0);
    R.gamma_plus[1] = ring.one();
    for (int k = 1; k <= order; ++k) {
        // det R = 0 at order k: alpha_k = -sum alpha_i alpha_j - sum beta_i gamma_j
        MultiPoly acc;
        for (int i = 1; i <= k - 1; ++i) {
            acc += R.alpha[static_cast<size_t>(i)] * R.alpha[static_cast<size_t>(k - i)];
            acc += R.beta[static_cast<size_t>(i)] * R.gamma[static_cast<size_t>(k - i)];
        }
        R.alpha[static_cast<size_t>(k)] = -acc;
        R.gamma[static_cast<size_t>(k)] = ring.shift(R.gamma_plus[static_cast<size_t>(k)], -1);
        R.beta[static_cast<size_t>(k)] = -(W0 * R.gamma_plus[static_cast<size_t>(k)]);
        // (2,1) entry of Lambda(R) U = U R at order k:
        // gamma_plus_{k+1} = gamma_plus_k V_0 + delta_{k,0} + alpha_k + Lambda(alpha_k)
        R.gamma_plus[static_cast<size_t>(k + 1)] =
            R.gamma_plus[static_cast<size_t>(k)] * V0 + R.alpha[static_cast<size_t>(k)] +
            ring.shift(R.alpha[static_cast<size_t>(k)], 1);
    }
    return R;
}

bool resolvent_equation_check(const JetRing& ring, const ResolventSeries& R, std::string* msg) {
    MultiPoly V0 = ring.V(0), W0 = ring.W(0);
    auto fail = [&](int k, const char* what) {
        if (msg) *msg = std::string("resolvent equation fails at order ") + std::to_string(k) +
                        " (" + what + ")";
        return false;
    };
    for (int k = 1; k <= R.order - 1; ++k) {
        // (1,1): (Lambda(alpha)-alpha) V0 - (Lambda(alpha)-alpha)_{k+1 part} ...
        MultiPoly da = ring.shift(R.alpha[static_cast<size_t>(k)], 1) - R.alpha[static_cast<size_t>(k)];
        MultiPoly da_next =
            ring.shift(R.alpha[static_cast<size_t>(k + 1)], 1) - R.alpha[static_cast<size_t>(k + 1)];
        MultiPoly lhs = da * V0 - da_next;
        MultiPoly rhs = ring.shift(R.beta[static_cast<size_t>(k)], 1) + W0 * R.gamma[static_cast<size_t>(k)];
        if (lhs != rhs) return fail(k, "(1,1)");
        // (2,2): Lambda(gamma_k) W0 = -beta_k
        if (!(W0 * R.gamma_plus[static_cast<size_t>(k)] == -R.beta[static_cast<size_t>(k)]))
            return fail(k, "(2,2)");
    }
    // det R = 0, re-expanded independently of the solver's update order
    for (int k = 1; k <= R.order; ++k) {
        MultiPoly full;
        for (int i = 1; i <= k - 1; ++i)
            full += R.alpha[static_cast<size_t>(i)] * R.alpha[static_cast<size_t>(k - i)] +
                    R.beta[static_cast<size_t>(i)] * R.gamma[static_cast<size_t>(k - i)];
        if (!(R.alpha[static_cast<size_t>(k)] + full == MultiPoly())) return fail(k, "det");
    }
    return true;
}

TauStructure omega_and_s(const JetRing& ring, const ResolventSeries& R, int r) {
    if (r + 2 > R.order)
        throw std::invalid_argument("omega_and_s: resolvent order too small for requested window");
    TauStructure tau;
    for (int i = 0; i <= r; ++i) tau.S.push_back(R.gamma_plus[static_cast<size_t>(i + 2)]);

    auto T = [&](int k, int l) -> MultiPoly {
        MultiPoly t = R.alpha[static_cast<size_t>(k)] * R.alpha[static_cast<size_t>(l)];
        t += t;
        t += R.beta[static_cast<size_t>(k)] * R.gamma[static_cast<size_t>(l)];
        t += R.gamma[static_cast<size_t>(k)] * R.beta[static_cast<size_t>(l)];
        return t;
    };

    for (int i = 0; i <= r; ++i) {
        for (int j = 0; j <= r; ++j) {
            if (i + j + 2 > R.order) continue;
            MultiPoly omega = R.alpha[static_cast<size_t>(i + j + 2)] * Rational(i + 1);
            for (int t = 0; t <= i - 1; ++t) {
                int k = i - t, l = j + 2 + t;
                if (l > R.order) continue;
                omega += T(k, l) * Rational(t + 1);
            }
            tau.Omega[{i, j}] = omega;
        }
    }
    return tau;
}

TodaFlows::TodaFlows(const JetRing& ring, const TauStructure& tau, int r) : ring_(ring), r_(r) {
    for (int j = 0; j <= r; ++j) {
        const MultiPoly& o = tau.Omega.at({0, j});
        dV0_.push_back(ring.shift(o, 1) - o);
        const MultiPoly& s = tau.S[static_cast<size_t>(j)];
        dW0_.push_back(ring.W(0) * (s - ring.shift(s, -1)));
    }
}

MultiPoly TodaFlows::derive(const MultiPoly& p, int j) const {
    if (j < 0 || j > r_) throw std::out_of_range("TodaFlows::derive");
    int span = 2 * ring_.window() + 1;
    MultiPoly out(ring_.vars());
    for (const auto& [m, c] : p.terms()) {
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            int block = static_cast<int>(i) / span;
            int k = static_cast<int>(i) % span - ring_.window();
            MultiPoly dvar = block == 0 ? ring_.shift(dV0_[static_cast<size_t>(j)], k)
                                        : ring_.shift(dW0_[static_cast<size_t>(j)], k);
            Monomial rest = m;
            rest.resize(ring_.vars()->size(), 0);
            rest[i] -= 1;
            out += MultiPoly::monomial(ring_.vars(), rest, c * Rational(m[i])) * dvar;
        }
    }
    return out;
}

bool verify_tau_structure(int r, std::string* msg) {
    // window: resolvent order 2r+3 reaches down to -(2r+2); flow shifts add r+2
    JetRing ring(3 * r + 7);
    ResolventSeries R = solve_resolvent(ring, 2 * r + 3);
    TauStructure tau = omega_and_s(ring, R, 2 * r + 1);
    TodaFlows flows(ring, tau, r);

    // Toda equation base case: dV0/dt0 = Lambda(W0) - W0, dW0/dt0 = W0 (V0 - V_{-1})
    MultiPoly W0 = ring.W(0), V0 = ring.V(0);
    if (!(flows.derive(V0, 0) == ring.shift(W0, 1) - W0)) {
        if (msg) *msg = "t0 flow on V does not match the Toda equation";
        return false;
    }
    if (!(flows.derive(W0, 0) == W0 * (V0 - ring.V(-1)))) {
        if (msg) *msg = "t0 flow on W does not match the Toda equation";
        return false;
    }

    for (int i = 0; i <= r; ++i) {
        for (int j = 0; j <= r; ++j) {
            const MultiPoly& om = tau.Omega.at({i, j});
            const MultiPoly& om_t = tau.Omega.at({j, i});
            if (!(om == om_t)) {
                if (msg) *msg = "Omega symmetry fails at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")";
                return false;
            }
            MultiPoly lhs = ring.shift(om, 1) - om;
            MultiPoly rhs = flows.derive(tau.S[static_cast<size_t>(i)], j);
            if (!(lhs == rhs)) {
                if (msg) *msg = "(Lambda-1)Omega_{i,j} != dS_i/dt_j at (" + std::to_string(i) +
                                "," + std::to_string(j) + ")";
                return false;
            }
            // (1 - Lambda^{-1}) S_i = d log W / dt_i, cleared of the W denominator
            MultiPoly lhs2 = W0 * (tau.S[static_cast<size_t>(i)] -
                                   ring.shift(tau.S[static_cast<size_t>(i)], -1));
            if (!(lhs2 == flows.derive(W0, i))) {
                if (msg) *msg = "(1-Lambda^{-1}) S_i != d log W/dt_i at i=" + std::to_string(i);
                return false;
            }
        }
    }
    return true;
}

namespace {
LaurentTail<MultiPoly> h_prod(int order, const MultiPoly& A1, const MultiPoly& B1, bool minus1,
                              const MultiPoly& A2, const MultiPoly& B2, bool minus2) {
    return h_tail(order, A1, B1, minus1) * h_tail(order, A2, B2, minus2);
}
}  // namespace

MMatrix m_matrix(int order) {
    MultiPoly n = nw_n(), w = nw_w();
    MultiPoly one = MultiPoly::constant(Rational(1));
    MMatrix M;
    M.order = order;
    int N = order + 2;
    M.m11 = h_prod(N, -n, -w, true, n, w, false).truncated(order);
    M.m12 = h_prod(N, -n, -w, true, n + one, w + one, false).shifted(1).scaled(-(n * w)).truncated(order);
    M.m21 = h_prod(N, one - n, one - w, true, n, w, false).shifted(1).truncated(order);
    M.m22 = h_prod(N, one - n, one - w, true, n + one, w + one, false)
                .shifted(2)
                .scaled(-(n * w))
                .truncated(order);
    return M;
}

bool m_matrix_axioms(const MMatrix& M, std::string* msg) {
    LaurentTail<MultiPoly> tr = M.m11 + M.m22;
    LaurentTail<MultiPoly> one_tail = LaurentTail<MultiPoly>::constant(M.order, MultiPoly::constant(Rational(1)));
    if (!(tr == one_tail)) {
        if (msg) *msg = "tr M != 1";
        return false;
    }
    LaurentTail<MultiPoly> det = M.m11 * M.m22 - M.m12 * M.m21;
    if (!det.is_zero()) {
        if (msg) *msg = "det M != 0";
        return false;
    }
    return true;
}

bool wave_pair_eigen_check(int order, std::string* msg) {
    MultiPoly n = nw_n(), w = nw_w();
    MultiPoly one = MultiPoly::constant(Rational(1));
    int N = order + 2;

    // psi_A tail: lambda h(-l,-n-1,-w-1) + (n+w+1) h(-l,-n,-w)
    //             + n w lambda^{-1} h(-l,1-n,1-w) = lambda h(-l,-n,-w)
    auto hA_up = h_tail(N, -n - one, -w - one, true);
    auto hA = h_tail(N, -n, -w, true);
    auto hA_dn = h_tail(N, one - n, one - w, true);
    for (int k = 0; k + 1 <= N - 1; ++k) {
        MultiPoly lhs = hA_up.coeff(k + 1) + (n + w + one) * hA.coeff(k) +
                        (k >= 1 ? n * w * hA_dn.coeff(k - 1) : MultiPoly());
        MultiPoly rhs = hA.coeff(k + 1);
        if (!(lhs == rhs)) {
            if (msg) *msg = "psi_A eigen-equation fails at order " + std::to_string(k);
            return false;
        }
    }

    // psi_B tail: (n+1)(w+1) lambda^{-1} h(l,n+2,w+2) + (n+w+1) h(l,n+1,w+1)
    //             + lambda h(l,n,w) = lambda h(l,n+1,w+1)
    auto hB_up = h_tail(N, n + one + one, w + one + one, false);
    auto hB = h_tail(N, n + one, w + one, false);
    auto hB_dn = h_tail(N, n, w, false);
    for (int k = 0; k + 1 <= N - 1; ++k) {
        MultiPoly lhs = (k >= 1 ? (n + one) * (w + one) * hB_up.coeff(k - 1) : MultiPoly()) +
                        (n + w + one) * hB.coeff(k) + hB_dn.coeff(k + 1);
        MultiPoly rhs = hB.coeff(k + 1);
        if (!(lhs == rhs)) {
            if (msg) *msg = "psi_B eigen-equation fails at order " + std::to_string(k);
            return false;
        }
    }
    return true;
}

bool wave_pair_normalization_check(int order, std::string* msg) {
    MMatrix M = m_matrix(order);
    LaurentTail<MultiPoly> tr = M.m11 + M.m22;
    if (!(tr == LaurentTail<MultiPoly>::constant(M.order, MultiPoly::constant(Rational(1))))) {
        if (msg) *msg = "wave normalization d(lambda) e^{s} != lambda";
        return false;
    }
    return true;
}

bool wave_bridge_check(int bi_order, std::string* msg) {
    MultiPoly n = nw_n(), w = nw_w();
    MultiPoly one = MultiPoly::constant(Rational(1));
    // the geometric expansion pushes the mu-index down to J + I - 1
    int N = 2 * bi_order + 4;
    auto A = h_tail(N, -n, -w, true);
    auto Bm = h_tail(N, n, w, false);
    auto Am = h_tail(N, one - n, one - w, true);
    auto B = h_tail(N, n + one, w + one, false);

    // P(l,m) = A(l) Bm(m) - n w l^{-1} m^{-1} Am(l) B(m); reduced kernel is
    // P/(l-m) with |l| > |m|. Coefficient at l^{-I} m^{-J}:
    auto Pcoef = [&](int i, int j) -> MultiPoly {
        MultiPoly r;
        if (i >= 0 && j >= 0 && i <= N && j <= N) r += A.coeff(i) * Bm.coeff(j);
        if (i >= 1 && j >= 1 && i - 1 <= N && j - 1 <= N)
            r -= n * w * Am.coeff(i - 1) * B.coeff(j - 1);
        return r;
    };
    for (int I = 1; I <= bi_order + 1; ++I) {
        for (int J = 1; J <= bi_order + 1; ++J) {
            MultiPoly sum;
            for (int k = 0; k <= I - 1; ++k) sum += Pcoef(I - k - 1, J + k);
            if (!(sum == a_coeff(J - 1, I - 1))) {
                if (msg) *msg = "wave bridge fails at lambda^{-" + std::to_string(I) + "} mu^{-" +
                                std::to_string(J) + "}";
                return false;
            }
        }
    }
    return true;
}

bool product_formula_check(const JetRing& ring, int order, std::string* msg) {
    ResolventSeries R = solve_resolvent(ring, order);
    MMatrix M = m_matrix(order);
    MultiPoly x = na_n(), a = na_a();
    std::vector<MultiPoly> to_na = {x, x + a};  // (n, w) -> (n, n+a)
    for (int k = 1; k <= order; ++k) {
        MultiPoly a11 = ring.specialize_dessin(R.alpha[static_cast<size_t>(k)]);
        MultiPoly a12 = ring.specialize_dessin(R.beta[static_cast<size_t>(k)]);
        MultiPoly a21 = ring.specialize_dessin(R.gamma[static_cast<size_t>(k)]);
        MultiPoly m11 = M.m11.coeff(k).subst(to_na);
        MultiPoly m12 = M.m12.coeff(k).subst(to_na);
        MultiPoly m21 = M.m21.coeff(k).subst(to_na);
        MultiPoly m22 = M.m22.coeff(k).subst(to_na);
        if (!(a11 == m11 && a12 == m12 && a21 == m21 && -a11 == m22)) {
            if (msg) *msg = "specialized resolvent differs from M(lambda) at order " +
                            std::to_string(k);
            return false;
        }
    }
    return true;
}

MultiPoly mr_n_point(const std::vector<int>& mu) {
    const int m = static_cast<int>(mu.size());
    if (m < 2) throw std::invalid_argument("mr_n_point: need m >= 2");
    int musum = 0;
    for (int p : mu) {
        if (p < 1) throw std::invalid_argument("mr_n_point: parts must be >= 1");
        musum += p;
    }
    const int N = musum;
    const int kmax = musum + m + N + 2;
    const int fmin = -(musum + m + 2);

    // M(lambda) has trace one and vanishing determinant, so it factors as a
    // column times a row and the cyclic trace collapses to a scalar product
    // of pairings S(lambda, mu) = r(lambda)^T c(mu):
    //   S = h(l,n,w) h(-m,-n,-w) - n w l^{-1} m^{-1} h(l,1+n,1+w) h(-m,1-n,1-w).
    // Around the cycle the tail budget satisfies sum (s_j + t_j + 1) = sum d_j,
    // so cells with s + t > musum can never contribute. The factors depend
    // only on (musum, kmax) and are cached across calls.
    struct FactorPair {
        BiFactor<MultiPoly> plus, minus;
    };
    static std::map<std::pair<int, int>, FactorPair> cache;
    static std::mutex cache_mutex;
    std::pair<int, int> key{musum, kmax};
    FactorPair* fp = nullptr;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) fp = &it->second;
    }
    if (!fp) {
        MultiPoly n = nw_n(), w = nw_w();
        MultiPoly one = MultiPoly::constant(Rational(1));
        auto hr = h_tail(N, n, w, false);
        auto hrp = h_tail(N, n + one, w + one, false);
        auto hc = h_tail(N, -n, -w, true);
        auto hcp = h_tail(N, one - n, one - w, true);

        FactorPair built;
        for (int s = 0; s <= N; ++s) {
            for (int t = 0; s + t <= musum; ++t) {
                MultiPoly val = hr.coeff(s) * hc.coeff(t);
                if (s >= 1 && t >= 1) val -= nw_n() * nw_w() * hrp.coeff(s - 1) * hcp.coeff(t - 1);
                if (val.is_zero()) continue;
                for (int k = 0; k <= kmax; ++k) {
                    built.plus.add(-s - k - 1, -t + k, val);
                    built.minus.add(-s + k, -t - k - 1, -val);
                }
            }
        }
        std::lock_guard<std::mutex> lock(cache_mutex);
        fp = &cache.emplace(key, std::move(built)).first->second;
    }
    const BiFactor<MultiPoly>& plus = fp->plus;
    const BiFactor<MultiPoly>& minus = fp->minus;

    std::vector<int> degrees;
    for (int p : mu) degrees.push_back(p + 1);

    MultiPoly total = cyclic_class_sum(plus, minus, degrees, fmin, kmax);
    total = -total;
    Rational div(1);
    for (int p : mu) div *= Rational(p);
    total = total / div;
    return total.subst({na_n(), na_n() + na_a()});
}

}  // namespace dessin
