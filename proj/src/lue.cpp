#include "dessin/lue.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>

namespace dessin {

MultiPoly pochhammer(const MultiPoly& x, int l, Pochhammer conv) {
    MultiPoly p = MultiPoly::constant(Rational(1));
    for (int r = 0; r < l; ++r) {
        Rational shift = conv == Pochhammer::kRising ? Rational(r) : Rational(-r);
        p *= x + MultiPoly::constant(shift);
    }
    return p;
}

MultiPoly ggr_A(int l, const MultiPoly& n, const MultiPoly& nprime, Pochhammer conv) {
    if (l < 0) throw std::invalid_argument("ggr_A: negative index");
    if (l == 0) return n;
    MultiPoly acc;
    for (int j = 0; j <= l - 1; ++j) {
        MultiPoly term = pochhammer(n - MultiPoly::constant(Rational(j)), l, conv) *
                         pochhammer(nprime - MultiPoly::constant(Rational(j)), l, conv);
        Rational c = Rational(j % 2 == 0 ? 1 : -1) /
                     (Rational(factorial(j)) * Rational(factorial(l - 1 - j)));
        acc += term * c;
    }
    return acc / Rational(l);
}

MultiPoly ggr_B(int l, const MultiPoly& n, const MultiPoly& nprime, Pochhammer conv) {
    if (l < 0) throw std::invalid_argument("ggr_B: negative index");
    MultiPoly acc;
    for (int j = 0; j <= l; ++j) {
        MultiPoly term = pochhammer(n - MultiPoly::constant(Rational(j)), l, conv) *
                         pochhammer(nprime - MultiPoly::constant(Rational(j)), l, conv);
        Rational c =
            Rational(j % 2 == 0 ? 1 : -1) / (Rational(factorial(j)) * Rational(factorial(l - j)));
        acc += term * c;
    }
    return acc;
}

GGRResolvent ggr_resolvent(int order, Pochhammer conv) {
    GGRResolvent R;
    R.order = order;
    MultiPoly n = na_n(), a = na_a();
    MultiPoly np = n + a;
    MultiPoly one = MultiPoly::constant(Rational(1));
    for (int l = 0; l <= order; ++l) {
        MultiPoly Al = ggr_A(l, n, np, conv) * Rational(l);
        MultiPoly B_up = ggr_B(l, n + one, np + one, conv);
        MultiPoly B_dn = ggr_B(l, n, np, conv);
        R.coeff.push_back(Mat2<MultiPoly>(Al, B_up, -(n * np * B_dn), -Al));
    }
    return R;
}

bool conjugation_check(int order, Pochhammer conv, std::string* msg) {
    GGRResolvent R = ggr_resolvent(order, conv);
    MMatrix M = m_matrix(order + 1);
    MultiPoly n = na_n(), a = na_a();
    MultiPoly np = n + a;
    std::vector<MultiPoly> to_na = {n, np};  // (n, w) -> (n, n+a)

    auto fail = [&](int l, const char* entry) {
        if (msg) {
            std::ostringstream os;
            os << "conjugation fails at lambda^{-" << (l + 1) << "}, entry " << entry;
            *msg = os.str();
        }
        return false;
    };

    for (int l = 0; l <= order; ++l) {
        const Mat2<MultiPoly>& C = R.coeff[static_cast<size_t>(l)];
        // diagonal entries conjugate unchanged
        if (!(M.m11.coeff(l + 1).subst(to_na) == C.a)) return fail(l, "(1,1)");
        if (!(M.m22.coeff(l + 1).subst(to_na) == C.d)) return fail(l, "(2,2)");
        // (1,2): M12 = -(n n') R12;  (2,1): n n' M21 = -R21
        if (!(M.m12.coeff(l + 1).subst(to_na) == -(n * np * C.b))) return fail(l, "(1,2)");
        if (!(n * np * M.m21.coeff(l + 1).subst(to_na) == -C.c)) return fail(l, "(2,1)");
    }
    return true;
}

namespace {

MultiPoly lue_correlator_ggr_route(const std::vector<int>& mu) {
    const int m = static_cast<int>(mu.size());
    int musum = 0;
    for (int p : mu) musum += p;

    if (m == 1) return ggr_A(mu[0], na_n(), na_n() + na_a());

    const int tail_order = musum + 1;
    const int kmax = musum + m + tail_order + 2;

    using MV = Mat2<MultiPoly>;
    struct FactorPair {
        BiFactor<MV> plus, minus;
    };
    static std::map<std::pair<int, int>, FactorPair> cache;
    static std::mutex cache_mutex;
    std::pair<int, int> key{tail_order, kmax};
    FactorPair* fp = nullptr;
    {
        std::lock_guard<std::mutex> lock(cache_mutex);
        auto it = cache.find(key);
        if (it != cache.end()) fp = &it->second;
    }
    if (!fp) {
        GGRResolvent R = ggr_resolvent(tail_order, Pochhammer::kRising);
        std::vector<MV> Rk(static_cast<size_t>(tail_order) + 1, MV::zero());
        Rk[0] = MV::e11();
        for (int t = 1; t <= tail_order; ++t)
            Rk[static_cast<size_t>(t)] = R.coeff[static_cast<size_t>(t - 1)];
        FactorPair built;
        for (int k = 0; k <= kmax; ++k) {
            for (int t = 0; t <= tail_order; ++t) {
                if (RingTraits<MV>::is_zero(Rk[static_cast<size_t>(t)])) continue;
                built.plus.add(-k - 1 - t, k, Rk[static_cast<size_t>(t)]);
                built.minus.add(k - t, -k - 1,
                                RingTraits<MV>::scale(Rk[static_cast<size_t>(t)], Rational(-1)));
            }
        }
        std::lock_guard<std::mutex> lock(cache_mutex);
        fp = &cache.emplace(key, std::move(built)).first->second;
    }

    std::vector<int> degrees;
    for (int p : mu) degrees.push_back(p + 1);

    MV total = cyclic_class_sum(fp->plus, fp->minus, degrees, -(musum + m + 2), kmax);
    return -total.trace();
}

}  // namespace

MultiPoly lue_correlator(const std::vector<int>& mu) {
    if (mu.empty()) throw std::invalid_argument("lue_correlator: empty argument");
    Rational prod(1);
    for (int p : mu) prod *= Rational(p);
    MultiPoly dessin_route =
        correlator(mu).subst({na_n(), na_n() + na_a()}) * prod;
    MultiPoly ggr_route = lue_correlator_ggr_route(mu);
    if (!(dessin_route == ggr_route)) {
        throw std::logic_error("lue_correlator: the dessin route and the resolvent route disagree: " +
                               dessin_route.str() + " vs " + ggr_route.str());
    }
    return dessin_route;
}

std::map<std::pair<int, int>, Rational> cdoc_coefficients(const Partition& mu) {
    const int d = mu.weight();
    const int m = mu.length();
    MultiPoly corr = lue_correlator(mu.parts());

    // substitute a -> n(c-1); the result times n^{m-d-2} must be a Laurent
    // polynomial in n^{-2} with polynomial c-dependence
    static VarNamesPtr nc = make_vars({"n", "c"});
    MultiPoly n = MultiPoly::variable(nc, 0);
    MultiPoly c = MultiPoly::variable(nc, 1);
    MultiPoly sub = corr.subst({n, n * (c - MultiPoly::constant(Rational(1)))});

    std::map<std::pair<int, int>, Rational> out;
    int shift = m - d - 2;
    for (const auto& [mon, coef] : sub.terms()) {
        int en = mon[0] + shift;
        int s = mon[1];
        if (en > 0 || (-en) % 2 != 0)
            throw std::logic_error("cdoc_coefficients: non-exact large-n rewrite");
        int g = (-en) / 2;
        if (s > 1 - 2 * g + d - m)
            throw std::logic_error("cdoc_coefficients: coefficient outside the summation bound");
        auto [it, inserted] = out.try_emplace({g, s}, coef);
        if (!inserted) it->second += coef;
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

}  // namespace dessin
