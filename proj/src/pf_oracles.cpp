#include "dessin/pf_oracles.hpp"

#include <sstream>
#include <stdexcept>

namespace dessin {

const VarNamesPtr& vars_na() {
    static VarNamesPtr vars = make_vars({"n", "a"});
    return vars;
}
MultiPoly na_n() { return MultiPoly::variable(vars_na(), 0); }
MultiPoly na_a() { return MultiPoly::variable(vars_na(), 1); }

namespace {
VarNamesPtr coupling_vars(int D) {
    VarNames names;
    for (int j = 1; j <= D; ++j) names.push_back("p" + std::to_string(j));
    return make_vars(names);
}
std::vector<int> coupling_weights(int D) {
    std::vector<int> w;
    for (int j = 1; j <= D; ++j) w.push_back(j);
    return w;
}
}  // namespace

CouplingSeries coupling_zero(int D) {
    return CouplingSeries(coupling_vars(D), coupling_weights(D), D);
}

void LinearOperator::add_term(const MultiPoly& coeff, Monomial pmon, Monomial dmon) {
    if (coeff.is_zero()) return;
    pmon.resize(static_cast<size_t>(nvars_), 0);
    dmon.resize(static_cast<size_t>(nvars_), 0);
    terms_.push_back({coeff, std::move(pmon), std::move(dmon)});
}

namespace {
int mono_weight(const Monomial& m) {
    int w = 0;
    for (size_t i = 0; i < m.size(); ++i) w += m[i] * static_cast<int>(i + 1);
    return w;
}
}  // namespace

int LinearOperator::min_shift() const {
    int s = TruncatedSeries<MultiPoly>::kInf;
    for (const auto& t : terms_) s = std::min(s, mono_weight(t.pmon) - mono_weight(t.dmon));
    return s;
}
int LinearOperator::max_shift() const {
    int s = -TruncatedSeries<MultiPoly>::kInf;
    for (const auto& t : terms_) s = std::max(s, mono_weight(t.pmon) - mono_weight(t.dmon));
    return s;
}

CouplingSeries LinearOperator::apply(const CouplingSeries& f) const {
    CouplingSeries out = f.zero_like();
    // trusted window: each term loses weight(dmon) and regains weight(pmon)
    int cutoff = TruncatedSeries<MultiPoly>::kInf;
    for (const auto& t : terms_)
        cutoff = std::min(cutoff, f.cutoff() - mono_weight(t.dmon) + mono_weight(t.pmon));
    out.set_cutoff(cutoff);
    for (const auto& t : terms_) {
        for (const auto& [m, c] : f.terms()) {
            Rational fall(1);
            Monomial r = m;
            bool ok = true;
            for (size_t i = 0; i < r.size() && ok; ++i) {
                for (int k = 0; k < t.dmon[i]; ++k) {
                    if (r[i] == 0) {
                        ok = false;
                        break;
                    }
                    fall *= Rational(r[i]);
                    r[i] -= 1;
                }
            }
            if (!ok || fall.is_zero()) continue;
            for (size_t i = 0; i < r.size(); ++i) r[i] += t.pmon[i];
            if (out.weight_of(r) > out.cutoff()) continue;
            out.set_coeff(r, out.coeff(r) + t.coeff * c * fall);
        }
    }
    return out;
}

namespace {
Monomial unit_mono(int D, int j) {  // exponent vector of p_j
    Monomial m(static_cast<size_t>(D), 0);
    m[static_cast<size_t>(j - 1)] = 1;
    return m;
}

// Shared cut-and-join core: (uv_sum) Lambda_1 + M_1 + (uv_prod) p_1, where
// Lambda_1 = sum_{i>=2} (i-1) p_i d/dp_{i-1} and
// M_1 = sum_{i>=2} sum_{j=1}^{i-1} ((i-1) p_j p_{i-j} d/dp_{i-1}
//                                   + j(i-j) p_{i+1} d2/dp_j dp_{i-j}).
LinearOperator cut_and_join_core(int D, const MultiPoly& sum_uv, const MultiPoly& prod_uv) {
    LinearOperator W(D);
    for (int i = 2; i <= D; ++i)
        W.add_term(sum_uv * Rational(i - 1), unit_mono(D, i), unit_mono(D, i - 1));
    for (int i = 2; i <= D + 1; ++i) {
        for (int j = 1; j <= i - 1; ++j) {
            if (i - 1 <= D && j <= D && i - j <= D) {
                Monomial pm = unit_mono(D, j);
                pm[static_cast<size_t>(i - j - 1)] += 1;
                W.add_term(MultiPoly::constant(Rational(i - 1)), pm, unit_mono(D, i - 1));
            }
            if (i + 1 <= D) {
                Monomial dm = unit_mono(D, j);
                dm[static_cast<size_t>(i - j - 1)] += 1;
                W.add_term(MultiPoly::constant(Rational(static_cast<long>(j) * (i - j))),
                           unit_mono(D, i + 1), dm);
            }
        }
    }
    W.add_term(prod_uv, unit_mono(D, 1), Monomial(static_cast<size_t>(D), 0));
    return W;
}

CouplingSeries exp_of_weight_raising(const LinearOperator& W, int D) {
    if (W.min_shift() != 1 || W.max_shift() != 1)
        throw std::logic_error("cut-and-join operator must raise weight by exactly one");
    CouplingSeries z = coupling_zero(D);
    CouplingSeries part = coupling_zero(D);
    part.set_coeff(Monomial(static_cast<size_t>(D), 0), MultiPoly::constant(Rational(1)));
    z += part;
    for (int d = 1; d <= D; ++d) {
        part = W.apply(part);
        part = part.scaled(Rational(1, d));
        part.set_cutoff(D);
        z += part;
    }
    z.set_cutoff(D);
    return z;
}
}  // namespace

LinearOperator cut_and_join_w(int D) {
    return cut_and_join_core(D, nw_n() + nw_w(), nw_n() * nw_w());
}

LinearOperator cut_and_join_w_laguerre(int D) {
    MultiPoly x = na_n(), a = na_a();
    return cut_and_join_core(D, x + x + a, x * (x + a));
}

CouplingSeries cut_and_join_Z(int D) { return exp_of_weight_raising(cut_and_join_w(D), D); }

CouplingSeries cut_and_join_Z_laguerre(int D) {
    return exp_of_weight_raising(cut_and_join_w_laguerre(D), D);
}

CouplingSeries schur_Z(int D) {
    CouplingSeries z = coupling_zero(D);
    CouplingSeries proto = z;
    std::vector<CouplingSeries> images;
    for (int j = 1; j <= D; ++j) images.push_back(CouplingSeries::variable(proto, j - 1));
    MultiPoly n = nw_n(), w = nw_w();
    for (int d = 0; d <= D; ++d) {
        for (const auto& mu : partitions_of(d)) {
            MultiPoly weight = MultiPoly::constant(Rational(1));
            Rational hooks(1);
            for (const auto& cell : hooks_contents(mu)) {
                MultiPoly c = MultiPoly::constant(Rational(cell.content));
                weight *= (n + c) * (w + c);
                hooks *= Rational(cell.hook);
            }
            weight /= hooks;
            if (d == 0) {
                z += CouplingSeries::constant(proto.vars(), proto.weights(), D, weight);
                continue;
            }
            MultiPoly smu = schur_in_power_sums(mu, power_sum_vars(d));
            CouplingSeries s = subst_poly(smu, images, proto);
            z += s.scaled_coeff(weight);
        }
    }
    z.set_cutoff(D);
    return z;
}

LinearOperator virasoro_dessin(int b, int D) {
    LinearOperator L(D);
    Monomial zero(static_cast<size_t>(D), 0);
    MultiPoly n = nw_n(), w = nw_w();
    if (b >= 1 && b <= D) L.add_term((n + w) * Rational(b), zero, unit_mono(D, b));
    for (int j = 1; b + j <= D; ++j) {
        L.add_term(MultiPoly::constant(Rational(b + j)), unit_mono(D, j), unit_mono(D, b + j));
    }
    if (b + 1 <= D)
        L.add_term(MultiPoly::constant(Rational(-(b + 1))), zero, unit_mono(D, b + 1));
    for (int i = 1; i <= b - 1; ++i) {
        int j = b - i;
        Monomial dm = unit_mono(D, i);
        dm[static_cast<size_t>(j - 1)] += 1;
        L.add_term(MultiPoly::constant(Rational(static_cast<long>(i) * j)), zero, dm);
    }
    if (b == 0) L.add_term(n * w, zero, zero);
    return L;
}

LinearOperator virasoro_lue1(int m, int D) {
    LinearOperator L(D);
    Monomial zero(static_cast<size_t>(D), 0);
    MultiPoly x = na_n(), a = na_a();
    for (int k = 1; k <= m - 1; ++k) {
        Monomial dm = unit_mono(D, k);
        dm[static_cast<size_t>(m - k - 1)] += 1;
        L.add_term(MultiPoly::constant(Rational(static_cast<long>(k) * (m - k))), zero, dm);
    }
    for (int k = 1; k + m <= D; ++k)
        L.add_term(MultiPoly::constant(Rational(k + m)), unit_mono(D, k), unit_mono(D, k + m));
    if (m + 1 <= D)
        L.add_term(MultiPoly::constant(Rational(-(m + 1))), zero, unit_mono(D, m + 1));
    if (m >= 1 && m <= D) L.add_term((x + x + a) * Rational(m), zero, unit_mono(D, m));
    if (m == 0) L.add_term(x * (x + a), zero, zero);
    return L;
}

MultiPoly correlator_from_Z(const CouplingSeries& Z, const std::vector<int>& mu) {
    CouplingSeries F = series_log(Z);
    Monomial m(static_cast<size_t>(Z.nvars()), 0);
    Rational mult(1);
    std::map<int, int> counts;
    for (int p : mu) {
        m[static_cast<size_t>(p - 1)] += 1;
        counts[p] += 1;
    }
    for (const auto& [part, cnt] : counts) mult *= Rational(factorial(cnt));
    return F.coeff(m) * mult;
}

bool check_coupling_grading(const CouplingSeries& Z, int D, std::string* msg) {
    CouplingSeries F = series_log(Z);
    for (const auto& [m, poly] : F.terms()) {
        int w = F.weight_of(m);
        if (w == 0 || w > D) continue;
        int parts = 0;
        for (int e : m) parts += e;
        for (const auto& [xy, c] : poly.terms()) {
            int k = xy.size() > 0 ? xy[0] : 0;
            int l = xy.size() > 1 ? xy[1] : 0;
            bool ok = k >= 1 && l >= 1 && k + l <= w - parts + 2 && (w - parts - k - l) % 2 == 0 &&
                      w - parts - k - l >= -2;
            if (!ok) {
                if (msg) {
                    std::ostringstream os;
                    os << "grading violated at coupling weight " << w << " monomial exponents ("
                       << k << "," << l << ")";
                    *msg = os.str();
                }
                return false;
            }
        }
    }
    return true;
}

bool check_dilaton_coupling_part(const CouplingSeries& F, std::string* msg) {
    CouplingSeries dF1 = F.derive(0);
    for (const auto& [m, poly] : F.terms()) {
        int w = F.weight_of(m);
        if (w == 0 || w > dF1.cutoff()) continue;
        MultiPoly lhs = poly * Rational(w);
        MultiPoly rhs = dF1.coeff(m);
        if (lhs != rhs) {
            if (msg) {
                std::ostringstream os;
                os << "dilaton mismatch at coupling weight " << w;
                *msg = os.str();
            }
            return false;
        }
    }
    return true;
}

}  // namespace dessin
