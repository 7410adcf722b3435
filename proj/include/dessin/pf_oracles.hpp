#ifndef DESSIN_PF_ORACLES_HPP
#define DESSIN_PF_ORACLES_HPP

#include <vector>

#include "dessin/dessin_correlators.hpp"
#include "dessin/partitions.hpp"
#include "dessin/series.hpp"

namespace dessin {

// Partition-function series in the couplings p_1..p_D, weight of p_j equal
// to j, with polynomial coefficients. The dessin family uses (n, w), the
// Laguerre family (n, a) with w = n + a.
using CouplingSeries = TruncatedSeries<MultiPoly>;

const VarNamesPtr& vars_na();
MultiPoly na_n();
MultiPoly na_a();

CouplingSeries coupling_zero(int D);

// A finite linear operator sum c(mults) * p^pmon * (d/dp)^dmon.
struct OpTerm {
    MultiPoly coeff;
    Monomial pmon;
    Monomial dmon;
};

class LinearOperator {
public:
    explicit LinearOperator(int D) : nvars_(D) {}

    void add_term(const MultiPoly& coeff, Monomial pmon, Monomial dmon);
    CouplingSeries apply(const CouplingSeries& f) const;

    // Weight shift of each term; min == max means homogeneous.
    int min_shift() const;
    int max_shift() const;
    const std::vector<OpTerm>& terms() const { return terms_; }

private:
    int nvars_;
    std::vector<OpTerm> terms_;
};

// Cut-and-join operators (epsilon = 1). The geometric-part coefficient is
// (i-1) p_i d/dp_{i-1}: the displayed (i-2) fails the weight-2 correlator
// and the Virasoro contraction that produces the operator pins (i-1).
LinearOperator cut_and_join_w(int D);           // dessin form, coefficients in (n, w)
LinearOperator cut_and_join_w_laguerre(int D);  // Laguerre form, coefficients in (n, a)

// Z = e^W(1) summed weight by weight: the weight-d part is W^d(1)/d!.
CouplingSeries cut_and_join_Z(int D);
CouplingSeries cut_and_join_Z_laguerre(int D);

// Schur expansion oracle: sum over partitions of s_mu * prod (u+c)(v+c)/h.
CouplingSeries schur_Z(int D);

// Virasoro operators at epsilon = 1.
LinearOperator virasoro_dessin(int b, int D);
LinearOperator virasoro_lue1(int m, int D);

// Connected correlator <tau_mu> read from log Z (corrects for the
// multinomial normalization of the free energy).
MultiPoly correlator_from_Z(const CouplingSeries& Z, const std::vector<int>& mu);

// The grading of every log-coefficient: for the p_mu coefficient, every
// monomial n^k w^l satisfies k,l >= 1, k+l <= |mu|-m+2 and
// k+l == |mu|-m (mod 2). This is the executable form of the homogeneity
// identity (the epsilon-dependence is reconstructed from the grading).
bool check_coupling_grading(const CouplingSeries& Z, int D, std::string* msg = nullptr);

// Dilaton identity for the coupling-dependent part: |mu| * F_mu equals the
// p_mu-coefficient of dF/dp_1 for every monomial with |mu| >= 1 (the
// constant part is delegated to the Barnes assembly). F is log Z.
bool check_dilaton_coupling_part(const CouplingSeries& F, std::string* msg = nullptr);

}  // namespace dessin

#endif
