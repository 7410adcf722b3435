#ifndef DESSIN_TODA_MR_HPP
#define DESSIN_TODA_MR_HPP

#include <map>
#include <string>
#include <vector>

#include "dessin/dessin_correlators.hpp"
#include "dessin/laurent.hpp"
#include "dessin/pf_oracles.hpp"

namespace dessin {

// Polynomial ring in the lattice jets V(x + k eps), W(x + k eps) for k in a
// fixed window, with the shift endomorphism. Every operation declares its
// window up front: shifting a monomial out of the window throws rather than
// silently producing zeros.
class JetRing {
public:
    explicit JetRing(int window);

    int window() const { return window_; }
    const VarNamesPtr& vars() const { return vars_; }

    MultiPoly V(int k) const;
    MultiPoly W(int k) const;
    MultiPoly one() const { return MultiPoly::constant(Rational(1)); }

    // Lambda^s
    MultiPoly shift(const MultiPoly& p, int s) const;

    // Specialize at the dessin initial data (eps = 1):
    // V_k -> 2(n+k)+a+1, W_k -> (n+k)(n+k+a), landing in (n, a).
    MultiPoly specialize_dessin(const MultiPoly& p) const;

private:
    int index_V(int k) const;
    int index_W(int k) const;

    int window_;
    VarNamesPtr vars_;
};

// Basic matrix resolvent R(lambda) = E11 + sum_{k>=1} R_k lambda^{-k} with
// R_k = [[alpha_k, beta_k], [gamma_k, -alpha_k]] solved order by order from
// Lambda(R) U = U R, tr R = 1, det R = 0.
struct ResolventSeries {
    int order = 0;
    const JetRing* ring = nullptr;
    // index 0 unused; entries 1..order
    std::vector<MultiPoly> alpha, beta, gamma, gamma_plus;

    Mat2<MultiPoly> coeff(int k) const {
        return Mat2<MultiPoly>(alpha[static_cast<size_t>(k)], beta[static_cast<size_t>(k)],
                               gamma[static_cast<size_t>(k)], -alpha[static_cast<size_t>(k)]);
    }
};

ResolventSeries solve_resolvent(const JetRing& ring, int order);

// Checks the equation entries that the solver does not use directly.
bool resolvent_equation_check(const JetRing& ring, const ResolventSeries& R, std::string* msg);

// S_i = Coef(Lambda(gamma), lambda^{-i-2}) and the two-point jet values
// Omega_{i,j} extracted from tr R(lambda) R(mu) / (lambda-mu)^2 - 1/(lambda-mu)^2.
struct TauStructure {
    std::vector<MultiPoly> S;                    // S_0..S_r
    std::map<std::pair<int, int>, MultiPoly> Omega;  // (i,j) for i,j <= r
};

TauStructure omega_and_s(const JetRing& ring, const ResolventSeries& R, int r);

// Toda flows d/dt_j acting on the jet ring through the resolvent data:
// dV_0/dt_j = (Lambda - 1) Omega_{0,j}, dW_0/dt_j = W_0 (1 - Lambda^{-1}) S_j.
class TodaFlows {
public:
    TodaFlows(const JetRing& ring, const TauStructure& tau, int r);
    MultiPoly derive(const MultiPoly& p, int j) const;

private:
    const JetRing& ring_;
    int r_;
    std::vector<MultiPoly> dV0_, dW0_;
};

// (Lambda - 1) Omega_{i,j} = dS_i/dt_j and (1 - Lambda^{-1}) S_i = d(log W)/dt_i
// for i, j <= r (eps = 1).
bool verify_tau_structure(int r, std::string* msg);

// --- Wave functions and the explicit two-by-two matrix -------------------

// M(lambda) of the dessin solution, entries as Laurent tails over (n, w).
struct MMatrix {
    int order = 0;
    LaurentTail<MultiPoly> m11, m12, m21, m22;
};

MMatrix m_matrix(int order);

// tr M = 1 and det M = 0 as tails.
bool m_matrix_axioms(const MMatrix& M, std::string* msg);

// Eigen-equations L_ini psi = lambda psi for the two wave-function tails,
// with the prefactors cancelled analytically (eps = 1, w = n + alpha).
bool wave_pair_eigen_check(int order, std::string* msg);

// d(lambda) e^{s(n-1;1)} = lambda, equivalently tr M(lambda) = 1.
bool wave_pair_normalization_check(int order, std::string* msg);

// Prefactor-reduced kernel of the wave-function pairing:
//   [lambda mu h(-l,-n,-w) h(m,n,w) - n w h(-l,1-n,1-w) h(m,n+1,w+1)]
//     / (lambda mu (lambda - mu))
// expanded with |lambda| > |mu|; equals the m-point kernel coefficient for
// coefficient A_{J-1,I-1} at lambda^{-I} mu^{-J}.
bool wave_bridge_check(int bi_order, std::string* msg);

// Specialized resolvent (initial data) equals M(lambda) with w = n + a.
bool product_formula_check(const JetRing& ring, int order, std::string* msg);

// Cyclic trace formula over M(lambda_j): the m-point correlator route
// through the matrix resolvent, as a polynomial in (n, a).
MultiPoly mr_n_point(const std::vector<int>& mu);

}  // namespace dessin

#endif
