#ifndef DESSIN_LUE_HPP
#define DESSIN_LUE_HPP

#include <map>
#include <string>
#include <vector>

#include "dessin/toda_mr.hpp"

namespace dessin {

// Pochhammer variant used by the A_l / B_l sums. The shipped default is the
// rising product x(x+1)...(x+l-1): it is the variant under which the
// conjugation to M(lambda) holds (the falling variant is kept as a negative
// control).
enum class Pochhammer { kRising, kFalling };

MultiPoly pochhammer(const MultiPoly& x, int l, Pochhammer conv);

// A_0 = n; A_l = (1/l) sum_{j=0}^{l-1} (-1)^j (n-j)_l (n'-j)_l / (j! (l-1-j)!)
// B_l = sum_{j=0}^{l} (-1)^j (n-j)_l (n'-j)_l / (j! (l-j)!)
MultiPoly ggr_A(int l, const MultiPoly& n, const MultiPoly& nprime,
                Pochhammer conv = Pochhammer::kRising);
MultiPoly ggr_B(int l, const MultiPoly& n, const MultiPoly& nprime,
                Pochhammer conv = Pochhammer::kRising);

// R_GGR(lambda) = E11 + sum_{l>=0} lambda^{-l-1}
//   [[ l A_l(n,n'), B_l(n+1,n'+1) ], [ -n n' B_l(n,n'), -l A_l(n,n') ]]
// with n' = n + a, entries polynomial in (n, a).
struct GGRResolvent {
    int order = 0;  // matrices for l = 0..order
    std::vector<Mat2<MultiPoly>> coeff;
};

GGRResolvent ggr_resolvent(int order, Pochhammer conv = Pochhammer::kRising);

// T R_GGR T^{-1} == M(lambda) with w = n + a, T = diag(1, -1/(n(n+a))).
// All four entry families are compared after clearing the diagonal factor,
// so the check is a polynomial identity; on failure reports the first bad
// entry and order.
bool conjugation_check(int order, Pochhammer conv, std::string* msg);

// Connected LUE correlator <tr M^{mu_1} ... tr M^{mu_m}>_c as a polynomial
// in (n, a), computed along two independent routes (the dessin kernel route
// and the explicit-resolvent route) which must agree.
MultiPoly lue_correlator(const std::vector<int>& mu);

// Coefficients of the large-n expansion:
// n^{m-|mu|-2} <tr M^mu>_c = sum_{g,s} coeff(g,s) n^{-2g} c^s, c = 1 + a/n.
// The change of variables is performed exactly; a non-exact rewrite throws.
std::map<std::pair<int, int>, Rational> cdoc_coefficients(const Partition& mu);

}  // namespace dessin

#endif
