#ifndef DESSIN_HURWITZ_HPP
#define DESSIN_HURWITZ_HPP

#include <string>
#include <vector>

#include "dessin/partitions.hpp"
#include "dessin/rational.hpp"

namespace dessin {

// Strictly monotone double Hurwitz number h_g(mu, nu): tuples
// (alpha, tau_1..tau_r, beta) with alpha of type mu, beta = alpha tau_1...tau_r
// of type nu, tau_j = (a_j, b_j), a_j < b_j, b_1 < ... < b_r, and
// <alpha, tau_1, ..., tau_r> transitive. r = l(mu) + l(nu) + 2g - 2.
// Brute-force enumeration; d is capped (default 8).
long long strictly_monotone_hurwitz(int g, const Partition& mu, const Partition& nu,
                                    int degree_cap = 8);

struct DessinHurwitzComparison {
    Rational lhs;  // N_{k,l}(mu)
    Rational rhs;  // prod n_i! / |mu|! * sum over nu of h_g(mu, nu)
    bool equal = false;
    int k = 0;
};

// The dessin-count / Hurwitz-number correspondence at (mu, g, l):
// N_{k,l}(mu) with k = |mu| - l(mu) - l - 2g + 2 against the normalized
// Hurwitz sum over nu with l(nu) = l.
DessinHurwitzComparison verify_dessin_hurwitz(const Partition& mu, int g, int l);

}  // namespace dessin

#endif
