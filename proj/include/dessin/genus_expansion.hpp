#ifndef DESSIN_GENUS_EXPANSION_HPP
#define DESSIN_GENUS_EXPANSION_HPP

#include <map>
#include <string>
#include <vector>

#include "dessin/barnes.hpp"
#include "dessin/loglinear.hpp"
#include "dessin/series.hpp"

namespace dessin {

// --- Exact functions on the two-dimensional Frobenius manifold -----------
//
// Elements (A + B s) / Theta^e with A, B polynomial in (v, X, u, a), where
// X stands for e^u, s for sqrt(Theta) and Theta = v^2 - 4X. Closed under
// d/dv and d/du (with dX/du = X, ds/dv = v s/Theta, ds/du = -2 X s/Theta).
class FrobFunc {
public:
    FrobFunc();
    FrobFunc(MultiPoly A, MultiPoly B, int e);

    static const VarNamesPtr& vars();
    static MultiPoly var_v();
    static MultiPoly var_X();
    static MultiPoly var_u();
    static MultiPoly var_a();
    static MultiPoly theta_poly();  // v^2 - 4X

    static FrobFunc poly(const MultiPoly& A) { return FrobFunc(A, MultiPoly(), 0); }
    static FrobFunc sqrt_theta() { return FrobFunc(MultiPoly(), MultiPoly::constant(Rational(1)), 0); }

    const MultiPoly& A() const { return A_; }
    const MultiPoly& B() const { return B_; }
    int denom_exp() const { return e_; }
    bool is_zero() const { return A_.is_zero() && B_.is_zero(); }
    bool uses_sqrt() const { return !B_.is_zero(); }

    friend FrobFunc operator+(const FrobFunc& a, const FrobFunc& b);
    friend FrobFunc operator-(const FrobFunc& a, const FrobFunc& b);
    friend FrobFunc operator*(const FrobFunc& a, const FrobFunc& b);
    FrobFunc operator-() const;
    FrobFunc scaled(const Rational& c) const;

    friend bool operator==(const FrobFunc& a, const FrobFunc& b);

    FrobFunc derive_v() const;
    FrobFunc derive_u() const;  // total, including the e^u chain

    // Euler field E = v d/dv + 2 d/du.
    FrobFunc euler() const { return derive_v().mul_poly(var_v()) + derive_u().scaled(Rational(2)); }

    FrobFunc mul_poly(const MultiPoly& p) const;

    std::string str() const;

private:
    void normalize();
    MultiPoly A_, B_;
    int e_;
};

// theta_{2,p} = sum_{2m+j=p+1} X^m v^j / (m!^2 j!), a polynomial.
MultiPoly theta2(int p);
// theta_{1,p} via psi(m+1) = -gamma + H_m; the gamma-dependence cancels and
// the result is a polynomial in (v, X, u).
MultiPoly theta1(int p);

// Genus-zero two-point functions Omega^{[0]}_{2,p;2,q} (exact division by
// z1 + z2; throws if the division is not exact).
MultiPoly omega0(int p, int q);

// Gradients of phi, omega and the hamiltonian h; g_p itself.
FrobFunc phi_v();
FrobFunc phi_u();
FrobFunc omega_v();
FrobFunc omega_u();
FrobFunc h_u();
FrobFunc h_vv();
FrobFunc h_uv();
FrobFunc h_uu();
FrobFunc g_p(int p);

// Symbolic identity checks on the Frobenius manifold.
bool frobenius_identity_checks(int pmax, std::string* msg);

// --- Hodograph solution ---------------------------------------------------

using XASeries = TruncatedSeries<RationalFunction>;

struct HodographSolution {
    int Q = 0;            // flows T^{2,0..Q}
    int D = 0;            // T-degree cutoff
    XASeries v;           // full series, constant term 2x+a
    XASeries du;          // u = log x + log(x+a) + du
    XASeries X;           // e^u = x(x+a) e^{du}
    XASeries sqrt_theta;  // constant term a
};

HodographSolution hodograph_solve(int Q, int D);

// d/dx on a (x,a)-coefficient series.
XASeries series_dx(const XASeries& s);
XASeries series_da(const XASeries& s);

// Riemann-invariant slopes at T = 0: (R_1)_x (R_2)_x = -a^2/(x(x+a)),
// evaluated at rational sample points.
bool riemann_invariant_check(std::string* msg);

// --- Genus 0 and genus 1 --------------------------------------------------

struct GenusSeries {
    LogLinearScalar log_const;  // the log-bearing part of the T-constant term
    XASeries series;            // all rational content, including degree 0
};

GenusSeries f0_assemble(const HodographSolution& sol);
GenusSeries f1_evaluate(const HodographSolution& sol);

// Identity checks on the assembled genus-zero free energy.
bool f0_second_derivative_checks(const HodographSolution& sol, const GenusSeries& F0,
                                 std::string* msg);
bool f0_euler_check(const HodographSolution& sol, const GenusSeries& F0, std::string* msg);
bool f0_dilaton_check(const HodographSolution& sol, const GenusSeries& F0, std::string* msg);

// Genus reconstruction: the T-coefficient of the genus-g series equals the
// genus-g part of the matching dessin correlator under T^{2,q} = q! p_{q+1}.
bool genus_reconstruction_check(const GenusSeries& F, int genus, int max_weight,
                                std::string* msg);

// --- Genus-1 loop equation ------------------------------------------------

// Verifies that the genus-1 jet function satisfies the order-eps^0 loop
// identity in the sigma-extended jet ring; with `perturb` the -u/24 term is
// replaced by -u/12, which must break the identity.
bool loop_equation_check_genus1(bool perturb, std::string* msg);

// --- Initial-data catalog ---------------------------------------------------

struct CatalogRow {
    std::string name;
    std::string V;      // rendered lattice initial data
    std::string W;
    std::string v0;     // rendered genus-zero data
    std::string w0;
    std::string curve;
    bool curve_holds = false;
};

std::vector<CatalogRow> catalog_check();
bool catalog_all_hold(std::string* msg);

}  // namespace dessin

#endif
