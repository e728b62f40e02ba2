#ifndef PPOLY_COCYCLE_HPP
#define PPOLY_COCYCLE_HPP

// Cohomological cross-checks: the eta-logarithm cocycle, its cup powers,
// cochains of a form given by path integrals toward the cusp, the
// bar-resolution differential, and the residual of the polynomial value
// formulas for derivatives of completed L-functions.

#include "ppoly/real.hpp"
#include "ppoly/forms.hpp"
#include "ppoly/periodpoly.hpp"
#include <functional>
#include <vector>

namespace ppoly {

// lowest admissible imaginary part for series evaluation and path endpoints
inline constexpr double kCocycleYMin = 0.05;

Complex apply_moebius(const GroupElement& g, const Complex& tau);

// u(tau) = pi i tau/12 + sum_{n>=1} Log(1 - q^n), principal branch per
// factor, certified truncation; holomorphic on the half-plane
Complex eta_log(const Complex& tau, unsigned P);

// constant c_g in 2u(g tau) = 2u(tau) + Log j(g,tau) + c_g, measured at
// three independent points with the principal Log of the automorphy factor
struct CGamma {
    GroupElement g;
    Complex c;
    Real residual;                 // max disagreement across the points
};
CGamma cocycle_constant(const GroupElement& g, unsigned P);

// V_n(g_1,...,g_n)(tau) = v(g_1)(tau) V_{n-1}(g_2,...,g_n)(g_1 tau), where
// v(g)(tau) = 2u(g tau) - 2u(tau) is assembled exactly from a generator-word
// decomposition of g (no series evaluation, no branch tracking)
Complex cup_power(unsigned n, const std::vector<GroupElement>& gs,
                  const Complex& tau, unsigned P);

// path description for the cochain integrals; the cusp leg runs vertically
// from the endpoint (or from the waypoint, with a straight closing segment)
struct PathIntegralSpec {
    Complex z;                     // endpoint, Im z >= kCocycleYMin
    unsigned P = 0;                // precision in bits
    unsigned nodes = 0;            // Gauss-Legendre nodes per panel, 0 = auto
    bool has_via = false;
    Complex via;                   // optional waypoint splitting the cusp path
};

// n-cochain of f: integral of (f - a_0)(w - z)^(k-2) V_n(...)(w) from the
// cusp to z, plus a_0 z^(k-1)/(k-1) for n = 0 or the a_0 integral from i to
// z for n >= 1
Complex v_f_cochain(const FourierCoefficients& f, const std::vector<GroupElement>& gs,
                    const Complex& z, unsigned P);
Complex v_f_cochain(const FourierCoefficients& f, const std::vector<GroupElement>& gs,
                    const PathIntegralSpec& spec);

using CochainEval = std::function<Complex(const std::vector<GroupElement>&, const Complex&)>;

// bar-resolution differential of an n-cochain, slash acting on the z
// variable at weight 2-k; gs must hold n+1 elements
Complex bar_differential(const CochainEval& sigma, unsigned n, unsigned k,
                         const std::vector<GroupElement>& gs, const Complex& z, unsigned P);

// max |prefactor * sigma_f(S,...,S) - polynomial side| over the samples,
// sigma_f built from the degree-m cochain by the bar differential and the
// polynomial side from the critical table plus the a_0 correction; m <= 2
Real verify_value_formula(const FourierCoefficients& f, unsigned m,
                          const std::vector<Complex>& zs, unsigned P);

} // namespace ppoly

#endif
