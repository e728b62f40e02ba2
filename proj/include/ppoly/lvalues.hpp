#ifndef PPOLY_LVALUES_HPP
#define PPOLY_LVALUES_HPP

// Derivatives of completed L-functions on the critical strip, by two
// independent routes: the exponential-moment (Mellin) integral for any
// form, and closed forms / exp-log recurrences for Eisenstein series.

#include "ppoly/real.hpp"
#include "ppoly/forms.hpp"
#include <vector>

namespace ppoly {

enum class LRoute { mellin, closed_form };

struct LDerivativeTable {
    FormSpec spec;
    unsigned m = 0;
    unsigned P = 0;
    std::vector<Complex> values;   // entry n holds the m-th derivative at n+1
    std::vector<Real> errors;      // per-entry forward error estimates
    std::vector<LRoute> routes;
    Real fe_residual;              // max functional-equation defect over pairs
};

// integral route, real s in (0,k) away from the poles at 0 and k
Complex lambda_deriv_mellin(const FourierCoefficients& f, unsigned m, const Real& s, unsigned P);

// closed form 2 i^k cos(pi s/2) Gamma(s) Gamma(k-s) zeta(s) zeta(k-s) / (zeta(k) Gamma(k)),
// real s in (1, k-1)
Real lambda_eisenstein(unsigned k, const Real& s, unsigned P);

// m-th derivative of the cosine-removed completed L-function at integer
// s in [2, k-2], via the exp-log recurrence
Real lambda_tilde_deriv(unsigned k, unsigned m, unsigned s, unsigned P);

// m-th derivative at integer s in [1, k-1]: Leibniz over the cosine factor;
// endpoints delegate to the integral route
Real lambda_deriv_eisenstein(unsigned k, unsigned m, unsigned s, unsigned P);

// full table at s = n+1, n = 0..k-2, route chosen per point
LDerivativeTable critical_table(const FourierCoefficients& f, unsigned m, unsigned P);

} // namespace ppoly

#endif
