#ifndef PPOLY_CERTIFY_HPP
#define PPOLY_CERTIFY_HPP

// Machine-checkable certificates behind the Eisenstein unit-circle results:
// Enestrom-Kakeya coefficient monotonicity, positivity/monotonicity of the
// digamma and zeta log-derivative differences, and growth of the zeta
// coefficient factors.

#include "ppoly/real.hpp"
#include "ppoly/periodpoly.hpp"
#include <string>
#include <vector>

namespace ppoly {

enum class CertKind { enestrom_kakeya, monotonicity_lemma, coefficient_factor };

// verdict rule: pass iff every value and every difference is >= -tolerance
struct Certificate {
    CertKind kind = CertKind::enestrom_kakeya;
    std::string subject;
    unsigned k = 0, m = 0;         // m carries the derivative or max order
    std::vector<Real> values;      // ordered evidence
    std::vector<Real> diffs;       // consecutive differences within each run
    bool pass = false;
    Real tolerance;
    std::string note;              // sampling scope and endpoint caveats
};

// bare coefficient list, nonnegative and nondecreasing within tol
Certificate ek_certificate(const std::vector<Real>& coeffs, const Real& tol);

// support-range coefficients of a q-part polynomial; tol <= 0 selects the
// default 2^(-prec/2) * (1 + max|coeff|); a passing verdict is cross-checked
// against unit_disk_check
Certificate ek_certificate(const PeriodPolynomial& q, const Real& tol);

// samples Psi_j and Z_j over [k/2, k-2] for j = 1..j_max; each sampled run
// contributes its values and its internal consecutive differences
Certificate monotonicity_certificate(unsigned k, unsigned j_max, const Real& grid_step,
                                     unsigned P);

// a_n = zeta(2n+2) zeta(k-2n-2) for n = k/4-1 .. k/2-2
Certificate coefficient_factor_certificate(unsigned k, unsigned P);

} // namespace ppoly

#endif
