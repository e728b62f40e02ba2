#ifndef PPOLY_PERIODPOLY_HPP
#define PPOLY_PERIODPOLY_HPP

// Period polynomials built from tables of completed-L derivative values:
// the full polynomial, the odd part (trivial z factored out), the tilde
// variant, the weight-(2-k) slash action, and the self-inversive q-part
// decomposition.

#include "ppoly/real.hpp"
#include "ppoly/lvalues.hpp"
#include <vector>
#include <string>

namespace ppoly {

enum class PolyKind { full, odd, tilde_odd, q_part };

struct PeriodPolynomial {
    PolyKind kind = PolyKind::full;
    unsigned k = 0;
    unsigned m = 0;
    unsigned prec = 0;             // construction precision (bits)
    std::string source;            // form id of the underlying table
    std::vector<Complex> c;        // ascending degree
};

struct GroupElement {
    long a = 1, b = 0, cc = 0, d = 1;   // determinant 1
};

inline GroupElement mat_S() { return GroupElement{0, -1, 1, 0}; }
inline GroupElement mat_T() { return GroupElement{1, 1, 0, 1}; }
inline GroupElement mat_mul(const GroupElement& x, const GroupElement& y) {
    return GroupElement{x.a * y.a + x.b * y.cc, x.a * y.b + x.b * y.d,
                        x.cc * y.a + x.d * y.cc, x.cc * y.b + x.d * y.d};
}

// Q(z) = sum_{n=0}^{k-2} C(k-2,n) i^(1-n) L^(m)(n+1) z^(k-2-n)
PeriodPolynomial full_polynomial(const LDerivativeTable& table);

// odd-n terms with the trivial z factored out:
// sum_{n odd, 1<=n<=k-3} C(k-2,n) i^(1-n) L^(m)(n+1) z^(k-3-n)
PeriodPolynomial odd_part(const LDerivativeTable& table);

// same combinatorics over the cosine-removed derivative values
PeriodPolynomial tilde_odd_part(unsigned k, unsigned m, unsigned P);

// (p|_{2-k} g)(z) = p(gz) (cz+d)^(k-2), exact expansion, degree <= k-2
std::vector<Complex> slash(const std::vector<Complex>& p, const GroupElement& g, unsigned k);

// self-inversive decomposition of an odd/tilde-odd polynomial (k = 0 mod 4):
// in the reduced even variable, q has support n in [k/4-1, k/2-2] with the
// midpoint halved when present, and q(w) + eps w^(k/2-2) q(1/w) reconstructs
// the reduction, eps = (-1)^m
struct QDecomposition {
    PeriodPolynomial q;
    int eps = 1;
    Real residual;                 // reconstruction residual
};
QDecomposition q_decompose(const PeriodPolynomial& poly);

// measured sign s with slash(Q,S,k) = s Q within tol; throws if neither fits
int functional_symmetry(const PeriodPolynomial& Q, const Real& tol);

} // namespace ppoly

#endif
