#ifndef PPOLY_SPECFUN_HPP
#define PPOLY_SPECFUN_HPP

// Special functions: exact Bernoulli/harmonic rationals, Euler-Maclaurin
// zeta/Hurwitz evaluation (scalar and jet), log-derivatives of zeta, the
// psi/zeta difference combinations Psi_j and Z_j, tangent-derivative
// constants b_j, and the exponential log-moment integrals feeding the
// Mellin-transform layer.

#include "ppoly/real.hpp"
#include "ppoly/jet.hpp"
#include <vector>
#include <memory>

namespace ppoly {

Rat bernoulli(unsigned n);
Rat harmonic(unsigned n);

// zeta(s), s > 1, absolute error below 2^(-P+8)
Real zeta(const Real& s, unsigned P);

// Hurwitz zeta(s, a), s > 1, a > 0
Real hurwitz_zeta(const Real& s, const Real& a, unsigned P);

// Taylor jet of zeta around s (c[j] = zeta^(j)(s)/j!), s > 1
Jet<Real> zeta_jet(const Real& s, unsigned order, unsigned P);

// d^j/ds^j (zeta'/zeta)(s), s > 1
Real zeta_logderiv_deriv(unsigned j, const Real& s, unsigned P);

// Psi_j(s): j=1 gives psi(s) - psi(k-s); j>=2 gives
// (j-1)!((-1)^j zeta_H(j,s) + zeta_H(j,k-s)). Domain 0 < s < k.
Real psi_diff(unsigned j, const Real& s, unsigned k, unsigned P);

// Z_j(s) = d^(j-1)/ds^(j-1) (zeta'/zeta(s) - zeta'/zeta(k-s)), 1 < s < k-1
Real zeta_diff(unsigned j, const Real& s, unsigned k, unsigned P);

// b_j: (j-1)-st derivative of -(pi/2)tan(pi s/2) at even integers,
// evaluated at ambient precision. 0 for odd j.
Real tan_deriv_constant(unsigned j);

// integral_1^inf e^(-2 pi n v) v^(s-1) log^m(v) dv, absolute error
// below 2^(-P+8); memoized per (n, s, m, precision)
Real exp_moment(unsigned long n, const Real& s, unsigned m, unsigned P);

// Gauss-Legendre rule on [-1,1]; nodes/weights accurate to ~2^(-bits).
// Cached per (points, bits); returned object is immutable.
struct GaussLegendre {
    std::vector<Real> x, w;
};
std::shared_ptr<const GaussLegendre> gauss_legendre(unsigned points, unsigned bits);

namespace detail {

inline Real mag(const Real& x) { return fabs(x); }
inline Real mag(const Jet<Real>& j) {
    Real m(0);
    for (const auto& c : j.c) { Real a = fabs(c); if (a > m) m = a; }
    return m;
}

inline Real make_like(const Real&, long v) { return Real(v); }
inline Jet<Real> make_like(const Jet<Real>& j, long v) {
    return Jet<Real>::constant(j.order(), Real(v));
}

inline Real div_t(const Real& a, const Real& b) { return a / b; }
inline Jet<Real> div_t(const Jet<Real>& a, const Jet<Real>& b) { return jet_div(a, b); }

inline Real pow_base(const Real& b, const Real& e) { return pow(b, e); }
inline Jet<Real> pow_base(const Real& b, const Jet<Real>& e) {
    Real lb = log(b);
    Jet<Real> t = e;
    t.c[0] = Real(0);
    for (auto& c : t.c) c = c * lb;
    Jet<Real> r = jet_exp(t);
    Real scale = pow(b, e.c[0]);
    for (auto& c : r.c) c = c * scale;
    return r;
}

// Euler-Maclaurin Hurwitz zeta core. Needs c0(s) > 1, a > 0; the caller
// sets the working precision. Cutoff starts at max(50, P) and doubles if
// the correction series stalls before reaching the target.
template <class T>
T hurwitz_em(const T& s, const Real& a, unsigned P) {
    Real target = ldexp(Real(1), -(long)P - 16);
    long N = std::max<long>(50, P);
    for (int attempt = 0; attempt < 6; ++attempt, N *= 2) {
        T acc = make_like(s, 0);
        for (long r = 0; r < N; ++r)
            acc = acc + pow_base(a + r, -s);
        Real aN = a + N;
        T one = make_like(s, 1);
        T p1s = pow_base(aN, one - s);                  // (a+N)^(1-s)
        acc = acc + div_t(p1s, s - one);
        acc = acc + pow_base(aN, -s) * Real(0.5);
        Real aN2 = aN * aN;
        T tail_pow = p1s;                                // -> (a+N)^(1-s-2i)
        T poch = s;                                      // (s)_(2i-1)
        bool done = false;
        Real prev(0);
        for (unsigned i = 1; i <= 10000; ++i) {
            tail_pow = tail_pow * (Real(1) / aN2);
            Real coef = real_of(bernoulli(2 * i)) / real_of(factorial_int(2 * i));
            T term = (tail_pow * poch) * coef;
            acc = acc + term;
            Real tm = mag(term);
            if (tm < target * (Real(1) + mag(acc))) { done = true; break; }
            if (i > 3 && tm > prev) break;               // asymptotic series diverging
            prev = tm;
            poch = poch * (s + make_like(s, 2 * (long)i - 1)) * (s + make_like(s, 2 * (long)i));
        }
        if (done) return acc;
    }
    throw std::runtime_error("hurwitz_em: no convergence");
}

} // namespace detail
} // namespace ppoly

#endif
