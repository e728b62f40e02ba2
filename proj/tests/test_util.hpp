#ifndef PPOLY_TEST_UTIL_HPP
#define PPOLY_TEST_UTIL_HPP

#include "ppoly/real.hpp"
#include "doctest.h"
#include <string>

namespace ppoly_test {

using ppoly::Real;

inline Real bit(long e) { return ldexp(Real(1), (int)e); }

inline bool near_abs(const Real& a, const Real& b, const Real& tol) {
    bool ok = fabs(a - b) <= tol;
    if (!ok)
        MESSAGE("abs diff " << ppoly::str_real(fabs(a - b), 8)
                << " exceeds " << ppoly::str_real(tol, 4));
    return ok;
}

// |a - b| <= tol * |b|, for nonzero reference b
inline bool near_rel(const Real& a, const Real& b, const Real& tol) {
    bool ok = fabs(a - b) <= tol * fabs(b);
    if (!ok)
        MESSAGE("rel diff " << ppoly::str_real(fabs(a - b) / fabs(b), 8)
                << " exceeds " << ppoly::str_real(tol, 4));
    return ok;
}

} // namespace ppoly_test

#endif
