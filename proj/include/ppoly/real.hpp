#ifndef PPOLY_REAL_HPP
#define PPOLY_REAL_HPP

// Arbitrary-precision scalar types. Precision is tracked in bits at the API
// surface; internally we drive boost::multiprecision's decimal-digit knob.
//
// Note on this Boost version (1.74): the default precision for new variables
// is a single process-global cell, not thread-local. Operation results inherit
// the largest operand precision, so chains seeded at the right precision stay
// there. Parallel code in this project always runs every worker at one uniform
// precision value, which makes concurrent guard stores idempotent; the root
// refiner additionally seeds its operands explicitly (see roots.cpp).

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>
#include <utility>

namespace ppoly {

namespace mp = boost::multiprecision;

using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;
using Int  = mp::mpz_int;
using Rat  = mp::mpq_rational;

inline unsigned digits_for_bits(unsigned bits) {
    return static_cast<unsigned>(bits * 0.30103) + 10;
}

class PrecisionGuard {
    unsigned prev_;
public:
    explicit PrecisionGuard(unsigned bits) : prev_(Real::default_precision()) {
        Real::default_precision(digits_for_bits(bits));
    }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;
    ~PrecisionGuard() { Real::default_precision(prev_); }
};

inline Real pi_real() {
    Real x(0);
    mpfr_const_pi(x.backend().data(), MPFR_RNDN);
    return x;
}

// 2^e at ambient precision
inline Real pow2(long e) { return ldexp(Real(1), (int)e); }

inline Real powi(Real base, unsigned long e) {
    Real r(1);
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

inline Real real_of(const Int& z) { return Real(z.backend().data()); }
inline Real real_of(const Rat& q) { return Real(q.backend().data()); }

inline Int factorial_int(unsigned n) {
    Int r = 1;
    for (unsigned i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Int binomial_int(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

inline Real digamma_real(const Real& x) {
    Real r(0);
    mpfr_digamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

inline Real gamma_real(const Real& x) {
    Real r(0);
    mpfr_gamma(r.backend().data(), x.backend().data(), MPFR_RNDN);
    return r;
}

struct Complex {
    Real re, im;

    Complex() : re(0), im(0) {}
    Complex(const Real& r) : re(r), im(0) {}
    Complex(Real&& r) : re(std::move(r)), im(0) {}
    Complex(const Real& r, const Real& i) : re(r), im(i) {}
    Complex(long r) : re(r), im(0) {}
    Complex(long r, long i) : re(r), im(i) {}

    Complex operator-() const { return Complex(-re, -im); }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return Complex(a.re + b.re, a.im + b.im);
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return Complex(a.re - b.re, a.im - b.im);
    }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend Complex operator*(const Complex& a, const Real& b) {
        return Complex(a.re * b, a.im * b);
    }
    friend Complex operator*(const Real& a, const Complex& b) { return b * a; }
    friend Complex operator/(const Complex& a, const Real& b) {
        return Complex(a.re / b, a.im / b);
    }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return Complex((a.re * b.re + a.im * b.im) / d,
                       (a.im * b.re - a.re * b.im) / d);
    }
    Complex& operator+=(const Complex& o) { re = re + o.re; im = im + o.im; return *this; }
    Complex& operator-=(const Complex& o) { re = re - o.re; im = im - o.im; return *this; }
    Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }
};

inline Real norm2(const Complex& z) { return z.re * z.re + z.im * z.im; }
inline Real abs_c(const Complex& z) { return sqrt(norm2(z)); }
inline Complex conj_c(const Complex& z) { return Complex(z.re, -z.im); }
inline Real arg_c(const Complex& z) { return atan2(z.im, z.re); }

// principal branch
inline Complex log_c(const Complex& z) {
    return Complex(log(norm2(z)) / 2, arg_c(z));
}

inline Complex exp_c(const Complex& z) {
    Real m = exp(z.re);
    return Complex(m * cos(z.im), m * sin(z.im));
}

inline Complex pow_c(Complex base, unsigned long e) {
    Complex r(1);
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

// i^e for any integer e
inline Complex i_pow(long e) {
    switch (((e % 4) + 4) % 4) {
        case 0: return Complex(1, 0);
        case 1: return Complex(0, 1);
        case 2: return Complex(-1, 0);
        default: return Complex(0, -1);
    }
}

inline std::string str_real(const Real& x, unsigned digits10) {
    return x.str(digits10, std::ios_base::scientific);
}

} // namespace ppoly

#endif
