#include "ppoly/lvalues.hpp"
#include "ppoly/specfun.hpp"

#include <stdexcept>

namespace ppoly {

namespace {

// cos(pi j / 2) for integer j
long cos_quarter(long j) {
    switch (((j % 4) + 4) % 4) {
        case 0: return 1;
        case 2: return -1;
        default: return 0;
    }
}

// i^k for even k
long ik_sign(unsigned k) { return (k % 4 == 0) ? 1 : -1; }

} // namespace

Complex lambda_deriv_mellin(const FourierCoefficients& f, unsigned m, const Real& s_in, unsigned P) {
    const unsigned k = f.spec.k;
    if (k < 4 || k % 2) throw std::domain_error("lambda_deriv_mellin: weight must be even, k >= 4");
    PrecisionGuard guard(P + 96);
    Real s = s_in + Real(0);
    Real kk((long)k);
    if (!(s > 0 && s < kk)) throw std::domain_error("lambda_deriv_mellin: s outside (0, k)");

    const unsigned long N = f.a.size() ? f.a.size() - 1 : 0;
    Real s2 = kk - s;
    Real sum1(0), sum2(0);
    Real stop = ldexp(Real(1), -(long)P - 48);
    bool converged = false;
    int quiet = 0;
    for (unsigned long n = 1; n <= N; ++n) {
        if (f.a[n] == 0) continue;
        Real i1 = exp_moment(n, s, m, P + 32);
        Real i2 = exp_moment(n, s2, m, P + 32);
        Real t1 = f.a[n] * i1;
        Real t2 = f.a[n] * i2;
        sum1 = sum1 + t1;
        sum2 = sum2 + t2;
        Real tm = fabs(t1);
        Real tm2 = fabs(t2);
        if (tm2 > tm) tm = tm2;
        Real scale = fabs(sum1);
        Real sb = fabs(sum2);
        if (sb > scale) scale = sb;
        // geometric decay holds once e^(-2 pi) beats the coefficient growth
        if (5 * n > k && tm < stop * (1 + scale)) {
            if (++quiet >= 2) { converged = true; break; }
        } else {
            quiet = 0;
        }
    }
    if (!converged)
        throw std::runtime_error("lambda_deriv_mellin: coefficient truncation too short");

    long sm = (m % 2) ? -1 : 1;
    Complex ik = i_pow((long)k);
    Complex result = Complex(sum1) + ik * Complex(sm * sum2);
    if (f.a[0] != 0) {
        Real mfac = real_of(factorial_int(m));
        Real p1 = mfac / powi(-s, m + 1);
        Real p2 = sm * mfac / powi(s - kk, m + 1);
        result += f.a[0] * (Complex(p1) + ik * Complex(p2));
    }
    return result;
}

Real lambda_eisenstein(unsigned k, const Real& s_in, unsigned P) {
    if (k < 4 || k % 2) throw std::domain_error("lambda_eisenstein: weight must be even, k >= 4");
    PrecisionGuard guard(P + 96);
    Real s = s_in + Real(0);
    Real kk((long)k);
    if (!(s > 1 && s < kk - 1))
        throw std::domain_error("lambda_eisenstein: s outside (1, k-1)");

    Real cosv;
    if (floor(s) == s) {
        long si = (long)s;
        long c = cos_quarter(si);
        if (c == 0) return Real(0);
        cosv = Real(c);
    } else {
        cosv = cos(pi_real() * s / 2);
    }
    Real num = 2 * ik_sign(k) * cosv * gamma_real(s) * gamma_real(kk - s)
             * zeta(s, P + 96) * zeta(kk - s, P + 96);
    return num / (zeta(kk, P + 96) * real_of(factorial_int(k - 1)));
}

Real lambda_tilde_deriv(unsigned k, unsigned m, unsigned s, unsigned P) {
    if (k < 4 || k % 2) throw std::domain_error("lambda_tilde_deriv: weight must be even, k >= 4");
    if (s < 2 || s > k - 2) throw std::domain_error("lambda_tilde_deriv: s outside [2, k-2]");
    PrecisionGuard guard(P + 96);
    Real sr((long)s);
    Real ks((long)(k - s));
    Real l0 = 2 * ik_sign(k) * gamma_real(sr) * gamma_real(ks)
            * zeta(sr, P + 96) * zeta(ks, P + 96)
            / (zeta(Real((long)k), P + 96) * real_of(factorial_int(k - 1)));
    if (m == 0) return l0;

    std::vector<Real> g(m + 1, Real(0));
    for (unsigned j = 1; j <= m; ++j)
        g[j] = psi_diff(j, sr, k, P + 64) + zeta_diff(j, sr, k, P + 64);

    std::vector<Real> lt{l0};
    for (unsigned mm = 1; mm <= m; ++mm) {
        Real acc(0);
        for (unsigned j = 0; j < mm; ++j)
            acc = acc + real_of(binomial_int(mm - 1, j)) * lt[j] * g[mm - j];
        lt.push_back(acc);
    }
    return lt[m];
}

Real lambda_deriv_eisenstein(unsigned k, unsigned m, unsigned s, unsigned P) {
    if (k < 4 || k % 2) throw std::domain_error("lambda_deriv_eisenstein: weight must be even, k >= 4");
    if (s < 1 || s > k - 1) throw std::domain_error("lambda_deriv_eisenstein: s outside [1, k-1]");
    if (s == 1 || s == k - 1) {
        // cos zero meets a zeta pole; the integral route sees no singularity
        auto f = eisenstein_series(k, default_truncation(k, P, 1.0), P);
        return lambda_deriv_mellin(f, m, Real((long)s), P).re;
    }
    PrecisionGuard guard(P + 96);
    Real api = pi_real() / 2;
    Real acc(0);
    Real pw(1);
    for (unsigned j = 0; j <= m; ++j) {
        long c = cos_quarter((long)s + (long)j);
        if (c != 0)
            acc = acc + real_of(binomial_int(m, j)) * pw * c
                      * lambda_tilde_deriv(k, m - j, s, P);
        pw = pw * api;
    }
    return acc;
}

LDerivativeTable critical_table(const FourierCoefficients& f, unsigned m, unsigned P) {
    const unsigned k = f.spec.k;
    if (k < 4 || k % 2) throw std::domain_error("critical_table: weight must be even, k >= 4");
    PrecisionGuard guard(P + 96);

    LDerivativeTable t;
    t.spec = f.spec;
    t.m = m;
    t.P = P;
    t.values.resize(k - 1);
    t.errors.resize(k - 1);
    t.routes.resize(k - 1);

    Real err_unit = ldexp(Real(1), -(long)P - 16);
    for (unsigned n = 0; n <= k - 2; ++n) {
        unsigned s = n + 1;
        if (f.spec.kind == FormKind::eisenstein && s != 1 && s != k - 1) {
            t.values[n] = Complex(lambda_deriv_eisenstein(k, m, s, P));
            t.routes[n] = LRoute::closed_form;
        } else {
            t.values[n] = lambda_deriv_mellin(f, m, Real((long)s), P);
            t.routes[n] = LRoute::mellin;
        }
        t.errors[n] = err_unit * (1 + abs_c(t.values[n]));
    }

    // Lambda^(m)(s) = i^k (-1)^m Lambda^(m)(k-s)
    Complex fe = i_pow((long)k) * Complex((m % 2) ? -1 : 1);
    Real worst(0);
    for (unsigned n = 0; n <= k - 2; ++n) {
        Real r = abs_c(t.values[n] - fe * t.values[k - 2 - n]);
        if (r > worst) worst = r;
    }
    t.fe_residual = worst;
    return t;
}

} // namespace ppoly
