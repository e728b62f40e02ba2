#include "ppoly/periodpoly.hpp"

#include <stdexcept>

namespace ppoly {

namespace {

// (u + v z)^t for t = 0..top, exact integer coefficients, ascending
std::vector<std::vector<Int>> linear_powers(long u, long v, unsigned top) {
    std::vector<std::vector<Int>> pw(top + 1);
    pw[0] = {Int(1)};
    for (unsigned t = 1; t <= top; ++t) {
        pw[t].assign(t + 1, Int(0));
        for (unsigned j = 0; j < t; ++j) {
            pw[t][j] += u * pw[t - 1][j];
            pw[t][j + 1] += v * pw[t - 1][j];
        }
    }
    return pw;
}

PeriodPolynomial shell(PolyKind kind, const LDerivativeTable& table) {
    PeriodPolynomial p;
    p.kind = kind;
    p.k = table.spec.k;
    p.m = table.m;
    p.prec = table.P;
    p.source = form_id(table.spec);
    return p;
}

// i^(1-n) for odd n is the real sign (-1)^((n-1)/2)
Real odd_sign(unsigned n) { return ((n - 1) / 2) % 2 ? Real(-1) : Real(1); }

} // namespace

PeriodPolynomial full_polynomial(const LDerivativeTable& table) {
    unsigned k = table.spec.k;
    if (k < 4 || table.values.size() != (size_t)k - 1)
        throw std::invalid_argument("full_polynomial: incomplete derivative table");
    PrecisionGuard guard(table.P + 32);
    PeriodPolynomial p = shell(PolyKind::full, table);
    p.c.assign(k - 1, Complex());
    for (unsigned n = 0; n <= k - 2; ++n)
        p.c[k - 2 - n] = i_pow(1 - (long)n)
                       * (real_of(binomial_int(k - 2, n)) * table.values[n]);
    return p;
}

PeriodPolynomial odd_part(const LDerivativeTable& table) {
    unsigned k = table.spec.k;
    if (k < 6 || table.values.size() != (size_t)k - 1)
        throw std::invalid_argument("odd_part: incomplete derivative table");
    PrecisionGuard guard(table.P + 32);
    PeriodPolynomial p = shell(PolyKind::odd, table);
    p.c.assign(k - 3, Complex());
    for (unsigned n = 1; n <= k - 3; n += 2)
        p.c[k - 3 - n] = odd_sign(n)
                       * (real_of(binomial_int(k - 2, n)) * table.values[n]);
    return p;
}

PeriodPolynomial tilde_odd_part(unsigned k, unsigned m, unsigned P) {
    if (k < 6 || k % 2)
        throw std::domain_error("tilde_odd_part: weight must be even and at least 6");
    PrecisionGuard guard(P + 32);
    PeriodPolynomial p;
    p.kind = PolyKind::tilde_odd;
    p.k = k;
    p.m = m;
    p.prec = P;
    p.source = form_id(FormSpec{k, FormKind::eisenstein, 0, P, 0});
    p.c.assign(k - 3, Complex());
    for (unsigned n = 1; n <= k - 3; n += 2)
        p.c[k - 3 - n] = Complex(odd_sign(n) * real_of(binomial_int(k - 2, n))
                                 * lambda_tilde_deriv(k, m, n + 1, P));
    return p;
}

std::vector<Complex> slash(const std::vector<Complex>& p, const GroupElement& g, unsigned k) {
    if (k < 2 || p.size() > (size_t)k - 1)
        throw std::invalid_argument("slash: polynomial degree exceeds k-2");
    unsigned D = k - 2;
    auto ab = linear_powers(g.b, g.a, D);
    auto cd = linear_powers(g.d, g.cc, D);
    std::vector<Complex> out(D + 1, Complex());
    for (unsigned t = 0; t < p.size(); ++t) {
        const auto& A = ab[t];
        const auto& B = cd[D - t];
        for (unsigned i = 0; i < A.size(); ++i) {
            if (A[i] == 0) continue;
            Real ai = real_of(A[i]);
            for (unsigned j = 0; j < B.size(); ++j) {
                if (B[j] == 0) continue;
                out[i + j] += p[t] * (ai * real_of(B[j]));
            }
        }
    }
    return out;
}

QDecomposition q_decompose(const PeriodPolynomial& poly) {
    if (poly.kind != PolyKind::odd && poly.kind != PolyKind::tilde_odd)
        throw std::invalid_argument("q_decompose: expects an odd or tilde-odd polynomial");
    unsigned k = poly.k;
    if (k % 4)
        throw std::domain_error("q_decompose: weight must be divisible by 4");
    if (poly.c.size() != (size_t)k - 3)
        throw std::invalid_argument("q_decompose: unexpected coefficient count");
    PrecisionGuard guard(poly.prec + 32);
    unsigned D = k / 2 - 2, mid = k / 4 - 1;
    int eps = poly.m % 2 ? -1 : 1;

    // reduction in the halved variable; the tilde kind is re-signed so the
    // surviving coefficients land in the increasing-sequence normal form
    std::vector<Complex> r(D + 1);
    for (unsigned n = 0; n <= D; ++n) {
        Complex v = poly.c[2 * n];
        if (poly.kind == PolyKind::tilde_odd && (poly.m + n) % 2) v = Real(-1) * v;
        r[n] = v;
    }

    QDecomposition out;
    out.eps = eps;
    out.q.kind = PolyKind::q_part;
    out.q.k = k;
    out.q.m = poly.m;
    out.q.prec = poly.prec;
    out.q.source = poly.source;
    out.q.c.assign(D + 1, Complex());
    for (unsigned n = mid; n <= D; ++n)
        out.q.c[n] = n == mid ? (Real(1) / 2) * r[n] : r[n];

    Real resid(0), scale(0);
    for (unsigned n = 0; n <= D; ++n) {
        if (abs_c(r[n]) > scale) scale = abs_c(r[n]);
        Complex rec = out.q.c[n] + Real(eps) * out.q.c[D - n];
        Real d = abs_c(r[n] - rec);
        if (d > resid) resid = d;
    }
    out.residual = resid;
    if (resid > pow2(-(long)poly.prec / 2) * (1 + scale))
        throw std::runtime_error("q_decompose: reconstruction residual too large");
    return out;
}

int functional_symmetry(const PeriodPolynomial& Q, const Real& tol) {
    if (Q.kind != PolyKind::full)
        throw std::invalid_argument("functional_symmetry: expects the full polynomial");
    PrecisionGuard guard(Q.prec + 32);
    auto s = slash(Q.c, mat_S(), Q.k);
    Real scale(0), dplus(0), dminus(0);
    for (const auto& c : Q.c)
        if (abs_c(c) > scale) scale = abs_c(c);
    for (size_t j = 0; j < s.size(); ++j) {
        Complex qj = j < Q.c.size() ? Q.c[j] : Complex();
        Real a = abs_c(s[j] - qj);
        Real b = abs_c(s[j] + qj);
        if (a > dplus) dplus = a;
        if (b > dminus) dminus = b;
    }
    Real lim = tol * (1 + scale);
    if (dplus <= lim && dplus <= dminus) return 1;
    if (dminus <= lim) return -1;
    throw std::runtime_error("functional_symmetry: no sign matches within tolerance");
}

} // namespace ppoly
