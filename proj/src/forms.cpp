#include "ppoly/forms.hpp"
#include "ppoly/roots.hpp"
#include "ppoly/specfun.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace ppoly {

std::string form_id(const FormSpec& spec) {
    std::ostringstream os;
    if (spec.kind == FormKind::eisenstein) os << "eis-k" << spec.k;
    else os << "cusp-k" << spec.k << "-i" << spec.index;
    return os.str();
}

unsigned cusp_dim(unsigned k) {
    if (k < 12 || k % 2 == 1) return 0;
    return k % 12 == 2 ? k / 12 - 1 : k / 12;
}

unsigned long default_truncation(unsigned k, unsigned P, double y_min) {
    double n = P * 0.6931471805599453 / (2 * 3.141592653589793 * y_min)
             + k * std::log((double)std::max(P, 3u));
    unsigned long N = (unsigned long)n + 1;
    return N < 64 ? 64 : N;
}

Int sigma_power(unsigned long n, unsigned r) {
    if (n == 0) throw std::domain_error("sigma_power: n must be positive");
    Int s = 0;
    for (unsigned long d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        Int dp = 1, qp = 1;
        for (unsigned i = 0; i < r; ++i) { dp *= d; qp *= n / d; }
        s += dp;
        if (d * d != n) s += qp;
    }
    return s;
}

FourierCoefficients eisenstein_series(unsigned k, unsigned long N, unsigned P) {
    if (k < 4 || k % 2) throw std::domain_error("eisenstein_series: k must be even, k >= 4");
    PrecisionGuard guard(P + 96);
    Real pi = pi_real();
    Real C = powi(2 * pi, k) / (zeta(Real((long)k), P + 96) * real_of(factorial_int(k - 1)));
    FourierCoefficients f;
    f.spec = {k, FormKind::eisenstein, 0, P, N};
    f.a.resize(N + 1);
    f.a[0] = Real(1);
    for (unsigned long n = 1; n <= N; ++n)
        f.a[n] = C * real_of(sigma_power(n, k - 1));
    return f;
}

namespace {

// truncated integer q-series arithmetic, index = q-exponent
IntSeries mul_trunc(const IntSeries& a, const IntSeries& b, std::size_t N) {
    IntSeries c(N + 1, Int(0));
    for (std::size_t i = 0; i <= N && i < a.size(); ++i) {
        if (a[i] == 0) continue;
        std::size_t jmax = std::min(b.size() - 1, N - i);
        for (std::size_t j = 0; j <= jmax; ++j)
            if (b[j] != 0) c[i + j] += a[i] * b[j];
    }
    return c;
}

IntSeries pow_trunc(IntSeries base, unsigned e, std::size_t N) {
    IntSeries r(N + 1, Int(0));
    r[0] = 1;
    while (e) {
        if (e & 1) r = mul_trunc(r, base, N);
        e >>= 1;
        if (e) base = mul_trunc(base, base, N);
    }
    return r;
}

IntSeries eis_int(unsigned k, Int constant, std::size_t N) {
    IntSeries e(N + 1, Int(0));
    e[0] = 1;
    for (std::size_t n = 1; n <= N; ++n)
        e[n] = constant * sigma_power(n, k - 1);
    return e;
}

IntSeries delta_series(std::size_t N) {
    IntSeries e4 = eis_int(4, Int(240), N);
    IntSeries e6 = eis_int(6, Int(-504), N);
    IntSeries d = mul_trunc(mul_trunc(e4, e4, N), e4, N);
    IntSeries e62 = mul_trunc(e6, e6, N);
    for (std::size_t i = 0; i <= N; ++i) {
        Int num = d[i] - e62[i];
        d[i] = num / 1728;
    }
    return d;
}

} // namespace

std::vector<IntSeries> miller_basis(unsigned k, unsigned long N) {
    unsigned d = cusp_dim(k);
    if (d == 0) return {};
    std::vector<IntSeries> rows(d);
    IntSeries delta = delta_series(N);
    IntSeries e4 = eis_int(4, Int(240), N);
    IntSeries e6 = eis_int(6, Int(-504), N);
    for (unsigned j = 1; j <= d; ++j) {
        unsigned r = k - 12 * j;
        unsigned beta = (r % 4 == 2) ? 1 : 0;
        unsigned alpha = (r - 6 * beta) / 4;
        IntSeries g = pow_trunc(delta, j, N);
        if (alpha) g = mul_trunc(g, pow_trunc(e4, alpha, N), N);
        if (beta) g = mul_trunc(g, e6, N);
        rows[j - 1] = std::move(g);
    }
    // echelon: row j has leading coefficient 1 at q^j and zeros at q^i for i < j, i >= 1
    for (unsigned j = d; j >= 1; --j)
        for (unsigned i = j + 1; i <= d; ++i) {
            Int fac = rows[j - 1][i];
            if (fac == 0) continue;
            for (std::size_t t = 0; t <= N; ++t)
                rows[j - 1][t] -= fac * rows[i - 1][t];
        }
    return rows;
}

RatMatrix hecke_matrix(unsigned k, unsigned long p, const std::vector<IntSeries>& basis) {
    unsigned d = (unsigned)basis.size();
    if (d == 0) return {};
    unsigned long need = p * (d + 1);
    for (const auto& f : basis)
        if (f.size() <= need)
            throw std::invalid_argument("hecke_matrix: basis truncation too short");
    Int pk1 = 1;
    for (unsigned i = 0; i + 1 < k; ++i) pk1 *= (long)p;
    RatMatrix M(d, std::vector<Rat>(d, Rat(0)));
    for (unsigned j = 1; j <= d; ++j)
        for (unsigned i = 1; i <= d; ++i) {
            Int v = basis[j - 1][i * p];
            if (i % p == 0) v += pk1 * basis[j - 1][i / p];
            M[i - 1][j - 1] = Rat(v);
        }
    return M;
}

namespace {

std::vector<Rat> char_poly(const RatMatrix& A) {
    const std::size_t d = A.size();
    // Faddeev-LeVerrier; returns ascending coefficients of x^d + c_1 x^{d-1} + ... + c_d
    std::vector<Rat> c(d + 1, Rat(0));
    c[d] = 1;
    RatMatrix M(d, std::vector<Rat>(d, Rat(0)));
    for (std::size_t i = 0; i < d; ++i) M[i][i] = 1;
    for (std::size_t m = 1; m <= d; ++m) {
        RatMatrix AM(d, std::vector<Rat>(d, Rat(0)));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                Rat s(0);
                for (std::size_t t = 0; t < d; ++t) s += A[i][t] * M[t][j];
                AM[i][j] = s;
            }
        Rat tr(0);
        for (std::size_t i = 0; i < d; ++i) tr += AM[i][i];
        Rat cm = -tr / (long)m;
        c[d - m] = cm;
        M = AM;
        for (std::size_t i = 0; i < d; ++i) M[i][i] += cm;
    }
    return c;
}

// one vector in the kernel of A, scaled so its first nonzero entry is 1
std::vector<Real> kernel_vector(std::vector<std::vector<Real>> A, unsigned P) {
    const std::size_t d = A.size();
    Real scale(0);
    for (const auto& row : A)
        for (const auto& x : row) { Real m = fabs(x); if (m > scale) scale = m; }
    Real tiny = ldexp(scale + 1, -(int)(P / 2));
    std::vector<long> pivot_of_col(d, -1);
    std::size_t row = 0;
    for (std::size_t col = 0; col < d && row < d; ++col) {
        std::size_t best = row;
        for (std::size_t r = row + 1; r < d; ++r)
            if (fabs(A[r][col]) > fabs(A[best][col])) best = r;
        if (fabs(A[best][col]) < tiny) continue;
        std::swap(A[best], A[row]);
        Real inv = Real(1) / A[row][col];
        for (std::size_t t = col; t < d; ++t) A[row][t] = A[row][t] * inv;
        for (std::size_t r = 0; r < d; ++r) {
            if (r == row) continue;
            Real fac = A[r][col];
            if (fac == 0) continue;
            for (std::size_t t = col; t < d; ++t)
                A[r][t] = A[r][t] - fac * A[row][t];
        }
        pivot_of_col[col] = (long)row;
        ++row;
    }
    long free_col = -1;
    for (std::size_t col = 0; col < d; ++col)
        if (pivot_of_col[col] < 0) { free_col = (long)col; break; }
    if (free_col < 0) throw std::runtime_error("eigenforms: eigenspace not found");
    std::vector<Real> v(d, Real(0));
    v[free_col] = 1;
    for (std::size_t col = 0; col < d; ++col)
        if (pivot_of_col[col] >= 0)
            v[col] = -A[pivot_of_col[col]][free_col];
    // normalize on the first nonzero entry
    for (std::size_t i = 0; i < d; ++i)
        if (fabs(v[i]) > tiny) {
            Real inv = Real(1) / v[i];
            for (auto& x : v) x = x * inv;
            break;
        }
    return v;
}

} // namespace

std::vector<FourierCoefficients> eigenforms(unsigned k, unsigned P, unsigned long N) {
    unsigned d = cusp_dim(k);
    if (d == 0) return {};
    if (N == 0) N = default_truncation(k, P, 1.0);
    unsigned long basis_N = std::max<unsigned long>(N, 2 * (d + 1) + 2);
    auto basis = miller_basis(k, basis_N);
    auto M = hecke_matrix(k, 2, basis);

    PrecisionGuard guard(P + 96);
    std::vector<Real> eigs;
    if (d == 1) {
        eigs.push_back(real_of(M[0][0]));
    } else {
        auto cp = char_poly(M);
        std::vector<Complex> pc(cp.size());
        for (std::size_t i = 0; i < cp.size(); ++i) pc[i] = Complex(real_of(cp[i]));
        auto roots = find_roots(pc, P + 96);
        for (const auto& r : roots) {
            if (fabs(r.z.im) > ldexp(Real(1), -(int)(P / 2)))
                throw std::runtime_error("eigenforms: non-real Hecke eigenvalue");
            eigs.push_back(r.z.re + Real(0));
        }
    }
    std::sort(eigs.begin(), eigs.end(), [](const Real& a, const Real& b) { return a > b; });

    std::vector<FourierCoefficients> out;
    for (unsigned idx = 0; idx < d; ++idx) {
        const Real& lam = eigs[idx];
        std::vector<Real> v;
        if (d == 1) {
            v = {Real(1)};
        } else {
            std::vector<std::vector<Real>> A(d, std::vector<Real>(d));
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) {
                    A[i][j] = real_of(M[i][j]);
                    if (i == j) A[i][j] -= lam;
                }
            v = kernel_vector(A, P);
        }
        FourierCoefficients f;
        f.spec = {k, FormKind::cusp_eigenform, idx, P, N};
        f.a.assign(N + 1, Real(0));
        for (unsigned long n = 1; n <= N && n < basis[0].size(); ++n) {
            Real s(0);
            for (unsigned j = 0; j < d; ++j)
                if (v[j] != 0) s = s + v[j] * real_of(basis[j][n]);
            f.a[n] = s;
        }
        // a_1 = 1 comes from the echelon basis; verify the eigen relation
        Real pk1 = powi(Real(2), k - 1);
        Real amax(0);
        for (const auto& x : f.a) { Real m = fabs(x); if (m > amax) amax = m; }
        Real worst(0);
        for (unsigned long n = 1; 2 * n <= N; ++n) {
            Real t2 = f.a[2 * n] + (n % 2 == 0 ? pk1 * f.a[n / 2] : Real(0));
            Real r = fabs(t2 - lam * f.a[n]);
            if (r > worst) worst = r;
        }
        if (worst / ((1 + fabs(lam)) * amax) > ldexp(Real(1), -(int)(P / 2)))
            throw std::runtime_error("eigenforms: eigenvalue relation residual too large");
        out.push_back(std::move(f));
    }
    return out;
}

Complex evaluate_form(const FourierCoefficients& f, const Complex& tau, unsigned P) {
    if (!(tau.im > 0)) throw std::domain_error("evaluate_form: tau must be in the upper half plane");
    PrecisionGuard guard(P + 96);
    const unsigned long N = f.a.size() - 1;
    const unsigned k = f.spec.k;

    Real B(0);
    for (unsigned long n = 1; n <= N; ++n) {
        Real m = fabs(f.a[n]) / powi(Real((long)n), k);
        if (m > B) B = m;
    }
    Real pi = pi_real();
    Real w = 2 * pi * tau.im;
    Real rho = powi(1 + Real(1) / Real((long)N + 1), k) * exp(-w);
    bool ok = rho < 1;
    if (ok) {
        Real first = B * powi(Real((long)N + 1), k) * exp(-w * Real((long)N + 1));
        ok = first / (1 - rho) < ldexp(Real(1), -(long)P);
    }
    if (!ok) throw std::runtime_error("evaluate_form: truncation too short for this tau");

    Complex q = exp_c(Complex(-w, 2 * pi * tau.re));
    Complex acc(f.a[N]);
    for (unsigned long n = N; n-- > 0; )
        acc = acc * q + Complex(f.a[n]);
    return acc;
}

} // namespace ppoly
