#include "ppoly/cocycle.hpp"
#include "ppoly/lvalues.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace ppoly {

namespace {

constexpr unsigned kTailBits = 40;

bool acts_trivially(const GroupElement& g) {
    return g.b == 0 && g.cc == 0 && g.a == g.d && (g.a == 1 || g.a == -1);
}

void check_unimodular(const GroupElement& g, const char* who) {
    if (g.a * g.d - g.b * g.cc != 1)
        throw std::invalid_argument(std::string(who) + ": matrix must have determinant 1");
}

Complex j_factor(const GroupElement& g, const Complex& z) {
    return Complex(Real(g.cc)) * z + Complex(Real(g.d));
}

// v(g)(tau) = 2u(g tau) - 2u(tau), evaluated exactly by peeling g into a
// generator word g = T^(q_1) S T^(q_2) S ... (+-T^(shift)) and summing the
// closed forms v(S) = Log tau - i pi/2, v(T^q) = q i pi/6 right to left
// along the orbit of tau. Every intermediate point stays in the half-plane,
// so the principal Log never crosses its cut.
Complex v_exact(GroupElement g, Complex tau) {
    Real pi = pi_real();
    std::vector<long> tpows;
    while (g.cc != 0) {
        long q = g.a / g.cc;
        long best = q;
        long br = std::abs(g.a - q * g.cc);
        for (long cand : {q - 1, q + 1}) {
            long rr = std::abs(g.a - cand * g.cc);
            if (rr < br) { br = rr; best = cand; }
        }
        tpows.push_back(best);
        long na = g.cc, nb = g.d;
        long ncc = -(g.a - best * g.cc), nd = -(g.b - best * g.d);
        g = GroupElement{na, nb, ncc, nd};
    }
    long tail_shift = g.a * g.b;       // g = +-T^(a b), a = d = +-1

    Complex acc(0);
    if (tail_shift != 0) {
        acc += Complex(Real(0), Real(tail_shift) * pi / 6);
        tau = tau + Complex(Real(tail_shift));
    }
    for (std::size_t idx = tpows.size(); idx-- > 0; ) {
        acc += log_c(tau) - Complex(Real(0), pi / 2);
        tau = Complex(Real(-1)) / tau;
        if (tpows[idx] != 0) {
            acc += Complex(Real(0), Real(tpows[idx]) * pi / 6);
            tau = tau + Complex(Real(tpows[idx]));
        }
    }
    return acc;
}

Complex cup_chain(const std::vector<GroupElement>& gs, Complex tau) {
    Complex prod(1);
    for (const auto& g : gs) {
        if (acts_trivially(g)) return Complex(0);
        prod *= v_exact(g, tau);
        tau = apply_moebius(g, tau);
    }
    return prod;
}

struct GLRule {
    std::vector<Real> x, w;
};

void legendre_pd(unsigned n, const Real& x, Real& p, Real& dp) {
    Real p0(1), p1 = x;
    for (unsigned j = 2; j <= n; ++j) {
        Real p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1);
}

// nodes and weights on [-1,1], cached per (order, ambient precision)
const GLRule& gl_rule(unsigned n) {
    static std::map<std::pair<unsigned, unsigned>, GLRule> cache;
    static std::mutex mu;
    unsigned digits = Real::default_precision();
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n, digits);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    GLRule r;
    r.x.assign(n, Real(0));
    r.w.assign(n, Real(0));
    Real thresh = ldexp(Real(1), -(long)(digits * 3.33) + 6);
    for (unsigned i = 0; i < (n + 1) / 2; ++i) {
        Real x(std::cos(M_PI * (i + 0.75) / (n + 0.5)));
        Real p(0), dp(1);
        for (int iter = 0; iter < 64; ++iter) {
            legendre_pd(n, x, p, dp);
            Real dx = p / dp;
            x = x - dx;
            if (fabs(dx) < thresh) break;
        }
        legendre_pd(n, x, p, dp);
        Real w = 2 / ((1 - x * x) * dp * dp);
        r.x[i] = x;
        r.w[i] = w;
        r.x[n - 1 - i] = -x;
        r.w[n - 1 - i] = w;
    }
    return cache.emplace(key, std::move(r)).first->second;
}

template <class F>
Complex gl_panel(const F& h, const Complex& a, const Complex& b, const GLRule& r) {
    Complex mid = (a + b) / Real(2), half = (b - a) / Real(2);
    Complex s(0);
    for (std::size_t i = 0; i < r.x.size(); ++i)
        s += h(mid + half * Complex(r.x[i])) * r.w[i];
    return s * half;
}

Complex eval_poly(const std::vector<Complex>& c, const Complex& z) {
    Complex acc(0);
    for (std::size_t i = c.size(); i-- > 0; ) acc = acc * z + c[i];
    return acc;
}

// integral of (f - a_0)(w - pole)^(k-2) V_n(w) along the vertical ray from
// base toward the cusp, truncated where the certified tail bound clears the
// target; orientation is from the cusp down to base
Complex cusp_leg(const FourierCoefficients& f, const std::vector<GroupElement>& gs,
                 const Complex& base, const Complex& pole, unsigned P, unsigned nodes) {
    const unsigned k = f.spec.k;
    const Real a0 = f.a[0];
    Real pi = pi_real();

    Real Cf(0), decay = exp(-2 * pi * base.im), fac(1);
    for (std::size_t j = 1; j < f.a.size(); ++j) {
        Cf += fabs(f.a[j]) * fac;
        fac *= decay;
    }
    if (Cf == 0) return Complex(0);

    Real entry_log(0);
    for (const auto& g : gs) {
        long mx = std::max({std::abs(g.a), std::abs(g.b), std::abs(g.cc), std::abs(g.d)});
        entry_log += log(Real(1 + mx));
    }
    Real R0 = abs_c(base - pole);
    Real target = ldexp(Real(1), -(long)(P + kTailBits));
    auto tail_bound = [&](const Real& t) {
        Real L = log(Real(3) + abs_c(base) + t) + 8 + entry_log;
        return Cf * exp(-2 * pi * (base.im + t)) * powi(R0 + t + 1, k - 2)
             * powi(L, (unsigned long)gs.size());
    };
    Real T = Real((long)std::max(k, 8u)) + Real((long)(P + 48)) * log(Real(2)) / (2 * pi);
    while (tail_bound(T) > target) T += 2;

    auto integrand = [&](const Complex& w) {
        Complex val = evaluate_form(f, w, P) - Complex(a0);
        val *= pow_c(w - pole, k - 2);
        if (!gs.empty()) val *= cup_chain(gs, w);
        return val;
    };

    std::vector<Real> cuts{Real(0)};
    while (cuts.back() < T) {
        Real wd = cuts.back() + base.im;
        if (wd > 4) wd = Real(4);
        Real next = cuts.back() + wd;
        if (next >= T - wd / 8) next = T;
        cuts.push_back(next);
    }
    const GLRule& rule = gl_rule(nodes);
    Complex acc(0);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        acc += gl_panel(integrand, base + Complex(Real(0), cuts[i]),
                        base + Complex(Real(0), cuts[i + 1]), rule);
    return -acc;
}

// integral of [f - a_0] (w - pole)^(k-2) V_n(w) over a straight segment;
// the form factor is skipped when f is null
Complex seg_leg(const FourierCoefficients* f, const std::vector<GroupElement>& gs,
                const Complex& from, const Complex& to, const Complex& pole,
                unsigned k, unsigned P, unsigned nodes) {
    Real len = abs_c(to - from);
    if (len == 0) return Complex(0);
    Real ymin = from.im < to.im ? from.im : to.im;

    auto integrand = [&](const Complex& w) {
        Complex val = pow_c(w - pole, k - 2);
        if (!gs.empty()) val *= cup_chain(gs, w);
        if (f) val *= evaluate_form(*f, w, P) - Complex(f->a[0]);
        return val;
    };

    unsigned long npan = (len / (Real(4) / 5 * ymin)).convert_to<unsigned long>() + 1;
    Complex step = (to - from) / Real((long)npan);
    const GLRule& rule = gl_rule(nodes);
    Complex acc(0);
    for (unsigned long i = 0; i < npan; ++i)
        acc += gl_panel(integrand, from + step * Real((long)i),
                        from + step * Real((long)(i + 1)), rule);
    return acc;
}

unsigned auto_nodes(unsigned P) {
    unsigned n = (P + 140) / 4 + 8;
    return n < 48 ? 48 : n;
}

} // namespace

Complex apply_moebius(const GroupElement& g, const Complex& tau) {
    Complex num = Complex(Real(g.a)) * tau + Complex(Real(g.b));
    Complex den = j_factor(g, tau);
    return num / den;
}

Complex eta_log(const Complex& tau, unsigned P) {
    if (!(tau.im >= Real(kCocycleYMin)))
        throw std::domain_error("eta_log: point below the safe region");
    PrecisionGuard guard(P + 64);
    Real pi = pi_real();
    Complex u = Complex(Real(0), pi / 12) * tau;
    Complex q = exp_c(Complex(-2 * pi * tau.im, 2 * pi * tau.re));
    Real qa = abs_c(q);
    Real target = ldexp(Real(1), -(long)(P + 48));
    Complex qp = q;
    Real qpa = qa;
    while (2 * qpa / (1 - qa) > target) {
        u += log_c(Complex(Real(1)) - qp);
        qp *= q;
        qpa *= qa;
    }
    return u;
}

CGamma cocycle_constant(const GroupElement& g, unsigned P) {
    check_unimodular(g, "cocycle_constant");
    PrecisionGuard guard(P + 64);
    const Complex pts[3] = {Complex(0, 1), Complex(Real(1) / 2, Real(1)),
                            Complex(Real(-1) / 3, Real(2))};
    Complex cs[3];
    for (int i = 0; i < 3; ++i) {
        Complex gt = apply_moebius(g, pts[i]);
        Complex du = Real(2) * (eta_log(gt, P) - eta_log(pts[i], P));
        cs[i] = du - log_c(j_factor(g, pts[i]));
    }
    CGamma out{g, cs[0], Real(0)};
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            Real d = abs_c(cs[i] - cs[j]);
            if (d > out.residual) out.residual = d;
        }
    if (out.residual > ldexp(Real(1), -(long)(P / 2)))
        throw std::runtime_error("cocycle_constant: branch-inconsistent measurements");
    return out;
}

Complex cup_power(unsigned n, const std::vector<GroupElement>& gs,
                  const Complex& tau, unsigned P) {
    if (n < 1 || gs.size() != n)
        throw std::invalid_argument("cup_power: need exactly n group elements, n >= 1");
    for (const auto& g : gs) check_unimodular(g, "cup_power");
    if (!(tau.im > 0))
        throw std::domain_error("cup_power: point must lie in the upper half-plane");
    PrecisionGuard guard(P + 64);
    return cup_chain(gs, tau);
}

Complex v_f_cochain(const FourierCoefficients& f, const std::vector<GroupElement>& gs,
                    const Complex& z, unsigned P) {
    PathIntegralSpec spec;
    spec.z = z;
    spec.P = P;
    return v_f_cochain(f, gs, spec);
}

Complex v_f_cochain(const FourierCoefficients& f, const std::vector<GroupElement>& gs,
                    const PathIntegralSpec& spec) {
    const unsigned P = spec.P;
    const unsigned k = f.spec.k;
    if (!(spec.z.im >= Real(kCocycleYMin)))
        throw std::domain_error("v_f_cochain: endpoint below the safe region");
    for (const auto& g : gs) check_unimodular(g, "v_f_cochain");
    for (const auto& g : gs)
        if (acts_trivially(g)) return Complex(0);

    PrecisionGuard guard(P + 64);
    unsigned nodes = spec.nodes ? spec.nodes : auto_nodes(P);
    Complex total(0);
    if (spec.has_via) {
        if (!(spec.via.im >= Real(kCocycleYMin)))
            throw std::domain_error("v_f_cochain: waypoint below the safe region");
        total += cusp_leg(f, gs, spec.via, spec.z, P, nodes);
        total += seg_leg(&f, gs, spec.via, spec.z, spec.z, k, P, nodes);
    } else {
        total += cusp_leg(f, gs, spec.z, spec.z, P, nodes);
    }
    if (!(f.a[0] == 0)) {
        if (gs.empty())
            total += Complex(f.a[0]) * pow_c(spec.z, k - 1) / Real((long)k - 1);
        else
            total += Complex(f.a[0]) * seg_leg(nullptr, gs, Complex(0, 1), spec.z,
                                               spec.z, k, P, nodes);
    }
    return total;
}

Complex bar_differential(const CochainEval& sigma, unsigned n, unsigned k,
                         const std::vector<GroupElement>& gs, const Complex& z, unsigned P) {
    if (gs.size() != n + 1)
        throw std::invalid_argument("bar_differential: need n+1 group elements");
    if (k < 4 || k % 2)
        throw std::invalid_argument("bar_differential: weight must be even, k >= 4");
    for (const auto& g : gs) check_unimodular(g, "bar_differential");
    PrecisionGuard guard(P + 64);

    std::vector<GroupElement> tail(gs.begin() + 1, gs.end());
    Complex out = pow_c(j_factor(gs[0], z), k - 2) * sigma(tail, apply_moebius(gs[0], z));
    int sign = -1;
    for (unsigned j = 0; j < n; ++j) {
        std::vector<GroupElement> merged;
        merged.reserve(n);
        for (unsigned t = 0; t < gs.size(); ) {
            if (t == j) {
                merged.push_back(mat_mul(gs[j + 1], gs[j]));
                t += 2;
            } else {
                merged.push_back(gs[t]);
                ++t;
            }
        }
        out += Real(sign) * sigma(merged, z);
        sign = -sign;
    }
    out += Real(sign) * sigma(std::vector<GroupElement>(gs.begin(), gs.end() - 1), z);
    return out;
}

Real verify_value_formula(const FourierCoefficients& f, unsigned m,
                          const std::vector<Complex>& zs, unsigned P) {
    if (m > 2)
        throw std::invalid_argument("verify_value_formula: derivative order capped at 2");
    if (zs.empty())
        throw std::invalid_argument("verify_value_formula: no sample points");
    const unsigned k = f.spec.k;
    for (const auto& z : zs)
        if (!(z.im >= Real(kCocycleYMin)) || !(z.im / norm2(z) >= Real(kCocycleYMin)))
            throw std::domain_error("verify_value_formula: sample outside the safe region");

    auto table = critical_table(f, m, P);
    auto Q = full_polynomial(table);

    PrecisionGuard guard(P + 64);
    std::vector<Complex> corr;
    if (m >= 1 && !(f.a[0] == 0)) {
        std::vector<Complex> pc(k - 1);
        for (unsigned n = 0; n <= k - 2; ++n) {
            Real den = powi(Real(-((long)n + 1)), m + 1);
            pc[k - 2 - n] = i_pow(1 - (long)n) * (real_of(binomial_int(k - 2, n)) / den);
        }
        auto ps = slash(pc, mat_S(), k);
        int sgn = (m % 2) ? 1 : -1;                 // (-1)^(m+1)
        Real scale = real_of(factorial_int(m)) * f.a[0];
        corr.resize(k - 1);
        for (std::size_t i = 0; i < pc.size(); ++i)
            corr[i] = (pc[i] + Real(sgn) * ps[i]) * scale;
    }

    std::vector<GroupElement> tup(m + 1, mat_S());
    CochainEval vf = [&](const std::vector<GroupElement>& t, const Complex& zz) {
        return v_f_cochain(f, t, zz, P);
    };
    int pref = ((m * (m + 1) / 2) % 2) ? -1 : 1;
    Real worst(0);
    for (const auto& z : zs) {
        Complex lhs = Real(pref) * bar_differential(vf, m, k, tup, z, P);
        Complex rhs = eval_poly(Q.c, z);
        if (!corr.empty()) rhs -= eval_poly(corr, z);
        Real r = abs_c(lhs - rhs);
        if (r > worst) worst = r;
    }
    return worst;
}

} // namespace ppoly
