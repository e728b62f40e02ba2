#include "ppoly/roots.hpp"

#include <algorithm>
#include <stdexcept>

namespace ppoly {

namespace {

// p and p' at z by one Horner pass; coefficients ascending
void horner2(const std::vector<Complex>& c, const Complex& z, Complex& p, Complex& dp) {
    p = c.back();
    dp = Complex(0);
    for (std::size_t i = c.size() - 1; i-- > 0; ) {
        dp = dp * z + p;
        p = p * z + c[i];
    }
}

} // namespace

std::vector<RootInfo> find_roots(const std::vector<Complex>& p_in, unsigned P) {
    std::vector<Complex> c = p_in;
    std::vector<RootInfo> out;

    // deflate exact origin roots
    std::size_t shift = 0;
    while (shift < c.size() && c[shift].re == 0 && c[shift].im == 0) ++shift;
    if (shift == c.size()) throw std::invalid_argument("find_roots: zero polynomial");
    for (std::size_t i = 0; i < shift; ++i)
        out.push_back({Complex(0), Real(0)});
    c.erase(c.begin(), c.begin() + shift);
    while (c.size() > 1 && c.back().re == 0 && c.back().im == 0) c.pop_back();

    const std::size_t d = c.size() - 1;
    if (d == 0) return out;

    PrecisionGuard outer(P + 32);
    Real maxc(0);
    for (const auto& ci : c) { Real m = abs_c(ci); if (m > maxc) maxc = m; }
    Real lead = abs_c(c.back());
    if (lead < ldexp(maxc, -(int)(P / 2)))
        throw std::invalid_argument("find_roots: leading coefficient below tolerance");

    // conditioning reserve from the coefficient spread
    long span = 0;
    {
        Real lo = lead;
        Real head = abs_c(c.front());
        if (head < lo) lo = head;
        if (lo > 0 && maxc > 0) {
            long e = (long)(log(maxc / lo) / log(Real(2))) + 1;
            if (e > 0) span = e;
        }
    }
    const unsigned Pint = 2 * P + (unsigned)std::min<long>(span, 8 * (long)P) + 64;

    PrecisionGuard inner(Pint);
    std::vector<Complex> ch(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        ch[i] = Complex(c[i].re + Real(0), c[i].im + Real(0));

    // Cauchy bound caps the seed radii
    Real R(0);
    for (std::size_t i = 0; i < d; ++i) {
        Real m = abs_c(ch[i]) / abs_c(ch.back());
        if (m > R) R = m;
    }
    R = R + 1;

    // per-root seed radii from the upper convex hull of (i, log2 |c_i|)
    std::vector<Real> radii(d, Real(1));
    {
        std::vector<std::pair<std::size_t, Real>> pts;
        for (std::size_t i = 0; i <= d; ++i)
            if (norm2(ch[i]) != 0)
                pts.push_back({i, log(abs_c(ch[i])) / log(Real(2))});
        std::vector<std::size_t> hull;
        for (std::size_t t = 0; t < pts.size(); ++t) {
            while (hull.size() >= 2) {
                auto& a = pts[hull[hull.size() - 2]];
                auto& b = pts[hull[hull.size() - 1]];
                auto& c2 = pts[t];
                Real cross = (Real((long)(b.first - a.first))) * (c2.second - a.second)
                           - (Real((long)(c2.first - a.first))) * (b.second - a.second);
                if (cross >= 0) hull.pop_back();
                else break;
            }
            hull.push_back(t);
        }
        std::size_t pos = 0;
        for (std::size_t e = 0; e + 1 < hull.size(); ++e) {
            auto& a = pts[hull[e]];
            auto& b = pts[hull[e + 1]];
            std::size_t len = b.first - a.first;
            Real r = exp(log(Real(2)) * (a.second - b.second) / Real((long)len));
            if (r > R) r = R;
            for (std::size_t t = 0; t < len && pos < d; ++t) radii[pos++] = r;
        }
        while (pos < d) radii[pos++] = Real(1);
    }

    Real twopi = 2 * pi_real();
    std::vector<Complex> z(d);
    for (std::size_t j = 0; j < d; ++j) {
        Real th = twopi * Real((long)j) / Real((long)d) + Real("0.397");
        z[j] = Complex(radii[j] * cos(th), radii[j] * sin(th));
    }

    const Real thresh = ldexp(Real(1), -(long)P + 16);
    const int cap = 600;
    bool converged = false;
    for (int iter = 0; iter < cap && !converged; ++iter) {
        Real worst(0);
        for (std::size_t i = 0; i < d; ++i) {
            Complex pv, dv;
            horner2(ch, z[i], pv, dv);
            if (norm2(dv) == 0) {
                z[i] = z[i] + Complex(R, R) * ldexp(Real(1), -(iter % 40) - 2);
                worst = R;
                continue;
            }
            Complex N = pv / dv;
            Complex S(0);
            for (std::size_t j = 0; j < d; ++j)
                if (j != i) S = S + Complex(1) / (z[i] - z[j]);
            Complex den = Complex(1) - N * S;
            Complex w = (norm2(den) == 0) ? N : N / den;
            z[i] = z[i] - w;
            Real aw = abs_c(w);
            if (aw > worst) worst = aw;
        }
        if (worst < thresh) converged = true;
    }
    if (!converged) throw std::runtime_error("find_roots: no convergence within iteration cap");

    for (std::size_t i = 0; i < d; ++i) {
        Complex pv, dv;
        horner2(ch, z[i], pv, dv);
        Real denom = abs_c(dv);
        Real err = denom > 0 ? Real((long)d) * abs_c(pv) / denom : R;
        out.push_back({z[i], err});
    }
    return out;
}

RootReport classify(const std::vector<RootInfo>& roots, const Real& tol) {
    for (const auto& r : roots)
        if (!(r.err < tol / 4))
            throw std::invalid_argument("classify: error radius not below tol/4");

    const std::size_t n = roots.size();
    RootReport rep;
    rep.roots = roots;
    rep.labels.assign(n, RootLabel::unclassified);
    rep.tol = tol;
    rep.a = Real(0);
    rep.max_circle_dev = Real(0);

    std::vector<Real> mod(n);
    for (std::size_t i = 0; i < n; ++i) mod[i] = abs_c(roots[i].z);

    auto near_origin = [&](std::size_t i) { return mod[i] < tol; };
    auto near_circle = [&](std::size_t i) { return fabs(mod[i] - 1) < tol; };
    auto is_real = [&](std::size_t i) { return fabs(roots[i].z.im) < tol; };

    for (std::size_t i = 0; i < n; ++i) {
        if (near_origin(i)) rep.labels[i] = RootLabel::origin;
        else if (near_circle(i)) rep.labels[i] = RootLabel::circle;
    }

    // real quadruples {a, -a, 1/a, -1/a} among what remains
    for (std::size_t i = 0; i < n; ++i) {
        if (rep.labels[i] != RootLabel::unclassified) continue;
        if (!is_real(i) || mod[i] <= 1) continue;
        Real av = fabs(roots[i].z.re);
        long neg = -1, inv = -1, neginv = -1;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || rep.labels[j] != RootLabel::unclassified || !is_real(j)) continue;
            Real x = roots[j].z.re;
            if (neg < 0 && fabs(x + roots[i].z.re) < tol) { neg = (long)j; continue; }
            if (inv < 0 && fabs(x * roots[i].z.re - 1) < tol) { inv = (long)j; continue; }
            if (neginv < 0 && fabs(x * roots[i].z.re + 1) < tol) { neginv = (long)j; continue; }
        }
        if (neg >= 0 && inv >= 0 && neginv >= 0) {
            rep.labels[i] = rep.labels[neg] = rep.labels[inv] = rep.labels[neginv]
                = RootLabel::quadruple;
            if (av > rep.a) rep.a = av;
            for (std::size_t j : {i, (std::size_t)neg, (std::size_t)inv, (std::size_t)neginv})
                if (near_circle(j)) rep.ambiguous.push_back((unsigned)j);
        }
    }

    // clusters of distinct labels are not trusted
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            Real dist = abs_c(roots[i].z - roots[j].z);
            if (dist < roots[i].err + roots[j].err && rep.labels[i] != rep.labels[j]) {
                rep.labels[i] = rep.labels[j] = RootLabel::unclassified;
                rep.ambiguous.push_back((unsigned)i);
                rep.ambiguous.push_back((unsigned)j);
            }
        }

    for (std::size_t i = 0; i < n; ++i) {
        switch (rep.labels[i]) {
            case RootLabel::origin: ++rep.n_origin; break;
            case RootLabel::circle: {
                ++rep.n_circle;
                Real dev = fabs(mod[i] - 1);
                if (dev > rep.max_circle_dev) rep.max_circle_dev = dev;
                break;
            }
            case RootLabel::quadruple: ++rep.n_quadruple; break;
            default: ++rep.n_unclassified;
        }
    }
    return rep;
}

DiskCheck unit_disk_check(const PeriodPolynomial& q, const Real& tol) {
    unsigned P = q.prec ? q.prec : 256;
    auto roots = find_roots(q.c, P);
    DiskCheck res;
    res.witness = Real(0);
    for (const auto& r : roots) {
        Real m = abs_c(r.z);
        if (m > res.witness) { res.witness = m; res.at = r.z; }
    }
    res.inside = res.witness <= 1 + tol;
    return res;
}

} // namespace ppoly
