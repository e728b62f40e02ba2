#include "ppoly/certify.hpp"

#include "ppoly/roots.hpp"
#include "ppoly/specfun.hpp"
#include <stdexcept>

namespace ppoly {

namespace {

void append_run(Certificate& c, const std::vector<Real>& run) {
    for (size_t i = 0; i < run.size(); ++i) {
        if (i) c.diffs.push_back(run[i] - run[i - 1]);
        c.values.push_back(run[i]);
    }
}

bool settle(const Certificate& c) {
    for (const Real& v : c.values)
        if (v < -c.tolerance) return false;
    for (const Real& d : c.diffs)
        if (d < -c.tolerance) return false;
    return true;
}

Real evidence_scale(const Certificate& c) {
    Real scale(0);
    for (const Real& v : c.values)
        if (fabs(v) > scale) scale = fabs(v);
    return scale;
}

} // namespace

Certificate ek_certificate(const std::vector<Real>& coeffs, const Real& tol) {
    Certificate c;
    c.kind = CertKind::enestrom_kakeya;
    c.subject = "coefficient-list";
    c.tolerance = tol;
    append_run(c, coeffs);
    c.pass = settle(c);
    return c;
}

Certificate ek_certificate(const PeriodPolynomial& q, const Real& tol) {
    PrecisionGuard guard(q.prec + 32);
    Real scale(0);
    for (const auto& z : q.c)
        if (abs_c(z) > scale) scale = abs_c(z);
    Real use = tol > 0 ? tol : pow2(-(long)q.prec / 2) * (1 + scale);

    std::vector<Real> re;
    size_t lo = q.kind == PolyKind::q_part && q.k >= 8 ? q.k / 4 - 1 : 0;
    for (size_t j = 0; j < q.c.size(); ++j) {
        if (fabs(q.c[j].im) > use)
            throw std::invalid_argument("ek_certificate: coefficients are not real to tolerance");
        if (j >= lo) re.push_back(q.c[j].re);
    }

    Certificate c;
    c.kind = CertKind::enestrom_kakeya;
    c.subject = q.source;
    c.k = q.k;
    c.m = q.m;
    c.tolerance = use;
    append_run(c, re);
    c.pass = settle(c);
    if (c.pass) {
        auto dc = unit_disk_check(q, use);
        if (!dc.inside)
            throw std::logic_error("ek_certificate: passing certificate contradicts the root computation");
    }
    return c;
}

Certificate monotonicity_certificate(unsigned k, unsigned j_max, const Real& grid_step,
                                     unsigned P) {
    if (k < 4 || k % 4)
        throw std::domain_error("monotonicity_certificate: weight must be divisible by 4");
    if (j_max < 1)
        throw std::invalid_argument("monotonicity_certificate: need at least one order");
    if (!(grid_step > 0))
        throw std::invalid_argument("monotonicity_certificate: grid step must be positive");
    PrecisionGuard guard(P + 32);

    std::vector<Real> grid;
    Real s = Real((long)k) / 2, end = Real((long)k - 2);
    while (s <= end + grid_step / 2) {
        grid.push_back(s);
        s = s + grid_step;
    }

    Certificate c;
    c.kind = CertKind::monotonicity_lemma;
    c.subject = form_id(FormSpec{k, FormKind::eisenstein, 0, P, 0});
    c.k = k;
    c.m = j_max;
    c.note = "sampled on a step grid over [k/2, k-2]; odd orders vanish at s = k/2";
    for (unsigned j = 1; j <= j_max; ++j) {
        std::vector<Real> psi, zet;
        for (const Real& x : grid) {
            psi.push_back(psi_diff(j, x, k, P));
            zet.push_back(zeta_diff(j, x, k, P));
        }
        append_run(c, psi);
        append_run(c, zet);
    }
    c.tolerance = pow2(-(long)P / 2) * (1 + evidence_scale(c));
    c.pass = settle(c);
    return c;
}

Certificate coefficient_factor_certificate(unsigned k, unsigned P) {
    if (k < 4 || k % 4)
        throw std::domain_error("coefficient_factor_certificate: weight must be divisible by 4");
    PrecisionGuard guard(P + 32);

    Certificate c;
    c.kind = CertKind::coefficient_factor;
    c.subject = form_id(FormSpec{k, FormKind::eisenstein, 0, P, 0});
    c.k = k;
    std::vector<Real> run;
    for (unsigned n = k / 4 - 1; n <= k / 2 - 2; ++n)
        run.push_back(zeta(Real(2 * (long)n + 2), P) * zeta(Real((long)k - 2 * (long)n - 2), P));
    append_run(c, run);
    c.tolerance = pow2(-(long)P / 2) * (1 + evidence_scale(c));
    c.pass = settle(c);
    return c;
}

} // namespace ppoly
