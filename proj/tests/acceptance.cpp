// Acceptance gate: eight end-to-end checks, one PASS/FAIL line each.
// Exit status is the number of failed checks. --full widens the conjecture
// scan (criterion 5) from the quick gate to the complete range.

#include "ppoly/certify.hpp"
#include "ppoly/cocycle.hpp"
#include "ppoly/forms.hpp"
#include "ppoly/lvalues.hpp"
#include "ppoly/periodpoly.hpp"
#include "ppoly/roots.hpp"

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

using namespace ppoly;

namespace {

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

FourierCoefficients eigenform_at(unsigned k, unsigned idx, unsigned P, double y) {
    return eigenforms(k, P, default_truncation(k, P, y)).at(idx);
}

FourierCoefficients eisenstein_at(unsigned k, unsigned P, double y) {
    return eisenstein_series(k, default_truncation(k, P, y), P);
}

Real circle_dev(const Complex& z) { return fabs(abs_c(z) - 1); }

// largest | |z|-1 | over the roots of the polynomial with ascending
// coefficients c
Real max_circle_dev(const std::vector<Complex>& c, unsigned P) {
    auto roots = find_roots(c, P);
    PrecisionGuard guard(P);
    Real worst(0);
    for (const auto& r : roots) {
        Real d = circle_dev(r.z);
        if (d > worst) worst = d;
    }
    return worst;
}

bool check1(std::string& detail) {
    const unsigned P = 256;
    auto t0 = Clock::now();
    LDerivativeTable table = critical_table(eigenform_at(20, 0, P, 1.0), 1, P);
    PeriodPolynomial poly = odd_part(table);
    auto roots = find_roots(poly.c, P);

    PrecisionGuard guard(P);
    Real coeff_tol("1e-3");
    const Complex& lead = poly.c.back();
    bool ok = true;
    // monic profile: |c16..c0| = 1, 5.805, 9.685, 6.720, 0, 6.720, ...
    double profile[9] = {1.0, 5.805, 9.685, 6.720, 0.0, 6.720, 9.685, 5.805, 1.0};
    for (unsigned j = 0; j <= 16; j += 2) {
        Real got = fabs(poly.c[j].re / lead.re);
        ok = ok && fabs(got - Real(profile[(16 - j) / 2])) <= coeff_tol;
        ok = ok && fabs(poly.c[j].im) <= coeff_tol;
    }
    for (unsigned j = 1; j < 16; j += 2)
        ok = ok && abs_c(poly.c[j]) <= coeff_tol;

    RootReport rep = classify(roots, Real("1e-10"));
    ok = ok && rep.n_unclassified == 0 && rep.n_quadruple == 4;
    ok = ok && fabs(rep.a - Real("1.9")) <= Real("0.1");

    // on-circle arguments fold into 0, 13.5, 43 (and the +/-i pair) degrees
    bool seen[3] = {false, false, false};
    double want[3] = {0.0, 13.5, 43.0};
    Real pi = pi_real();
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (rep.labels[i] != RootLabel::circle) continue;
        Real deg = fabs(arg_c(roots[i].z)) * 180 / pi;
        if (deg > 90) deg = 180 - deg;
        bool matched = fabs(deg - 90) <= 1;
        for (int c = 0; c < 3; ++c)
            if (fabs(deg - Real(want[c])) <= 1) {
                seen[c] = true;
                matched = true;
            }
        ok = ok && matched;
    }
    ok = ok && seen[0] && seen[1] && seen[2];

    double dt = secs_since(t0);
    ok = ok && dt < 120.0;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "weight-20 first-derivative odd part: monic profile, a = %s, %.1fs",
                  str_real(rep.a, 5).c_str(), dt);
    detail = buf;
    return ok;
}

bool check2(std::string& detail) {
    const unsigned P = 192;
    LDerivativeTable table = critical_table(eigenform_at(12, 0, P, 1.0), 0, P);
    PeriodPolynomial poly = odd_part(table);   // the z factor is divided out
    auto roots = find_roots(poly.c, P);

    PrecisionGuard guard(P);
    Real tol("1e-10");
    bool ok = true;
    double targets[4] = {2.0, -2.0, 0.5, -0.5};
    std::vector<bool> used(roots.size(), false);
    for (double t : targets) {
        bool hit = false;
        for (std::size_t i = 0; i < roots.size() && !hit; ++i)
            if (!used[i] && abs_c(roots[i].z - Complex(Real(t))) <= tol) {
                used[i] = true;
                hit = true;
            }
        ok = ok && hit;
    }
    Real worst(0);
    for (std::size_t i = 0; i < roots.size(); ++i)
        if (!used[i] && circle_dev(roots[i].z) > worst)
            worst = circle_dev(roots[i].z);
    ok = ok && worst <= tol;
    detail = "weight-12 odd part: zeros 0, +/-2, +/-1/2, rest on the circle "
             "(max deviation " + str_real(worst, 4) + ")";
    return ok;
}

bool check3(std::string& detail) {
    const unsigned P = 256;
    auto t0 = Clock::now();
    bool ok = true;
    Real worst(0);
    unsigned certified = 0;
    for (unsigned k = 8; k <= 100; k += 4) {
        LDerivativeTable table = critical_table(eisenstein_at(k, P, 1.0), 1, P);
        PeriodPolynomial poly = odd_part(table);
        Real dev = max_circle_dev(poly.c, P);
        Certificate cert = ek_certificate(q_decompose(poly).q, Real(0));
        PrecisionGuard guard(P);
        if (dev > worst) worst = dev;
        ok = ok && dev <= Real("1e-10") && cert.pass;
        if (cert.pass) ++certified;
    }
    double dt = secs_since(t0);
    ok = ok && dt < 600.0;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "eisenstein first-derivative odd parts, k = 8..100 step 4: max "
                  "deviation %s, %u/24 certificates, %.1fs",
                  str_real(worst, 4).c_str(), certified, dt);
    detail = buf;
    return ok;
}

bool check4(std::string& detail) {
    const unsigned P = 256;
    bool ok = true;
    Real worst(0);
    for (unsigned k = 8; k <= 60; k += 4) {
        for (unsigned m = 1; m <= 3; ++m) {
            PeriodPolynomial poly = tilde_odd_part(k, m, P);
            Real dev = max_circle_dev(poly.c, P);
            PrecisionGuard guard(P);
            if (dev > worst) worst = dev;
            ok = ok && dev <= Real("1e-10");
        }
        ok = ok && monotonicity_certificate(k, 3, Real(1) / 4, P).pass;
        ok = ok && coefficient_factor_certificate(k, P).pass;
    }
    detail = "cosine-removed derivative polynomials, k = 8..60 step 4, orders "
             "1..3: unimodular (max deviation " + str_real(worst, 4) +
             "), certificates pass";
    return ok;
}

bool check5(std::string& detail, bool full) {
    const unsigned P = 256;
    const unsigned k_max = full ? 50 : 30, m_max = full ? 3 : 2;
    auto t0 = Clock::now();
    bool ok = true;
    Real worst(0);
    unsigned checked = 0;
    for (unsigned k = 12; k <= k_max; k += 2) {
        if (cusp_dim(k) == 0) continue;
        auto basis = eigenforms(k, P, default_truncation(k, P, 1.0));
        for (const auto& f : basis) {
            for (unsigned m = 0; m <= m_max; ++m) {
                LDerivativeTable table = critical_table(f, m, P);
                Real dev = max_circle_dev(full_polynomial(table).c, P);
                PrecisionGuard guard(P);
                if (dev > worst) worst = dev;
                ok = ok && dev <= Real("1e-10");
                ++checked;
            }
        }
    }
    double dt = secs_since(t0);
    if (!full) ok = ok && dt < 900.0;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "eigenform full polynomials, k <= %u, orders <= %u: %u checked, "
                  "max deviation %s, %.1fs%s",
                  k_max, m_max, checked, str_real(worst, 4).c_str(), dt,
                  full ? "" : " (run with --full for k <= 50, orders <= 3)");
    detail = buf;
    return ok;
}

bool check6(std::string& detail) {
    const unsigned P = 256;
    bool ok = true;
    Real worst(0);
    for (unsigned k : {12u, 20u}) {
        FourierCoefficients f = eisenstein_at(k, P, 1.0);
        for (unsigned m = 0; m <= 2; ++m)
            for (unsigned s = 2; s <= k - 2; ++s) {
                Complex a = lambda_deriv_mellin(f, m, Real(s), P);
                Real b = lambda_deriv_eisenstein(k, m, s, P);
                PrecisionGuard guard(P);
                Real d = fabs(a.re - b) + fabs(a.im);
                if (d > worst) worst = d;
                ok = ok && d <= Real("1e-30");
            }
    }
    detail = "integral vs closed-form derivatives, E12/E20, orders 0..2: max "
             "difference " + str_real(worst, 4);
    return ok;
}

bool check7(std::string& detail) {
    const unsigned P = 160;
    std::vector<Complex> zs{Complex(0, 2), Complex(1, 2), Complex(-1, 3)};
    FourierCoefficients D = eigenform_at(12, 0, P, 0.3);
    FourierCoefficients E = eisenstein_at(12, P, 0.3);
    Real r0 = verify_value_formula(D, 0, zs, P);
    Real r1 = verify_value_formula(D, 1, zs, P);
    Real r2 = verify_value_formula(E, 1, zs, P);
    bool ok;
    {
        PrecisionGuard guard(P);
        ok = r0 <= Real("1e-15") && r1 <= Real("1e-15") && r2 <= Real("1e-12");
    }

    // differential values interpolate as a polynomial of degree <= k-2
    const unsigned Pi = 96;
    FourierCoefficients Di = eigenform_at(12, 0, Pi, 0.3);
    PrecisionGuard guard(300);
    CochainEval vf = [&](const std::vector<GroupElement>& t, const Complex& zz) {
        return v_f_cochain(Di, t, zz, Pi);
    };
    std::vector<Complex> nodes, vals;
    for (int j = 0; j <= 10; ++j) {
        nodes.push_back(Complex(Real(-3) / 2 + Real(3 * j) / 10, Real(5) / 4));
        vals.push_back(bar_differential(vf, 1, 12, {mat_S(), mat_T()},
                                        nodes.back(), Pi));
    }
    Complex zstar(Real(13) / 100, Real(121) / 100);
    Complex actual = bar_differential(vf, 1, 12, {mat_S(), mat_T()}, zstar, Pi);
    Complex pred(0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        Complex term = vals[i];
        for (std::size_t j = 0; j < nodes.size(); ++j)
            if (j != i) term *= (zstar - nodes[j]) / (nodes[i] - nodes[j]);
        pred += term;
    }
    Real ir = abs_c(pred - actual) / (1 + abs_c(actual));
    ok = ok && ir <= Real("1e-12");
    detail = "value-formula residuals " + str_real(r0, 3) + ", " + str_real(r1, 3) +
             ", " + str_real(r2, 3) + "; interpolation residual " + str_real(ir, 3);
    return ok;
}

bool check8(std::string& detail) {
    const unsigned P = 192;
    bool ok = true;
    GroupElement S = mat_S();
    for (unsigned k : {12u, 16u, 20u, 24u, 28u}) {
        FourierCoefficients f = eigenform_at(k, 0, P, 1.0);
        FourierCoefficients f_half = eigenform_at(k, 0, P / 2, 1.0);
        for (unsigned m = 0; m <= 2; ++m) {
            LDerivativeTable table = critical_table(f, m, P);
            PeriodPolynomial Q = full_polynomial(table);
            auto roots = find_roots(Q.c, P);
            PrecisionGuard guard(P);
            ok = ok && table.fe_residual <= Real("1e-40");

            // Vieta: root sum and product against the coefficient ratios
            Complex sum(0), prod(Real(1));
            for (const auto& r : roots) {
                sum = sum + r.z;
                prod = prod * r.z;
            }
            unsigned d = Q.c.size() - 1;
            Complex esum = Real(-1) * (Q.c[d - 1] / Q.c[d]);
            Complex eprod = (d % 2 ? Real(-1) : Real(1)) * (Q.c[0] / Q.c[d]);
            ok = ok && abs_c(sum - esum) <= Real("1e-20") * (1 + abs_c(esum));
            ok = ok && abs_c(prod - eprod) <= Real("1e-20") * (1 + abs_c(eprod));

            // half/double reduction round trip
            QDecomposition qd = q_decompose(odd_part(table));
            ok = ok && qd.residual <= Real("1e-25");

            // |_{2-k} S twice is the identity on degree <= k-2
            auto twice = slash(slash(Q.c, S, k), S, k);
            Real scale(0), sworst(0);
            for (const auto& c : Q.c)
                if (abs_c(c) > scale) scale = abs_c(c);
            for (std::size_t j = 0; j < Q.c.size(); ++j) {
                Real dd = abs_c(twice[j] - Q.c[j]);
                if (dd > sworst) sworst = dd;
            }
            ok = ok && sworst <= Real("1e-45") * scale;

            // halving the precision moves coefficients far below tolerance
            PeriodPolynomial lo = odd_part(critical_table(f_half, m, P / 2));
            PeriodPolynomial hi = odd_part(table);
            for (std::size_t j = 0; j < hi.c.size(); ++j)
                ok = ok && abs_c(lo.c[j] - hi.c[j]) <=
                               Real("1e-20") * (1 + abs_c(hi.c[j]));
        }
    }

    // weight-20 first-derivative regression: the half-polynomial coefficients
    // oscillate, so the monotonicity certificate fails while the zeros still
    // classify cleanly
    LDerivativeTable t20 = critical_table(eigenform_at(20, 0, P, 1.0), 1, P);
    PeriodPolynomial odd20 = odd_part(t20);
    Certificate cert = ek_certificate(q_decompose(odd20).q, Real(0));
    auto roots = find_roots(odd20.c, P);
    PrecisionGuard guard(P);
    RootReport rep = classify(roots, Real("1e-10"));
    bool osc_up = false, osc_down = false;
    for (const auto& dd : cert.diffs) {
        if (dd > 0) osc_up = true;
        if (dd < 0) osc_down = true;
    }
    ok = ok && !cert.pass && osc_up && osc_down && rep.n_unclassified == 0;
    detail = std::string("invariants over k = 12..28 and the weight-20 "
                         "oscillating-coefficient regression (certificate ") +
             (cert.pass ? "unexpectedly passed" : "fails as expected") +
             ", zeros classified)";
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    bool full = false;
    for (int i = 1; i < argc; ++i)
        if (!std::strcmp(argv[i], "--full")) full = true;

    int failures = 0;
    auto report = [&](int n, bool pass, const std::string& detail) {
        std::printf("criterion %d: %s  %s\n", n, pass ? "PASS" : "FAIL",
                    detail.c_str());
        std::fflush(stdout);
        if (!pass) ++failures;
    };

    std::string d;
    report(1, check1(d), d);
    report(2, check2(d), d);
    report(3, check3(d), d);
    report(4, check4(d), d);
    report(5, check5(d, full), d);
    report(6, check6(d), d);
    report(7, check7(d), d);
    report(8, check8(d), d);

    std::printf("acceptance: %d/8 passed\n", 8 - failures);
    return failures;
}
