#include "doctest.h"
#include "test_util.hpp"

#include "ppoly/cocycle.hpp"

#include <stdexcept>
#include <vector>

using namespace ppoly;
using namespace ppoly_test;

namespace {

FourierCoefficients delta_at(unsigned P, double y) {
    return eigenforms(12, P, default_truncation(12, P, y))[0];
}

FourierCoefficients eis_at(unsigned k, unsigned P, double y) {
    return eisenstein_series(k, default_truncation(k, P, y), P);
}

} // namespace

TEST_CASE("eta series limit, translation, and discriminant consistency") {
    PrecisionGuard guard(340);
    Real pi = pi_real();

    // high on the imaginary axis the series is dominated by its first term
    Complex u4 = eta_log(Complex(0, 4), 256);
    CHECK(u4.im == 0);
    CHECK(near_abs(u4.re + pi / 3, -exp(-8 * pi), Real("1e-21")));

    // translation shifts the logarithm by i pi / 12
    Complex tau(Real(3) / 10, Real(11) / 10);
    Complex d = eta_log(tau + Complex(1), 256) - eta_log(tau, 256);
    CHECK(near_abs(d.re, Real(0), bit(-245)));
    CHECK(near_abs(d.im, pi / 12, bit(-245)));

    // the 24th power of eta reproduces the weight-12 cusp form at i
    Complex lhs = exp_c(Complex(24) * eta_log(Complex(0, 1), 256));
    Complex rhs = evaluate_form(delta_at(256, 1.0), Complex(0, 1), 256);
    CHECK(near_rel(lhs.re, rhs.re, bit(-240)));
    CHECK(near_abs(lhs.im, Real(0), bit(-240)));
    CHECK(near_abs(rhs.im, Real(0), bit(-240)));

    CHECK_THROWS_AS(eta_log(Complex(Real(0), Real("0.01")), 128), std::domain_error);
    CHECK_THROWS_AS(eta_log(Complex(0, -1), 128), std::domain_error);
}

TEST_CASE("transformation constants for generator words") {
    PrecisionGuard guard(340);
    Real pi = pi_real();

    CGamma cs = cocycle_constant(mat_S(), 256);
    CHECK(near_abs(cs.c.re, Real(0), bit(-235)));
    CHECK(near_abs(cs.c.im, -pi / 2, bit(-235)));
    CHECK(cs.residual <= bit(-235));

    CGamma ct = cocycle_constant(mat_T(), 256);
    CHECK(near_abs(ct.c.re, Real(0), bit(-235)));
    CHECK(near_abs(ct.c.im, pi / 6, bit(-235)));

    CGamma cid = cocycle_constant(GroupElement{1, 0, 0, 1}, 256);
    CHECK(cid.c.re == 0);
    CHECK(cid.c.im == 0);

    CGamma cts = cocycle_constant(mat_mul(mat_T(), mat_S()), 256);
    CHECK(near_abs(cts.c.re, Real(0), bit(-235)));
    CHECK(near_abs(cts.c.im, -pi / 3, bit(-235)));

    CHECK_THROWS_AS(cocycle_constant(GroupElement{1, 0, 0, -1}, 128), std::invalid_argument);
}

TEST_CASE("cup powers evaluate the eta cocycle exactly") {
    PrecisionGuard guard(340);
    Real pi = pi_real();

    Complex vs = cup_power(1, {mat_S()}, Complex(0, 3), 256);
    CHECK(near_abs(vs.re, log(Real(3)), bit(-245)));
    CHECK(near_abs(vs.im, Real(0), bit(-300)));

    Complex vt = cup_power(1, {mat_T()}, Complex(Real(2) / 5, Real(7) / 5), 256);
    CHECK(vt.re == 0);
    CHECK(near_abs(vt.im, pi / 6, bit(-310)));

    Complex vss = cup_power(2, {mat_S(), mat_S()}, Complex(0, 2), 256);
    Real l2 = log(Real(2));
    CHECK(near_abs(vss.re, -l2 * l2, bit(-243)));
    CHECK(near_abs(vss.im, Real(0), bit(-300)));

    Complex vid = cup_power(1, {GroupElement{1, 0, 0, 1}}, Complex(0, 2), 256);
    CHECK(vid.re == 0);
    CHECK(vid.im == 0);
    Complex vmix = cup_power(2, {mat_S(), GroupElement{-1, 0, 0, -1}}, Complex(0, 2), 256);
    CHECK(vmix.re == 0);
    CHECK(vmix.im == 0);

    // a longer word agrees with the series evaluation of 2u(g tau) - 2u(tau)
    GroupElement tst = mat_mul(mat_mul(mat_T(), mat_S()), mat_T());
    Complex tau(Real(3) / 10, Real(11) / 10);
    Complex word = cup_power(1, {tst}, tau, 256);
    Complex series = Real(2) * (eta_log(apply_moebius(tst, tau), 256) - eta_log(tau, 256));
    CHECK(near_abs(abs_c(word - series), Real(0), bit(-230)));

    // cocycle additivity across a product
    GroupElement g1 = mat_mul(mat_T(), mat_S());
    GroupElement g2 = mat_mul(mat_S(), mat_T());
    Complex left = cup_power(1, {mat_mul(g2, g1)}, tau, 256);
    Complex right = cup_power(1, {g2}, apply_moebius(g1, tau), 256)
                  + cup_power(1, {g1}, tau, 256);
    CHECK(near_abs(abs_c(left - right), Real(0), bit(-230)));

    CHECK_THROWS_AS(cup_power(2, {mat_S()}, Complex(0, 2), 128), std::invalid_argument);
    CHECK_THROWS_AS(cup_power(1, {GroupElement{2, 0, 0, 2}}, Complex(0, 2), 128),
                    std::invalid_argument);
    CHECK_THROWS_AS(cup_power(1, {mat_S()}, Complex(1, -1), 128), std::domain_error);
}

TEST_CASE("cochain path integrals are path independent") {
    PrecisionGuard guard(300);
    FourierCoefficients D = delta_at(192, 0.5);

    Complex direct = v_f_cochain(D, {mat_S()}, Complex(0, 2), 192);
    PathIntegralSpec sp;
    sp.z = Complex(0, 2);
    sp.P = 192;
    sp.has_via = true;
    sp.via = Complex(Real(1) / 2, Real(5) / 2);
    Complex rerouted = v_f_cochain(D, {mat_S()}, sp);
    CHECK(near_abs(abs_c(direct - rerouted), Real(0),
                   bit(-90) * (Real(1) + abs_c(direct))));

    FourierCoefficients E = eis_at(12, 192, 0.5);
    PathIntegralSpec se;
    se.z = Complex(1, 2);
    se.P = 192;
    se.has_via = true;
    se.via = Complex(Real(-1) / 4, Real(3));
    Complex edir = v_f_cochain(E, {mat_S()}, Complex(1, 2), 192);
    Complex evia = v_f_cochain(E, {mat_S()}, se);
    CHECK(near_abs(abs_c(edir - evia), Real(0), bit(-90) * (Real(1) + abs_c(edir))));

    Complex triv = v_f_cochain(D, {GroupElement{-1, 0, 0, -1}}, Complex(0, 2), 192);
    CHECK(triv.re == 0);
    CHECK(triv.im == 0);

    CHECK_THROWS_AS(v_f_cochain(D, {}, Complex(Real(0), Real("0.01")), 128),
                    std::domain_error);
    PathIntegralSpec bad;
    bad.z = Complex(0, 2);
    bad.P = 128;
    bad.has_via = true;
    bad.via = Complex(Real(0), Real("0.01"));
    CHECK_THROWS_AS(v_f_cochain(D, {}, bad), std::domain_error);
}

TEST_CASE("bar differential of cochains squares to zero") {
    PrecisionGuard guard(300);
    Complex z(Real(2) / 5, Real(13) / 10);

    CochainEval zero = [](const std::vector<GroupElement>&, const Complex&) {
        return Complex(0);
    };
    Complex dz = bar_differential(zero, 1, 12, {mat_S(), mat_T()}, z, 128);
    CHECK(dz.re == 0);
    CHECK(dz.im == 0);

    FourierCoefficients D = delta_at(128, 0.5);
    CochainEval vf = [&](const std::vector<GroupElement>& t, const Complex& zz) {
        return v_f_cochain(D, t, zz, 128);
    };
    CochainEval dvf = [&](const std::vector<GroupElement>& t2, const Complex& zz) {
        return bar_differential(vf, 1, 12, t2, zz, 128);
    };
    Complex dd = bar_differential(dvf, 2, 12, {mat_S(), mat_T(), mat_S()}, z, 128);
    CHECK(near_abs(abs_c(dd), Real(0), bit(-140)));

    // the degree-0 differential at S is killed by the weight-10 involution
    auto sigma0 = [&](const Complex& zz) {
        return bar_differential(vf, 0, 12, {mat_S()}, zz, 128);
    };
    Complex at_z = sigma0(z);
    Complex at_sz = sigma0(apply_moebius(mat_S(), z));
    Complex rel = pow_c(z, 10) * at_sz + at_z;
    Real scale = Real(1) + abs_c(at_z) + abs_c(pow_c(z, 10) * at_sz);
    CHECK(near_abs(abs_c(rel), Real(0), bit(-100) * scale));

    CHECK_THROWS_AS(bar_differential(zero, 1, 12, {mat_S()}, z, 128), std::invalid_argument);
    CHECK_THROWS_AS(bar_differential(zero, 0, 11, {mat_S()}, z, 128), std::invalid_argument);
}

TEST_CASE("derivative value formulas match the period polynomials") {
    PrecisionGuard guard(300);
    std::vector<Complex> zs{Complex(0, 2), Complex(1, 2)};

    FourierCoefficients D = delta_at(160, 0.4);
    CHECK(verify_value_formula(D, 0, zs, 160) <= Real("1e-25"));
    CHECK(verify_value_formula(D, 1, zs, 160) <= Real("1e-25"));
    CHECK(verify_value_formula(D, 2, {Complex(0, 2)}, 160) <= Real("1e-25"));

    FourierCoefficients E = eis_at(12, 160, 0.4);
    CHECK(verify_value_formula(E, 0, {Complex(0, 2)}, 160) <= Real("1e-20"));
    CHECK(verify_value_formula(E, 1, zs, 160) <= Real("1e-20"));
    CHECK(verify_value_formula(E, 2, {Complex(0, 2)}, 160) <= Real("1e-18"));

    // the residual collapses as the working precision grows
    Real ra = verify_value_formula(delta_at(96, 0.4), 1, {Complex(0, 2)}, 96);
    Real rb = verify_value_formula(delta_at(192, 0.4), 1, {Complex(0, 2)}, 192);
    CHECK(ra <= Real("1e-20"));
    CHECK(rb < ra * Real("1e-6") + Real("1e-60"));

    CHECK_THROWS_AS(verify_value_formula(D, 3, {Complex(0, 2)}, 96), std::invalid_argument);
    CHECK_THROWS_AS(verify_value_formula(D, 1, {}, 96), std::invalid_argument);
    CHECK_THROWS_AS(verify_value_formula(D, 1, {Complex(Real(0), Real("0.02"))}, 96),
                    std::domain_error);
}

TEST_CASE("bar differential values interpolate as bounded-degree polynomials") {
    PrecisionGuard guard(300);
    FourierCoefficients D = delta_at(96, 0.3);
    CochainEval vf = [&](const std::vector<GroupElement>& t, const Complex& zz) {
        return v_f_cochain(D, t, zz, 96);
    };
    auto sigma = [&](const Complex& zz) {
        return bar_differential(vf, 1, 12, {mat_S(), mat_T()}, zz, 96);
    };

    std::vector<Complex> nodes, vals;
    for (int j = 0; j <= 10; ++j) {
        nodes.push_back(Complex(Real(-3) / 2 + Real(3 * j) / 10, Real(5) / 4));
        vals.push_back(sigma(nodes.back()));
    }
    Complex zstar(Real(13) / 100, Real(121) / 100);
    Complex actual = sigma(zstar);

    Complex pred(0);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        Complex term = vals[i];
        for (std::size_t j = 0; j < nodes.size(); ++j)
            if (j != i) term *= (zstar - nodes[j]) / (nodes[i] - nodes[j]);
        pred += term;
    }
    CHECK(near_abs(abs_c(pred - actual), Real(0),
                   Real("1e-30") * (Real(1) + abs_c(actual))));
}
