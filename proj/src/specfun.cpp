#include "ppoly/specfun.hpp"

#include <map>
#include <mutex>
#include <tuple>
#include <cmath>
#include <stdexcept>

namespace ppoly {

namespace {

std::mutex bern_mu;
std::vector<Rat> bern_cache;

bool integer_arg(const Real& s, long& out) {
    if (s != floor(s)) return false;
    if (fabs(s) > Real(1000000)) return false;
    out = s.convert_to<long>();
    return true;
}

} // namespace

Rat bernoulli(unsigned n) {
    std::lock_guard<std::mutex> lk(bern_mu);
    if (bern_cache.empty()) bern_cache.push_back(Rat(1));
    while (bern_cache.size() <= n) {
        unsigned m = (unsigned)bern_cache.size();
        Rat acc(0);
        for (unsigned j = 0; j < m; ++j)
            acc += Rat(binomial_int(m + 1, j)) * bern_cache[j];
        bern_cache.push_back(-acc / Rat(m + 1));
    }
    return bern_cache[n];
}

Rat harmonic(unsigned n) {
    Rat h(0);
    for (unsigned l = 1; l <= n; ++l) h += Rat(1, l);
    return h;
}

Real hurwitz_zeta(const Real& s, const Real& a, unsigned P) {
    if (s <= 1) throw std::domain_error("hurwitz_zeta: need s > 1");
    if (a <= 0) throw std::domain_error("hurwitz_zeta: need a > 0");
    PrecisionGuard g(P + 96);
    Real ss = s + Real(0);
    Real aa = a + Real(0);
    return detail::hurwitz_em(ss, aa, P);
}

Real zeta(const Real& s, unsigned P) {
    if (s <= 1) throw std::domain_error("zeta: need s > 1");
    PrecisionGuard g(P + 96);
    Real ss = s + Real(0);
    return detail::hurwitz_em(ss, Real(1), P);
}

Jet<Real> zeta_jet(const Real& s, unsigned order, unsigned P) {
    if (s <= 1) throw std::domain_error("zeta_jet: need s > 1");
    PrecisionGuard g(P + 96);
    Jet<Real> sj = Jet<Real>::variable(order, s + Real(0));
    return detail::hurwitz_em(sj, Real(1), P);
}

Real zeta_logderiv_deriv(unsigned j, const Real& s, unsigned P) {
    if (s <= 1) throw std::domain_error("zeta_logderiv_deriv: need s > 1");
    PrecisionGuard g(P + 96);
    Jet<Real> z = zeta_jet(s, j + 1, P);
    Jet<Real> lz = jet_log(z);
    return real_of(factorial_int(j + 1)) * lz.c[j + 1];
}

Real psi_diff(unsigned j, const Real& s, unsigned k, unsigned P) {
    if (j < 1) throw std::domain_error("psi_diff: need j >= 1");
    if (!(s > 0 && s < Real((long)k))) throw std::domain_error("psi_diff: need 0 < s < k");
    PrecisionGuard g(P + 96);
    Real ss = s + Real(0);
    if (j == 1)
        return digamma_real(ss) - digamma_real(Real((long)k) - ss);
    Real sign = (j % 2 == 0) ? Real(1) : Real(-1);
    Real zs = detail::hurwitz_em(Real((long)j) + Real(0), ss, P);
    Real zk = detail::hurwitz_em(Real((long)j) + Real(0), Real((long)k) - ss, P);
    return real_of(factorial_int(j - 1)) * (sign * zs + zk);
}

Real zeta_diff(unsigned j, const Real& s, unsigned k, unsigned P) {
    if (j < 1) throw std::domain_error("zeta_diff: need j >= 1");
    if (!(s > 1 && s < Real((long)k - 1))) throw std::domain_error("zeta_diff: need 1 < s < k-1");
    Real a = zeta_logderiv_deriv(j - 1, s, P);
    Real b = zeta_logderiv_deriv(j - 1, Real((long)k) - s, P);
    return (j % 2 == 0) ? a + b : a - b;
}

Real tan_deriv_constant(unsigned j) {
    if (j < 1) throw std::domain_error("tan_deriv_constant: need j >= 1");
    if (j % 2 == 1) return Real(0);
    Real sign = (j / 2 % 2 == 0) ? Real(1) : Real(-1);
    Int two_pow = (Int(1) << j) - 1;
    return sign * real_of(bernoulli(j)) * real_of(two_pow) * powi(pi_real(), j) / Real((long)j);
}

std::shared_ptr<const GaussLegendre> gauss_legendre(unsigned points, unsigned bits) {
    static std::mutex mu;
    static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const GaussLegendre>> cache;
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = cache.find({points, bits});
        if (it != cache.end()) return it->second;
    }

    PrecisionGuard g(bits + 32);
    auto rule = std::make_shared<GaussLegendre>();
    rule->x.assign(points, Real(0));
    rule->w.assign(points, Real(0));

    auto legendre_pd = [&](const Real& x, Real& p, Real& dp) {
        Real p0(1), p1 = x;
        for (unsigned l = 1; l < points; ++l) {
            Real p2 = (Real(2 * (long)l + 1) * x * p1 - Real((long)l) * p0) / Real((long)l + 1);
            p0 = p1;
            p1 = p2;
        }
        p = p1;
        dp = Real((long)points) * (x * p1 - p0) / (x * x - Real(1));
    };

    Real tol = ldexp(Real(1), -(long)bits - 16);
    for (unsigned i = 0; i < (points + 1) / 2; ++i) {
        Real x = cos(pi_real() * (Real(4 * (long)i + 3) / Real(4 * (long)points + 2)));
        Real p, dp;
        for (int iter = 0; iter < 200; ++iter) {
            legendre_pd(x, p, dp);
            Real dx = p / dp;
            x = x - dx;
            if (fabs(dx) < tol) break;
        }
        legendre_pd(x, p, dp);
        Real w = Real(2) / ((Real(1) - x * x) * dp * dp);
        rule->x[i] = x;
        rule->w[i] = w;
        rule->x[points - 1 - i] = -x;
        rule->w[points - 1 - i] = w;
    }

    std::lock_guard<std::mutex> lk(mu);
    auto [it, inserted] = cache.try_emplace({points, bits}, rule);
    return it->second;
}

namespace {

// closed form for integer s >= 1, m = 0:
// int_1^inf e^(-wv) v^r dv = e^(-w) r!/w^(r+1) * sum_{i<=r} w^i/i!
Real exp_moment_closed(const Real& w, long r) {
    Real sum(0), term(1);
    for (long i = 0; i <= r; ++i) {
        sum = sum + term;
        term = term * w / Real(i + 1);
    }
    return exp(-w) * real_of(factorial_int((unsigned)r)) / powi(w, (unsigned long)r + 1) * sum;
}

Real exp_moment_compute(unsigned long n, const Real& s, unsigned m, unsigned P) {
    Real w = 2 * pi_real() * Real((long)n);
    long s_int = 0;
    if (m == 0 && integer_arg(s, s_int) && s_int >= 1)
        return exp_moment_closed(w, s_int - 1);

    Real lnP = log(Real((long)std::max(P, 3u)));
    Real V = Real(1) + (Real((long)P) * log(Real(2)) + (fabs(s) + Real((long)m)) * lnP) / w;
    while (w * V < fabs(s - 1) + Real((long)m + 1)) V = V * Real(1.5);

    unsigned G = std::max(48u, P / 4);
    auto rule = gauss_legendre(G, P + 64);
    Real h = Real(0.5);
    if (n > 20) h = Real(10) / Real((long)n);

    bool s_is_int = integer_arg(s, s_int) && s_int >= 1;
    auto integrand = [&](const Real& v) {
        Real r = exp(-w * v);
        if (s_is_int) r = r * powi(v, (unsigned long)(s_int - 1));
        else r = r * pow(v, s - 1);
        if (m) r = r * powi(log(v), m);
        return r;
    };

    Real cutoff = ldexp(Real(1), -(long)P - 16);
    Real acc(0);
    Real a(1);
    while (a < V) {
        Real b = a + h;
        if (b > V) b = V;
        Real mid = (a + b) / 2, rad = (b - a) / 2;
        Real panel(0);
        for (unsigned i = 0; i < G; ++i)
            panel = panel + rule->w[i] * integrand(mid + rad * rule->x[i]);
        acc = acc + rad * panel;
        a = b;
        // stop early once the integrand decays at rate >= w/2, which makes
        // the remaining tail at most 2*f(a)/w
        if (a > Real(1)) {
            Real la = log(a);
            Real drain(0);
            if (s > 1) drain = (s - 1) / a;
            if (m) drain = drain + Real((long)m) / (a * la);
            if (drain < w / 2) {
                Real tail = 2 * exp(-w * a) * pow(a, s - 1) / w;
                if (m) tail = tail * powi(la, m);
                if (fabs(tail) < cutoff) break;
            }
        }
    }
    return acc;
}

} // namespace

Real exp_moment(unsigned long n, const Real& s, unsigned m, unsigned P) {
    if (n < 1) throw std::domain_error("exp_moment: need n >= 1");
    PrecisionGuard g(P + 96);
    Real ss = s + Real(0);

    static std::mutex mu;
    static std::map<std::tuple<unsigned long, unsigned, unsigned, std::string>, Real> memo;
    auto key = std::make_tuple(n, m, P, ss.str());
    {
        std::lock_guard<std::mutex> lk(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
    }
    Real val = exp_moment_compute(n, ss, m, P);
    std::lock_guard<std::mutex> lk(mu);
    auto [it, inserted] = memo.try_emplace(std::move(key), val);
    return it->second;
}

} // namespace ppoly
