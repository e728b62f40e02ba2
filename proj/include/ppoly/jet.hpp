#ifndef PPOLY_JET_HPP
#define PPOLY_JET_HPP

// Truncated Taylor series in one variable ("jets"), used to push derivatives
// of modest order (<= ~8) through zeta/log/exp without symbolic machinery.
// coefficient c[j] is the j-th Taylor coefficient, so f^(j) = j! * c[j].

#include "ppoly/real.hpp"
#include <vector>
#include <cstddef>

namespace ppoly {

template <class T>
struct Jet {
    std::vector<T> c;   // size = order+1

    Jet() {}
    explicit Jet(std::size_t order, const T& val = T(0)) : c(order + 1, T(0)) {
        c[0] = val;
    }

    std::size_t order() const { return c.size() - 1; }

    static Jet constant(std::size_t order, const T& val) {
        Jet j(order);
        j.c[0] = val;
        return j;
    }
    // the identity coordinate: val + eps
    static Jet variable(std::size_t order, const T& val) {
        Jet j(order);
        j.c[0] = val;
        if (order >= 1) j.c[1] = T(1);
        return j;
    }

    Jet operator-() const {
        Jet r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet r = a;
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] + b.c[i];
        return r;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet r = a;
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] = r.c[i] - b.c[i];
        return r;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        std::size_t n = a.c.size();
        Jet r;
        r.c.assign(n, T(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (is_zero(a.c[i])) continue;
            for (std::size_t j = 0; i + j < n; ++j)
                r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
        }
        return r;
    }
    friend Jet operator*(const Jet& a, const T& s) {
        Jet r = a;
        for (auto& x : r.c) x = x * s;
        return r;
    }
    friend Jet operator*(const T& s, const Jet& a) { return a * s; }

    static bool is_zero(const T& x) { return x == 0; }
};

// q = a / b with b.c[0] != 0
template <class T>
Jet<T> jet_div(const Jet<T>& a, const Jet<T>& b) {
    std::size_t n = a.c.size();
    Jet<T> q;
    q.c.assign(n, T(0));
    for (std::size_t i = 0; i < n; ++i) {
        T acc = a.c[i];
        for (std::size_t j = 1; j <= i; ++j)
            acc = acc - b.c[j] * q.c[i - j];
        q.c[i] = acc / b.c[0];
    }
    return q;
}

// exp(a); standard recurrence e_k = (1/k) * sum_{j=1..k} j*a_j*e_{k-j}
template <class T>
Jet<T> jet_exp(const Jet<T>& a) {
    std::size_t n = a.c.size();
    Jet<T> e;
    e.c.assign(n, T(0));
    e.c[0] = exp(a.c[0]);
    for (std::size_t k = 1; k < n; ++k) {
        T acc(0);
        for (std::size_t j = 1; j <= k; ++j)
            acc = acc + T((long)j) * a.c[j] * e.c[k - j];
        e.c[k] = acc / T((long)k);
    }
    return e;
}

// log(a) with a.c[0] > 0; l_k = (a_k - (1/k) sum_{j=1..k-1} j*l_j*a_{k-j}) / a_0
template <class T>
Jet<T> jet_log(const Jet<T>& a) {
    std::size_t n = a.c.size();
    Jet<T> l;
    l.c.assign(n, T(0));
    l.c[0] = log(a.c[0]);
    for (std::size_t k = 1; k < n; ++k) {
        T acc = a.c[k] * T((long)k);
        for (std::size_t j = 1; j < k; ++j)
            acc = acc - T((long)j) * l.c[j] * a.c[k - j];
        l.c[k] = acc / (T((long)k) * a.c[0]);
    }
    return l;
}

// pow(a, p) for real exponent p, a.c[0] > 0: exp(p*log(a)) done directly to
// avoid the two-pass roundoff: r_0 = a_0^p, then
// k*a_0*r_k = sum_{j=1..k} ((p+1)*j - k) * a_j * r_{k-j}
template <class T>
Jet<T> jet_pow(const Jet<T>& a, const T& p) {
    std::size_t n = a.c.size();
    Jet<T> r;
    r.c.assign(n, T(0));
    r.c[0] = pow(a.c[0], p);
    for (std::size_t k = 1; k < n; ++k) {
        T acc(0);
        for (std::size_t j = 1; j <= k; ++j)
            acc = acc + ((p + T(1)) * T((long)j) - T((long)k)) * a.c[j] * r.c[k - j];
        r.c[k] = acc / (T((long)k) * a.c[0]);
    }
    return r;
}

} // namespace ppoly

#endif
