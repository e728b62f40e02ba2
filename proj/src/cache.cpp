#include "ppoly/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace ppoly {

namespace {

constexpr const char* kTag = "LV1";
constexpr const char* kFileName = "lvalues.cache";

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)v);
    return buf;
}

std::string record_body(const CacheRecord& r) {
    std::ostringstream os;
    os << kTag << ' ' << r.digest << ' ' << r.m << ' ' << r.s << ' ' << r.P
       << ' ' << r.digits << ' ' << r.re << ' ' << r.im;
    return os.str();
}

// intermediate results can carry more precision than the ambient default;
// round to the default so the decimal payload is a lossless image
Real snap(const Real& x) {
    Real y;
    mpfr_set(y.backend().data(), x.backend().data(), MPFR_RNDN);
    return y;
}

bool parse_line(const std::string& line, CacheRecord& out) {
    std::istringstream is(line);
    std::string tag, sum;
    CacheRecord r;
    if (!(is >> tag >> r.digest >> r.m >> r.s >> r.P >> r.digits >> r.re >> r.im >> sum))
        return false;
    std::string rest;
    if (is >> rest) return false;
    if (tag != kTag) return false;
    if (sum != hex64(fnv1a64(record_body(r)))) return false;
    out = r;
    return true;
}

} // namespace

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string coefficient_digest(const FourierCoefficients& f) {
    std::ostringstream os;
    os << form_id(f.spec) << '|' << f.a.size();
    for (std::size_t n = 0; n < f.a.size() && n < 8; ++n)
        os << '|' << str_real(f.a[n], 12);
    return hex64(fnv1a64(os.str()));
}

LValueCache::LValueCache(const std::string& dir) : dir_(dir) {
    if (dir_.empty()) return;
    path_ = dir_ + "/" + kFileName;
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        CacheRecord r;
        if (parse_line(line, r)) recs_.push_back(std::move(r));
        else ++corrupt_;
    }
    if (corrupt_)
        std::fprintf(stderr, "cache: ignored %zu corrupt record(s) in %s\n",
                     corrupt_, path_.c_str());
}

std::optional<CacheRecord> LValueCache::find(const std::string& digest, unsigned m,
                                             unsigned s, unsigned P) const {
    const CacheRecord* best = nullptr;
    for (const auto& r : recs_)
        if (r.digest == digest && r.m == m && r.s == s && r.P >= P)
            if (!best || r.P > best->P) best = &r;
    if (!best) return std::nullopt;
    return *best;
}

Complex LValueCache::value_of(const CacheRecord& rec, unsigned P) {
    PrecisionGuard guard(P + 96);
    return Complex(Real(rec.re), Real(rec.im));
}

void LValueCache::put(const std::string& digest, unsigned m, unsigned s, unsigned P,
                      const Complex& v) {
    if (!enabled()) return;
    PrecisionGuard guard(P + 96);
    CacheRecord r;
    r.digest = digest;
    r.m = m;
    r.s = s;
    r.P = P;
    r.digits = digits_for_bits(P + 96) + 4;
    r.re = str_real(snap(v.re), r.digits);
    r.im = str_real(snap(v.im), r.digits);
    for (auto& old : recs_)
        if (old.digest == digest && old.m == m && old.s == s && old.P == P) {
            old = std::move(r);
            dirty_ = true;
            return;
        }
    recs_.push_back(std::move(r));
    dirty_ = true;
}

void LValueCache::flush() {
    if (!enabled() || !dirty_) return;
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    std::string tmp = path_ + ".tmp" + std::to_string((long)::getpid());
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) {
            std::fprintf(stderr, "cache: cannot write %s\n", tmp.c_str());
            return;
        }
        for (const auto& r : recs_) {
            std::string body = record_body(r);
            out << body << ' ' << hex64(fnv1a64(body)) << '\n';
        }
    }
    std::filesystem::rename(tmp, path_, ec);
    if (ec) {
        std::fprintf(stderr, "cache: rename to %s failed: %s\n",
                     path_.c_str(), ec.message().c_str());
        std::filesystem::remove(tmp, ec);
        return;
    }
    dirty_ = false;
}

LValueCache::Stats LValueCache::stat() const {
    Stats st;
    st.records = recs_.size();
    st.corrupt = corrupt_;
    if (enabled()) {
        std::error_code ec;
        auto sz = std::filesystem::file_size(path_, ec);
        if (!ec) st.bytes = (std::size_t)sz;
    }
    return st;
}

std::size_t LValueCache::gc() {
    std::vector<CacheRecord> kept;
    for (const auto& r : recs_) {
        bool superseded = false;
        for (const auto& o : recs_)
            if (&o != &r && o.digest == r.digest && o.m == r.m && o.s == r.s &&
                o.P > r.P) {
                superseded = true;
                break;
            }
        if (!superseded) kept.push_back(r);
    }
    std::size_t dropped = recs_.size() - kept.size();
    if (dropped || corrupt_) {
        recs_ = std::move(kept);
        dirty_ = true;
        flush();
    }
    return dropped;
}

LDerivativeTable LValueCache::table(const FourierCoefficients& f, unsigned m,
                                    unsigned P, bool readonly) {
    const unsigned k = f.spec.k;
    if (!enabled() || k < 4 || k % 2)
        return critical_table(f, m, P);

    std::string dig = coefficient_digest(f);
    std::vector<CacheRecord> hits;
    bool all = true;
    for (unsigned n = 0; n <= k - 2 && all; ++n) {
        auto r = find(dig, m, n + 1, P);
        if (r) hits.push_back(*r);
        else all = false;
    }
    if (all) {
        try {
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
                t.values[n] = Complex(Real(hits[n].re), Real(hits[n].im));
                t.errors[n] = err_unit * (1 + abs_c(t.values[n]));
                bool closed = f.spec.kind == FormKind::eisenstein &&
                              n + 1 != 1 && n + 1 != k - 1;
                t.routes[n] = closed ? LRoute::closed_form : LRoute::mellin;
            }
            Complex fe = i_pow((long)k) * Complex((m % 2) ? -1 : 1);
            Real worst(0);
            for (unsigned n = 0; n <= k - 2; ++n) {
                Real r = abs_c(t.values[n] - fe * t.values[k - 2 - n]);
                if (r > worst) worst = r;
            }
            t.fe_residual = worst;
            return t;
        } catch (const std::exception&) {
            // unparsable payload: recompute below
        }
    }

    LDerivativeTable t = critical_table(f, m, P);
    if (!readonly) {
        for (unsigned n = 0; n <= k - 2; ++n)
            put(dig, m, n + 1, P, t.values[n]);
        flush();
    }
    return t;
}

} // namespace ppoly
