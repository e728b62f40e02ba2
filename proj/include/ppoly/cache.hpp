#ifndef PPOLY_CACHE_HPP
#define PPOLY_CACHE_HPP

// Persistent store for critical-table values. One record per line, keyed by
// (coefficient digest, derivative order, integer point, precision), decimal
// payload with a per-line checksum. Snapshots are written to a temp file and
// renamed into place, so a concurrent reader only ever sees complete records.

#include "ppoly/real.hpp"
#include "ppoly/forms.hpp"
#include "ppoly/lvalues.hpp"
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ppoly {

std::uint64_t fnv1a64(const std::string& s);

// stable identity of a coefficient list: form id, truncation, and the
// leading coefficients rounded to 12 digits
std::string coefficient_digest(const FourierCoefficients& f);

struct CacheRecord {
    std::string digest;
    unsigned m = 0;
    unsigned s = 0;
    unsigned P = 0;
    unsigned digits = 0;           // significant digits in the payload
    std::string re, im;
};

class LValueCache {
public:
    LValueCache() = default;       // disabled: every lookup misses
    explicit LValueCache(const std::string& dir);

    bool enabled() const { return !dir_.empty(); }
    const std::string& path() const { return path_; }

    // best record for the key whose stored precision is >= P
    std::optional<CacheRecord> find(const std::string& digest, unsigned m,
                                    unsigned s, unsigned P) const;
    static Complex value_of(const CacheRecord& rec, unsigned P);

    void put(const std::string& digest, unsigned m, unsigned s, unsigned P,
             const Complex& v);
    void flush();

    struct Stats {
        std::size_t records = 0;
        std::size_t bytes = 0;
        std::size_t corrupt = 0;   // lines dropped while loading
    };
    Stats stat() const;
    std::size_t gc();              // drop records superseded at higher precision

    // critical table with read-through and (unless readonly) write-back
    LDerivativeTable table(const FourierCoefficients& f, unsigned m, unsigned P,
                           bool readonly = false);

private:
    std::string dir_, path_;
    std::vector<CacheRecord> recs_;
    std::size_t corrupt_ = 0;
    bool dirty_ = false;
};

} // namespace ppoly

#endif
