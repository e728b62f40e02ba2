#include "doctest.h"
#include "ppoly/cache.hpp"
#include "ppoly/forms.hpp"
#include "ppoly/lvalues.hpp"
#include "test_util.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

using namespace ppoly;
using namespace ppoly_test;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path p;
    TempDir() {
        p = fs::temp_directory_path() /
            ("ppoly-test-" + std::to_string((long)::getpid()) + "-" +
             std::to_string(counter()));
        fs::create_directories(p);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(p, ec);
    }
    static unsigned counter() {
        static unsigned n = 0;
        return n++;
    }
    std::string str() const { return p.string(); }
};

int run_cli(const std::string& args, const std::string& out_file = "") {
    std::string cmd = std::string(PPOLY_CLI_PATH) + " " + args;
    if (!out_file.empty()) cmd += " > " + out_file + " 2>/dev/null";
    else cmd += " > /dev/null 2>/dev/null";
    int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("value cache round-trips values bit for bit") {
    TempDir dir;
    unsigned P = 192;
    FourierCoefficients f = eigenforms(12, P, default_truncation(12, P, 1.0))[0];
    std::string digest = coefficient_digest(f);

    LDerivativeTable fresh = critical_table(f, 1, P);
    {
        LValueCache cache(dir.str());
        CHECK(cache.enabled());
        CHECK(!cache.find(digest, 1, 1, P).has_value());
        // a miss computes; the returned table is the computed one
        LDerivativeTable t = cache.table(f, 1, P);
        for (unsigned n = 0; n < t.values.size(); ++n) {
            CHECK(t.values[n].re == fresh.values[n].re);
            CHECK(t.values[n].im == fresh.values[n].im);
        }
    }
    {
        // two independent readers parse the file to identical bits, and the
        // decimal payload is lossless far below the certified error level
        LValueCache ca(dir.str()), cb(dir.str());
        LDerivativeTable ta = ca.table(f, 1, P, true);
        LDerivativeTable tb = cb.table(f, 1, P, true);
        PrecisionGuard guard(P + 96);
        for (unsigned n = 0; n < ta.values.size(); ++n) {
            CHECK(ta.values[n].re == tb.values[n].re);
            CHECK(ta.values[n].im == tb.values[n].im);
            CHECK(near_abs(ta.values[n].re, fresh.values[n].re, bit(-(long)P - 120)));
            CHECK(near_abs(ta.values[n].im, fresh.values[n].im, bit(-(long)P - 120)));
            CHECK(near_rel(ta.errors[n], fresh.errors[n], bit(-90)));
        }
        CHECK(near_abs(ta.fe_residual, fresh.fe_residual, bit(-(long)P - 90)));

        auto rec = ca.find(digest, 1, 3, P);
        REQUIRE(rec.has_value());
        Complex v = LValueCache::value_of(*rec, P);
        CHECK(v.re == ta.values[2].re);
        CHECK(v.im == ta.values[2].im);
    }

    // a higher-precision request misses and recomputes
    {
        LValueCache cache(dir.str());
        CHECK(!cache.find(digest, 1, 1, P + 64).has_value());
        LDerivativeTable t = cache.table(f, 1, P + 64);
        PrecisionGuard guard(P + 64);
        CHECK(t.errors[0] < pow2(-(long)P - 70));
    }
    // and the stored higher-precision record now serves the lower request
    {
        LValueCache cache(dir.str());
        auto rec = cache.find(digest, 1, 1, P);
        REQUIRE(rec.has_value());
        CHECK(rec->P == P + 64);
        std::size_t dropped = cache.gc();
        CHECK(dropped == 11);      // eleven P=192 records superseded
        CHECK(cache.stat().records == 11);
    }
}

TEST_CASE("value cache ignores corrupt records and survives gc") {
    TempDir dir;
    unsigned P = 96;
    {
        LValueCache cache(dir.str());
        PrecisionGuard guard(P + 96);
        cache.put("deadbeef00000000", 0, 1, P, Complex(Real("1.5"), Real("-0.25")));
        cache.put("deadbeef00000000", 0, 2, P, Complex(Real(2), Real(0)));
        cache.flush();
    }
    std::string file = (fs::path(dir.str()) / "lvalues.cache").string();
    {
        std::ofstream out(file, std::ios::app);
        out << "garbage line that should be skipped\n";
        out << "LV1 deadbeef00000000 0 3 96 40 1.0 bad-checksum deadbeefdeadbeef\n";
    }
    LValueCache cache(dir.str());
    CHECK(cache.stat().records == 2);
    CHECK(cache.stat().corrupt == 2);
    auto rec = cache.find("deadbeef00000000", 0, 1, P);
    REQUIRE(rec.has_value());
    {
        PrecisionGuard guard(P + 96);
        Complex v = LValueCache::value_of(*rec, P);
        CHECK(v.re == Real("1.5"));
        CHECK(v.im == Real("-0.25"));
    }
    CHECK(!cache.find("deadbeef00000000", 0, 3, P).has_value());

    cache.gc();                    // rewrite drops the corrupt lines for good
    LValueCache clean(dir.str());
    CHECK(clean.stat().records == 2);
    CHECK(clean.stat().corrupt == 0);

    LValueCache off;
    CHECK(!off.enabled());
    CHECK(!off.find("deadbeef00000000", 0, 1, P).has_value());
}

TEST_CASE("coefficient command prints known expansions") {
    TempDir dir;
    std::string out = (dir.p / "c.csv").string();
    CHECK(run_cli("coeffs --weight 12 --kind cusp --index 0 --count 5 --format csv",
                  out) == 0);
    {
        std::string text = slurp(out);
        CHECK(text.rfind("n,value\n", 0) == 0);
        PrecisionGuard guard(256);
        std::istringstream in(text);
        std::string line;
        std::getline(in, line);
        long expect[5] = {0, 1, -24, 252, -1472};
        for (int n = 0; n < 5; ++n) {
            std::getline(in, line);
            Real v(line.substr(line.find(',') + 1));
            CHECK(v == Real(expect[n]));
        }
    }
    CHECK(run_cli("coeffs --weight 4 --kind eisenstein --count 2 --format csv",
                  out) == 0);
    {
        std::string text = slurp(out);
        PrecisionGuard guard(256);
        std::istringstream in(text);
        std::string line;
        std::getline(in, line);
        std::getline(in, line);
        CHECK(Real(line.substr(2)) == 1);
        std::getline(in, line);
        CHECK(Real(line.substr(2)) == 240);
    }
    CHECK(run_cli("coeffs --weight 13 --kind cusp --index 0 --count 3") == 1);
    CHECK(run_cli("coeffs --weight 12 --kind cusp --index 1 --count 3") == 1);
}

TEST_CASE("verification reports repeat byte for byte") {
    TempDir dir;
    std::string a = (dir.p / "a.json").string(), b = (dir.p / "b.json").string();
    std::string args = "verify --weight 12 --kind cusp --index 0 --deriv 0 "
                       "--part odd --precision-bits 128 --output ";
    CHECK(run_cli(args + a) == 0);
    CHECK(run_cli(args + b) == 0);
    std::string ja = slurp(a);
    CHECK(ja == slurp(b));
    CHECK(ja.find("\"verdict\": \"holds-within-tolerance\"") != std::string::npos);
    CHECK(ja.find("\"schema\": 1") != std::string::npos);
    CHECK(ja.find("\"a\": \"2.0000000000") != std::string::npos);

    // csv column order is part of the interface
    std::string c = (dir.p / "a.csv").string();
    CHECK(run_cli("verify --weight 12 --kind cusp --index 0 --deriv 0 --part odd "
                  "--precision-bits 128 --format csv --output " + c) == 0);
    CHECK(slurp(c).rfind(
              "re,im,modulus,argument-degrees,error-radius,classification\n", 0) == 0);
}

TEST_CASE("scan output does not depend on the worker count") {
    TempDir dir;
    std::string a = (dir.p / "s1.json").string(), b = (dir.p / "s2.json").string();
    std::string base = "scan --weight-min 12 --weight-max 16 --deriv-max 1 "
                       "--kind both --part odd --precision-bits 128 ";
    CHECK(run_cli(base + "--jobs 1 --output " + a) == 0);
    CHECK(run_cli(base + "--jobs 3 --output " + b) == 0);
    std::string ja = slurp(a);
    CHECK(ja.size() > 100);
    CHECK(ja == slurp(b));

    // an empty range is a successful scan of nothing
    CHECK(run_cli("scan --weight-min 13 --weight-max 13 --deriv-max 2 "
                  "--kind cusp --precision-bits 96") == 0);
}

TEST_CASE("exit codes follow the verdict") {
    CHECK(run_cli("verify --weight 12 --kind cusp --index 0 --deriv 1 --part odd "
                  "--precision-bits 128") == 0);
    CHECK(run_cli("cocycle-check --weight 12 --kind cusp --index 0 --deriv 0 "
                  "--precision-bits 128 --threshold 1e-15") == 0);
    // an absurdly tight threshold flips the verdict, not the computation
    CHECK(run_cli("cocycle-check --weight 12 --kind cusp --index 0 --deriv 0 "
                  "--precision-bits 128 --threshold 1e-70") == 2);
    CHECK(run_cli("certify --weight 12 --deriv 1 --precision-bits 128") == 0);
    CHECK(run_cli("certify --weight 10 --deriv 1") == 1);
    CHECK(run_cli("verify --weight 12 --kind cusp --index 0 --deriv 0 "
                  "--precision-bits 32") == 1);
    CHECK(run_cli("verify --weight 12 --kind cusp --index 0 --deriv 0 "
                  "--tolerance 1e-3") == 1);
    CHECK(run_cli("nonsense") == 1);
    CHECK(run_cli("--version") == 0);
}

TEST_CASE("cache maintenance commands report and clean") {
    TempDir dir;
    std::string args = "lvalues --weight 12 --kind cusp --index 0 --deriv 0 "
                       "--precision-bits 96 --cache-dir " + dir.str();
    CHECK(run_cli(args) == 0);
    std::string out = (dir.p / "stat.json").string();
    CHECK(run_cli("cache stat --cache-dir " + dir.str(), out) == 0);
    std::string st = slurp(out);
    CHECK(st.find("\"records\": 11") != std::string::npos);
    CHECK(st.find("\"corrupt\": 0") != std::string::npos);
    CHECK(run_cli("cache gc --cache-dir " + dir.str(), out) == 0);
    CHECK(slurp(out).find("\"dropped\": 0") != std::string::npos);
    CHECK(run_cli("cache stat") == 1); // no directory configured
}

} // TEST_SUITE
