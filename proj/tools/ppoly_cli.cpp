// Command-line front end: builds forms, tables, polynomials, root reports,
// certificates, and cocycle residual checks, and emits JSON/CSV reports.
// Exit codes: 0 success/holds, 1 operational error, 2 mathematical violation.

#include "CLI11.hpp"
#include "json.hpp"

#include "ppoly/cache.hpp"
#include "ppoly/certify.hpp"
#include "ppoly/cocycle.hpp"
#include "ppoly/forms.hpp"
#include "ppoly/lvalues.hpp"
#include "ppoly/periodpoly.hpp"
#include "ppoly/roots.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

using nlohmann::json;
using namespace ppoly;

namespace {

constexpr const char* kVersion = "1.0.0";

struct RunConfig {
    unsigned P = 256;
    std::string tol_str = "1e-10";
    unsigned long truncation = 0;      // 0 = auto
    std::string cache_dir;
    unsigned jobs = 1;
    std::string format = "json";
    std::string output;
    bool timing = false;

    Real tolerance() const {
        PrecisionGuard guard(P);
        return Real(tol_str);
    }
};

std::string dstr(const Real& x, unsigned digits) { return str_real(x, digits); }

unsigned report_digits(const RunConfig& cfg) { return digits_for_bits(cfg.P); }

std::string kind_str(FormKind kd) {
    return kd == FormKind::eisenstein ? "eisenstein" : "cusp";
}

FormKind parse_kind(const std::string& s) {
    if (s == "eisenstein") return FormKind::eisenstein;
    if (s == "cusp") return FormKind::cusp_eigenform;
    throw std::invalid_argument("unknown form kind: " + s);
}

std::string label_str(RootLabel l) {
    switch (l) {
        case RootLabel::origin: return "origin";
        case RootLabel::circle: return "circle";
        case RootLabel::quadruple: return "quadruple";
        default: return "unclassified";
    }
}

std::string cert_kind_str(CertKind c) {
    switch (c) {
        case CertKind::enestrom_kakeya: return "enestrom-kakeya";
        case CertKind::monotonicity_lemma: return "monotonicity-lemma";
        default: return "coefficient-factor";
    }
}

int write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::fputs(text.c_str(), stdout);
        return 0;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        std::fprintf(stderr, "cannot write %s\n", path.c_str());
        return 1;
    }
    out << text;
    return 0;
}

// json to <output>(.json), csv to <output>(.csv); stdout when no path
int emit(const RunConfig& cfg, const json& j, const std::string& csv) {
    std::string jtext = j.dump(2) + "\n";
    if (cfg.format == "json")
        return write_text(cfg.output, jtext);
    if (cfg.format == "csv")
        return write_text(cfg.output, csv);
    if (cfg.output.empty())
        return write_text("", jtext + "\n" + csv);
    int rc = write_text(cfg.output + ".json", jtext);
    return rc ? rc : write_text(cfg.output + ".csv", csv);
}

FourierCoefficients build_form(const RunConfig& cfg, unsigned k, FormKind kind,
                               unsigned index, double y_min) {
    unsigned long N = cfg.truncation ? cfg.truncation
                                     : default_truncation(k, cfg.P, y_min);
    if (kind == FormKind::eisenstein) return eisenstein_series(k, N, cfg.P);
    auto basis = eigenforms(k, cfg.P, N);
    if (index >= basis.size())
        throw std::invalid_argument("no cusp eigenform with weight " + std::to_string(k) +
                                    " and index " + std::to_string(index));
    return basis[index];
}

json certificate_json(const Certificate& c, unsigned digits) {
    json cj;
    cj["kind"] = cert_kind_str(c.kind);
    cj["subject"] = c.subject;
    cj["weight"] = c.k;
    cj["order"] = c.m;
    cj["pass"] = c.pass;
    cj["tolerance"] = dstr(c.tolerance, 8);
    cj["note"] = c.note;
    json vals = json::array(), diffs = json::array();
    for (const auto& v : c.values) vals.push_back(dstr(v, digits));
    for (const auto& d : c.diffs) diffs.push_back(dstr(d, digits));
    cj["values"] = vals;
    cj["diffs"] = diffs;
    return cj;
}

struct ItemResult {
    json report;
    std::string csv;
    int code = 0;                  // 0 holds, 1 inconclusive, 2 violated
};

ItemResult run_verify_item(const RunConfig& cfg, unsigned k, FormKind kind,
                           unsigned index, unsigned m, const std::string& part,
                           bool use_cache) {
    auto t0 = std::chrono::steady_clock::now();
    FourierCoefficients f = build_form(cfg, k, kind, index, 1.0);

    LDerivativeTable table;
    if (use_cache && !cfg.cache_dir.empty()) {
        LValueCache cache(cfg.cache_dir);
        table = cache.table(f, m, cfg.P);
    } else {
        table = critical_table(f, m, cfg.P);
    }
    PeriodPolynomial poly = (part == "full") ? full_polynomial(table) : odd_part(table);
    auto roots = find_roots(poly.c, cfg.P);
    Real tol = cfg.tolerance();
    RootReport rep = classify(roots, tol);

    PrecisionGuard guard(cfg.P);
    unsigned digits = report_digits(cfg);
    Real pi = pi_real();

    json rj = json::array();
    std::string csv = "re,im,modulus,argument-degrees,error-radius,classification\n";
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const Complex& z = roots[i].z;
        Real mod = abs_c(z);
        Real deg = arg_c(z) * 180 / pi;
        std::string lab = label_str(rep.labels[i]);
        json e;
        e["re"] = dstr(z.re, digits);
        e["im"] = dstr(z.im, digits);
        e["modulus"] = dstr(mod, digits);
        e["argument-degrees"] = dstr(deg, digits);
        e["error-radius"] = dstr(roots[i].err, 8);
        e["classification"] = lab;
        rj.push_back(e);
        csv += dstr(z.re, digits) + "," + dstr(z.im, digits) + "," + dstr(mod, digits) +
               "," + dstr(deg, digits) + "," + dstr(roots[i].err, 8) + "," + lab + "\n";
    }

    // violated only when a root sits beyond every permitted locus by more
    // than tolerance plus its own error radius
    std::string verdict = "holds-within-tolerance";
    int code = 0;
    if (rep.n_unclassified > 0) {
        bool viol = false;
        for (std::size_t i = 0; i < roots.size(); ++i) {
            if (rep.labels[i] != RootLabel::unclassified) continue;
            Real d = fabs(abs_c(roots[i].z) - 1);
            if (part == "odd") {
                Real d0 = abs_c(roots[i].z);
                Real dax = fabs(roots[i].z.im);
                if (d0 < d) d = d0;
                if (dax < d) d = dax;
            }
            if (d > tol + roots[i].err) viol = true;
        }
        verdict = viol ? "violated" : "inconclusive";
        code = viol ? 2 : 1;
    }

    json pj;
    pj["kind"] = part == "full" ? "full" : "odd";
    pj["degree"] = poly.c.empty() ? 0 : (unsigned)poly.c.size() - 1;
    json pc = json::array();
    for (const auto& c : poly.c) {
        json cc;
        cc["re"] = dstr(c.re, digits);
        cc["im"] = dstr(c.im, digits);
        pc.push_back(cc);
    }
    pj["coefficients"] = pc;

    json certs = json::array();
    if (kind == FormKind::eisenstein && part == "odd" && k % 4 == 0) {
        QDecomposition qd = q_decompose(poly);
        certs.push_back(certificate_json(ek_certificate(qd.q, Real(0)), 12));
    }

    json rep_json;
    rep_json["schema"] = 1;
    rep_json["command"] = "verify";
    rep_json["version"] = kVersion;
    rep_json["form"] = form_id(f.spec);
    rep_json["digest"] = coefficient_digest(f);
    rep_json["weight"] = k;
    rep_json["kind"] = kind_str(kind);
    rep_json["index"] = index;
    rep_json["deriv"] = m;
    rep_json["part"] = part;
    rep_json["precision-bits"] = cfg.P;
    rep_json["tolerance"] = cfg.tol_str;
    rep_json["truncation"] = f.a.size() - 1;
    rep_json["fe-residual"] = dstr(table.fe_residual, 8);
    rep_json["polynomial"] = pj;
    rep_json["roots"] = rj;
    json counts;
    counts["origin"] = rep.n_origin;
    counts["circle"] = rep.n_circle;
    counts["quadruple"] = rep.n_quadruple;
    counts["unclassified"] = rep.n_unclassified;
    rep_json["counts"] = counts;
    rep_json["a"] = dstr(rep.a, digits);
    rep_json["max-circle-deviation"] = dstr(rep.max_circle_dev, 8);
    rep_json["ambiguous"] = rep.ambiguous;
    rep_json["certificates"] = certs;
    rep_json["verdict"] = verdict;
    if (cfg.timing) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0).count();
        rep_json["timing-ms"] = (long long)ms;
    }

    return ItemResult{std::move(rep_json), std::move(csv), code};
}

int cmd_coeffs(const RunConfig& cfg, unsigned k, const std::string& kind_s,
               unsigned index, unsigned long count) {
    if (count < 1) {
        std::fprintf(stderr, "coeffs: --count must be at least 1\n");
        return 1;
    }
    FormKind kind = parse_kind(kind_s);
    RunConfig local = cfg;
    if (!local.truncation)
        local.truncation = std::max<unsigned long>(count - 1, 16);
    FourierCoefficients f = build_form(local, k, kind, index, 1.0);

    unsigned digits = report_digits(cfg);
    json j;
    j["schema"] = 1;
    j["command"] = "coeffs";
    j["version"] = kVersion;
    j["form"] = form_id(f.spec);
    j["weight"] = k;
    j["kind"] = kind_s;
    j["index"] = index;
    j["precision-bits"] = cfg.P;
    json arr = json::array();
    std::string csv = "n,value\n";
    for (unsigned long n = 0; n < count; ++n) {
        arr.push_back(dstr(f.a[n], digits));
        csv += std::to_string(n) + "," + dstr(f.a[n], digits) + "\n";
    }
    j["coefficients"] = arr;
    return emit(cfg, j, csv);
}

int cmd_lvalues(const RunConfig& cfg, unsigned k, const std::string& kind_s,
                unsigned index, unsigned m) {
    FormKind kind = parse_kind(kind_s);
    FourierCoefficients f = build_form(cfg, k, kind, index, 1.0);
    LValueCache cache(cfg.cache_dir);
    LDerivativeTable t = cache.table(f, m, cfg.P);

    unsigned digits = report_digits(cfg);
    json j;
    j["schema"] = 1;
    j["command"] = "lvalues";
    j["version"] = kVersion;
    j["form"] = form_id(f.spec);
    j["digest"] = coefficient_digest(f);
    j["weight"] = k;
    j["kind"] = kind_s;
    j["index"] = index;
    j["deriv"] = m;
    j["precision-bits"] = cfg.P;
    j["fe-residual"] = dstr(t.fe_residual, 8);
    json vals = json::array();
    std::string csv = "s,re,im,error,route\n";
    for (unsigned n = 0; n < t.values.size(); ++n) {
        std::string route = t.routes[n] == LRoute::mellin ? "mellin" : "closed-form";
        json e;
        e["s"] = n + 1;
        e["re"] = dstr(t.values[n].re, digits);
        e["im"] = dstr(t.values[n].im, digits);
        e["error"] = dstr(t.errors[n], 8);
        e["route"] = route;
        vals.push_back(e);
        csv += std::to_string(n + 1) + "," + dstr(t.values[n].re, digits) + "," +
               dstr(t.values[n].im, digits) + "," + dstr(t.errors[n], 8) + "," +
               route + "\n";
    }
    j["values"] = vals;
    return emit(cfg, j, csv);
}

int cmd_poly(const RunConfig& cfg, unsigned k, const std::string& kind_s,
             unsigned index, unsigned m, const std::string& part) {
    PeriodPolynomial poly;
    std::string source;
    if (part == "tilde") {
        poly = tilde_odd_part(k, m, cfg.P);
        source = poly.source;
    } else {
        FormKind kind = parse_kind(kind_s);
        FourierCoefficients f = build_form(cfg, k, kind, index, 1.0);
        LValueCache cache(cfg.cache_dir);
        LDerivativeTable t = cache.table(f, m, cfg.P);
        poly = part == "full" ? full_polynomial(t) : odd_part(t);
        source = poly.source;
    }

    unsigned digits = report_digits(cfg);
    json j;
    j["schema"] = 1;
    j["command"] = "poly";
    j["version"] = kVersion;
    j["source"] = source;
    j["weight"] = k;
    j["deriv"] = m;
    j["part"] = part;
    j["precision-bits"] = cfg.P;
    j["degree"] = poly.c.empty() ? 0 : (unsigned)poly.c.size() - 1;
    json arr = json::array();
    std::string csv = "degree,re,im\n";
    for (std::size_t d = 0; d < poly.c.size(); ++d) {
        json e;
        e["re"] = dstr(poly.c[d].re, digits);
        e["im"] = dstr(poly.c[d].im, digits);
        arr.push_back(e);
        csv += std::to_string(d) + "," + dstr(poly.c[d].re, digits) + "," +
               dstr(poly.c[d].im, digits) + "\n";
    }
    j["coefficients"] = arr;
    return emit(cfg, j, csv);
}

int cmd_verify(const RunConfig& cfg, unsigned k, const std::string& kind_s,
               unsigned index, unsigned m, const std::string& part) {
    ItemResult r = run_verify_item(cfg, k, parse_kind(kind_s), index, m, part, true);
    int rc = emit(cfg, r.report, r.csv);
    return rc ? 1 : r.code;
}

int cmd_certify(const RunConfig& cfg, unsigned k, unsigned m) {
    if (k % 4 != 0 || k < 8) {
        std::fprintf(stderr, "certify: weight must be a multiple of 4, k >= 8\n");
        return 1;
    }
    FourierCoefficients f = build_form(cfg, k, FormKind::eisenstein, 0, 1.0);
    LValueCache cache(cfg.cache_dir);
    LDerivativeTable t = cache.table(f, m, cfg.P);
    QDecomposition qd = q_decompose(odd_part(t));

    std::vector<Certificate> certs;
    certs.push_back(ek_certificate(qd.q, Real(0)));
    certs.push_back(monotonicity_certificate(k, std::max(1u, m), Real(1) / 4, cfg.P));
    certs.push_back(coefficient_factor_certificate(k, cfg.P));

    bool all = true;
    json arr = json::array();
    std::string csv = "kind,subject,pass,values,diffs\n";
    for (const auto& c : certs) {
        all = all && c.pass;
        arr.push_back(certificate_json(c, 12));
        csv += cert_kind_str(c.kind) + "," + c.subject + "," +
               (c.pass ? "pass" : "fail") + "," + std::to_string(c.values.size()) +
               "," + std::to_string(c.diffs.size()) + "\n";
    }
    json j;
    j["schema"] = 1;
    j["command"] = "certify";
    j["version"] = kVersion;
    j["form"] = form_id(f.spec);
    j["weight"] = k;
    j["deriv"] = m;
    j["precision-bits"] = cfg.P;
    j["q-residual"] = dstr(qd.residual, 8);
    j["certificates"] = arr;
    j["all-pass"] = all;
    int rc = emit(cfg, j, csv);
    return rc ? 1 : (all ? 0 : 2);
}

int cmd_cocycle_check(const RunConfig& cfg, unsigned k, const std::string& kind_s,
                      unsigned index, unsigned m, const std::string& thresh_str) {
    FormKind kind = parse_kind(kind_s);
    FourierCoefficients f = build_form(cfg, k, kind, index, 0.3);
    std::vector<Complex> zs{Complex(0, 2), Complex(1, 2), Complex(-1, 3)};
    Real r = verify_value_formula(f, m, zs, cfg.P);

    PrecisionGuard guard(cfg.P);
    Real thresh(thresh_str);
    bool pass = r <= thresh;
    json j;
    j["schema"] = 1;
    j["command"] = "cocycle-check";
    j["version"] = kVersion;
    j["form"] = form_id(f.spec);
    j["weight"] = k;
    j["kind"] = kind_s;
    j["index"] = index;
    j["deriv"] = m;
    j["precision-bits"] = cfg.P;
    json samples = json::array();
    for (const auto& z : zs) {
        json e;
        e["re"] = dstr(z.re, 8);
        e["im"] = dstr(z.im, 8);
        samples.push_back(e);
    }
    j["samples"] = samples;
    j["residual"] = dstr(r, 12);
    j["threshold"] = thresh_str;
    j["pass"] = pass;
    std::string csv = "residual,threshold,pass\n" + dstr(r, 12) + "," + thresh_str +
                      "," + (pass ? "pass" : "fail") + "\n";
    int rc = emit(cfg, j, csv);
    return rc ? 1 : (pass ? 0 : 2);
}

struct ScanItem {
    unsigned k = 0;
    FormKind kind = FormKind::cusp_eigenform;
    unsigned index = 0;
    unsigned m = 0;
};

json scan_entry_from_report(const json& rep) {
    json e;
    for (const char* key : {"form", "weight", "kind", "index", "deriv", "part",
                            "verdict", "a", "max-circle-deviation", "fe-residual"})
        e[key] = rep.at(key);
    e["counts"] = rep.at("counts");
    return e;
}

std::string self_exe() {
    std::error_code ec;
    auto p = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (!ec) return p.string();
    return "ppoly";
}

// phase 1 runs the items (in worker processes when jobs > 1, each process
// single-threaded so the shared mpfr precision state stays coherent);
// phase 2 assembles the summary in deterministic item order
int cmd_scan(const RunConfig& cfg, unsigned kmin, unsigned kmax, unsigned mmax,
             const std::string& kinds, const std::string& part) {
    std::vector<ScanItem> items;
    for (unsigned k = kmin + (kmin % 2); k <= kmax; k += 2) {
        if ((kinds == "eisenstein" || kinds == "both") && k >= 4)
            for (unsigned m = 0; m <= mmax; ++m)
                items.push_back({k, FormKind::eisenstein, 0, m});
        if (kinds == "cusp" || kinds == "both")
            for (unsigned idx = 0; idx < cusp_dim(k); ++idx)
                for (unsigned m = 0; m <= mmax; ++m)
                    items.push_back({k, FormKind::cusp_eigenform, idx, m});
    }

    std::vector<json> reports(items.size());
    std::vector<int> codes(items.size(), 1);
    unsigned errors = 0;

    if (cfg.jobs <= 1 || items.size() <= 1) {
        for (std::size_t i = 0; i < items.size(); ++i) {
            try {
                ItemResult r = run_verify_item(cfg, items[i].k, items[i].kind,
                                               items[i].index, items[i].m, part, false);
                reports[i] = std::move(r.report);
                codes[i] = r.code;
            } catch (const std::exception& e) {
                std::fprintf(stderr, "scan: item failed: %s\n", e.what());
                codes[i] = -1;
                ++errors;
            }
        }
    } else {
        std::string exe = self_exe();
        auto dir = std::filesystem::temp_directory_path() /
                   ("ppoly-scan-" + std::to_string((long)::getpid()));
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);

        auto spawn = [&](std::size_t i) -> pid_t {
            std::string out = (dir / ("item" + std::to_string(i) + ".json")).string();
            std::vector<std::string> args{
                exe, "verify",
                "--weight", std::to_string(items[i].k),
                "--kind", kind_str(items[i].kind),
                "--index", std::to_string(items[i].index),
                "--deriv", std::to_string(items[i].m),
                "--part", part,
                "--precision-bits", std::to_string(cfg.P),
                "--tolerance", cfg.tol_str,
                "--cache-dir", "",
                "--format", "json",
                "--output", out};
            if (cfg.truncation) {
                args.push_back("--truncation");
                args.push_back(std::to_string(cfg.truncation));
            }
            std::vector<char*> argv;
            for (auto& a : args) argv.push_back(a.data());
            argv.push_back(nullptr);
            pid_t pid = ::fork();
            if (pid == 0) {
                ::execv(exe.c_str(), argv.data());
                std::_Exit(127);
            }
            return pid;
        };

        std::map<pid_t, std::size_t> live;
        std::size_t next = 0;
        while (next < items.size() || !live.empty()) {
            while (live.size() < cfg.jobs && next < items.size()) {
                pid_t p = spawn(next);
                if (p < 0) {
                    codes[next] = -1;
                    ++errors;
                } else {
                    live[p] = next;
                }
                ++next;
            }
            if (live.empty()) continue;
            int st = 0;
            pid_t done = ::waitpid(-1, &st, 0);
            auto it = live.find(done);
            if (it == live.end()) continue;
            std::size_t idx = it->second;
            live.erase(it);
            codes[idx] = (WIFEXITED(st) && WEXITSTATUS(st) != 127 &&
                          WEXITSTATUS(st) != 1) ? (int)WEXITSTATUS(st) : -1;
        }

        for (std::size_t i = 0; i < items.size(); ++i) {
            if (codes[i] < 0) {
                ++errors;
                continue;
            }
            std::ifstream in(dir / ("item" + std::to_string(i) + ".json"));
            if (!in) {
                codes[i] = -1;
                ++errors;
                continue;
            }
            try {
                in >> reports[i];
            } catch (const std::exception&) {
                codes[i] = -1;
                ++errors;
            }
        }
        std::filesystem::remove_all(dir, ec);
    }

    unsigned holds = 0, violated = 0, inconclusive = 0;
    json arr = json::array();
    std::string csv = "weight,kind,index,deriv,verdict,a\n";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (codes[i] < 0) {
            json e;
            e["weight"] = items[i].k;
            e["kind"] = kind_str(items[i].kind);
            e["index"] = items[i].index;
            e["deriv"] = items[i].m;
            e["verdict"] = "error";
            arr.push_back(e);
            csv += std::to_string(items[i].k) + "," + kind_str(items[i].kind) + "," +
                   std::to_string(items[i].index) + "," + std::to_string(items[i].m) +
                   ",error,\n";
            continue;
        }
        if (codes[i] == 0) ++holds;
        else if (codes[i] == 2) ++violated;
        else ++inconclusive;
        json e = scan_entry_from_report(reports[i]);
        arr.push_back(e);
        csv += std::to_string(items[i].k) + "," + kind_str(items[i].kind) + "," +
               std::to_string(items[i].index) + "," + std::to_string(items[i].m) +
               "," + e.at("verdict").get<std::string>() + "," +
               e.at("a").get<std::string>() + "\n";
    }

    // spread of the off-circle quadruple member across eigenforms at (k, m)
    json aeq = json::array();
    {
        PrecisionGuard guard(cfg.P);
        std::map<std::pair<unsigned, unsigned>, std::vector<Real>> groups;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (codes[i] < 0 || items[i].kind != FormKind::cusp_eigenform) continue;
            Real a(reports[i].at("a").get<std::string>());
            if (a > 0) groups[{items[i].k, items[i].m}].push_back(a);
        }
        for (const auto& [key, as] : groups) {
            if (as.size() < 2) continue;
            Real lo = as[0], hi = as[0];
            for (const auto& a : as) {
                if (a < lo) lo = a;
                if (a > hi) hi = a;
            }
            json e;
            e["weight"] = key.first;
            e["deriv"] = key.second;
            e["forms"] = as.size();
            e["spread"] = dstr(hi - lo, 12);
            aeq.push_back(e);
        }
    }

    json j;
    j["schema"] = 1;
    j["command"] = "scan";
    j["version"] = kVersion;
    j["weight-min"] = kmin;
    j["weight-max"] = kmax;
    j["deriv-max"] = mmax;
    j["kind"] = kinds;
    j["part"] = part;
    j["precision-bits"] = cfg.P;
    j["tolerance"] = cfg.tol_str;
    j["items"] = arr;
    j["a-equality"] = aeq;
    json summary;
    summary["total"] = items.size();
    summary["holds"] = holds;
    summary["violated"] = violated;
    summary["inconclusive"] = inconclusive;
    summary["errors"] = errors;
    j["summary"] = summary;

    int rc = emit(cfg, j, csv);
    if (rc) return 1;
    if (violated) return 2;
    if (inconclusive || errors) return 1;
    return 0;
}

int cmd_cache(const RunConfig& cfg, bool do_gc) {
    if (cfg.cache_dir.empty()) {
        std::fprintf(stderr, "cache: no cache directory configured\n");
        return 1;
    }
    LValueCache cache(cfg.cache_dir);
    json j;
    j["schema"] = 1;
    j["version"] = kVersion;
    j["directory"] = cfg.cache_dir;
    if (do_gc) {
        std::size_t dropped = cache.gc();
        auto st = cache.stat();
        j["command"] = "cache-gc";
        j["dropped"] = dropped;
        j["records"] = st.records;
        std::string csv = "dropped,records\n" + std::to_string(dropped) + "," +
                          std::to_string(st.records) + "\n";
        return emit(cfg, j, csv);
    }
    auto st = cache.stat();
    j["command"] = "cache-stat";
    j["records"] = st.records;
    j["bytes"] = st.bytes;
    j["corrupt"] = st.corrupt;
    std::string csv = "records,bytes,corrupt\n" + std::to_string(st.records) + "," +
                      std::to_string(st.bytes) + "," + std::to_string(st.corrupt) + "\n";
    return emit(cfg, j, csv);
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    if (const char* env = std::getenv("PPOLY_CACHE_DIR")) cfg.cache_dir = env;

    CLI::App app{"period polynomial verification toolkit"};
    app.set_version_flag("--version", std::string(kVersion));
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--precision-bits", cfg.P, "working precision in bits (>= 64)")
        ->capture_default_str();
    app.add_option("--tolerance", cfg.tol_str, "classification tolerance, in (0, 1e-4)")
        ->capture_default_str();
    app.add_option("--truncation", cfg.truncation, "coefficient truncation override");
    app.add_option("--cache-dir", cfg.cache_dir,
                   "value cache directory (default $PPOLY_CACHE_DIR)");
    app.add_option("--jobs", cfg.jobs, "scan worker processes")->capture_default_str();
    app.add_option("--format", cfg.format, "report format")
        ->check(CLI::IsMember({"json", "csv", "both"}))
        ->capture_default_str();
    app.add_option("--output", cfg.output, "write report(s) to this path");
    app.add_flag("--timing", cfg.timing, "include elapsed time in reports");

    unsigned k = 12, index = 0, m = 0, kmin = 12, kmax = 12, mmax = 0;
    unsigned long count = 10;
    std::string kind = "cusp", part = "full", scan_part = "full", scan_kind = "cusp";
    std::string thresh = "1e-10";

    auto* c_coeffs = app.add_subcommand("coeffs", "print Fourier coefficients");
    c_coeffs->add_option("--weight", k)->required();
    c_coeffs->add_option("--kind", kind)->check(CLI::IsMember({"cusp", "eisenstein"}));
    c_coeffs->add_option("--index", index);
    c_coeffs->add_option("--count", count)->required();

    auto* c_lv = app.add_subcommand("lvalues", "critical derivative table");
    c_lv->add_option("--weight", k)->required();
    c_lv->add_option("--kind", kind)->check(CLI::IsMember({"cusp", "eisenstein"}));
    c_lv->add_option("--index", index);
    c_lv->add_option("--deriv", m);

    auto* c_poly = app.add_subcommand("poly", "period polynomial coefficients");
    c_poly->add_option("--weight", k)->required();
    c_poly->add_option("--kind", kind)->check(CLI::IsMember({"cusp", "eisenstein"}));
    c_poly->add_option("--index", index);
    c_poly->add_option("--deriv", m);
    c_poly->add_option("--part", part)->check(CLI::IsMember({"full", "odd", "tilde"}));

    auto* c_verify = app.add_subcommand("verify", "root report and conjecture verdict");
    c_verify->add_option("--weight", k)->required();
    c_verify->add_option("--kind", kind)->check(CLI::IsMember({"cusp", "eisenstein"}));
    c_verify->add_option("--index", index);
    c_verify->add_option("--deriv", m);
    c_verify->add_option("--part", part)->check(CLI::IsMember({"full", "odd"}));

    auto* c_scan = app.add_subcommand("scan", "verify a weight/derivative range");
    c_scan->add_option("--weight-min", kmin)->required();
    c_scan->add_option("--weight-max", kmax)->required();
    c_scan->add_option("--deriv-max", mmax);
    c_scan->add_option("--kind", scan_kind)
        ->check(CLI::IsMember({"cusp", "eisenstein", "both"}));
    c_scan->add_option("--part", scan_part)->check(CLI::IsMember({"full", "odd"}));

    auto* c_cert = app.add_subcommand("certify", "eisenstein certificate bundle");
    c_cert->add_option("--weight", k)->required();
    c_cert->add_option("--deriv", m);

    auto* c_cc = app.add_subcommand("cocycle-check", "value-formula residuals");
    c_cc->add_option("--weight", k)->required();
    c_cc->add_option("--kind", kind)->check(CLI::IsMember({"cusp", "eisenstein"}));
    c_cc->add_option("--index", index);
    c_cc->add_option("--deriv", m);
    c_cc->add_option("--threshold", thresh);

    auto* c_cache = app.add_subcommand("cache", "value cache maintenance");
    auto* c_gc = c_cache->add_subcommand("gc", "drop superseded records");
    auto* c_stat = c_cache->add_subcommand("stat", "cache statistics");
    c_cache->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (cfg.P < 64) {
            std::fprintf(stderr, "precision must be at least 64 bits\n");
            return 1;
        }
        {
            PrecisionGuard guard(cfg.P);
            Real t(cfg.tol_str);
            if (!(t > 0) || !(t < Real("1e-4"))) {
                std::fprintf(stderr, "tolerance must lie in (0, 1e-4)\n");
                return 1;
            }
        }
        if (c_coeffs->parsed()) return cmd_coeffs(cfg, k, kind, index, count);
        if (c_lv->parsed()) return cmd_lvalues(cfg, k, kind, index, m);
        if (c_poly->parsed()) return cmd_poly(cfg, k, kind, index, m, part);
        if (c_verify->parsed()) return cmd_verify(cfg, k, kind, index, m, part);
        if (c_scan->parsed()) return cmd_scan(cfg, kmin, kmax, mmax, scan_kind, scan_part);
        if (c_cert->parsed()) return cmd_certify(cfg, k, m);
        if (c_cc->parsed()) return cmd_cocycle_check(cfg, k, kind, index, m, thresh);
        if (c_cache->parsed()) return cmd_cache(cfg, c_gc->parsed() && !c_stat->parsed());
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    std::fprintf(stderr, "no command given\n");
    return 1;
}
