#pragma once

// Command-line front end: catalog browsing, single-shot analyses, subsequence
// diagnostics, and experiment execution from config files.
//
// Exit codes: 0 success, 1 config/validation error, 2 numeric-domain error.
// Reports are JSON objects {config, results, diagnostics}; every experiment
// report embeds the semantic config it ran from, and re-running from that
// embedded config reproduces the report byte for byte.

#include <complex>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "efg/coeffs.hpp"
#include "efg/errors.hpp"
#include "efg/experiments.hpp"
#include "efg/growth.hpp"
#include "efg/recenter.hpp"
#include "efg/report_io.hpp"
#include "efg/subseq.hpp"

namespace efg::cli {

using nlohmann::json;

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error("ConfigError", what) {}
};

// ---------------------------------------------------------------------------
// Small parsers
// ---------------------------------------------------------------------------

// Complex literals like "1+0.5i", "-2i", "3", "0.5-1e-3i".
inline std::complex<double> parse_complex(const std::string& s) {
    if (s.empty()) throw ConfigError("empty complex literal");
    double re = 0.0, im = 0.0;
    std::string t = s;
    if (t.back() == 'i' || t.back() == 'I') {
        t.pop_back();
        // split into real part and imaginary coefficient at the last +/- that
        // is not an exponent sign
        std::size_t split = std::string::npos;
        for (std::size_t i = t.size(); i-- > 1;) {
            if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        try {
            if (split == std::string::npos) {
                im = t.empty() ? 1.0 : std::stod(t);
            } else {
                re = std::stod(t.substr(0, split));
                std::string imp = t.substr(split);
                if (imp == "+") im = 1.0;
                else if (imp == "-") im = -1.0;
                else im = std::stod(imp);
            }
        } catch (const std::exception&) {
            throw ConfigError("malformed complex literal: " + s);
        }
    } else {
        try {
            re = std::stod(t);
        } catch (const std::exception&) {
            throw ConfigError("malformed complex literal: " + s);
        }
    }
    return {re, im};
}

inline Window parse_window(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ConfigError("window must be LO:HI");
    try {
        return Window{std::stol(s.substr(0, colon)), std::stol(s.substr(colon + 1))};
    } catch (const std::exception&) {
        throw ConfigError("malformed window: " + s);
    }
}

inline std::vector<double> parse_double_list(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= s.size() && !s.empty()) {
        auto comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        try {
            out.push_back(std::stod(s.substr(pos, comma - pos)));
        } catch (const std::exception&) {
            throw ConfigError("malformed number list: " + s);
        }
        pos = comma + 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// rho policy
// ---------------------------------------------------------------------------

struct RhoPolicy {
    enum class Kind { ground_truth, regression, explicit_value } kind = Kind::ground_truth;
    double value = 0.0; // explicit only
};

inline RhoPolicy parse_rho_policy(const std::string& kind, std::optional<double> value) {
    RhoPolicy p;
    if (kind == "ground_truth") p.kind = RhoPolicy::Kind::ground_truth;
    else if (kind == "regression") p.kind = RhoPolicy::Kind::regression;
    else if (kind == "explicit") {
        p.kind = RhoPolicy::Kind::explicit_value;
        if (!value) throw ConfigError("rho policy 'explicit' requires a value");
        p.value = *value;
    } else {
        throw ConfigError("unknown rho policy: " + kind + " (expected ground_truth|regression|explicit)");
    }
    return p;
}

// Resolve the rho that feeds type-style estimators.  Explicit values outside
// (0, inf) are a numeric-domain error (exit 2), matching the estimators.
inline double resolve_rho(const RhoPolicy& p, const CoefficientSource& src, Window reg_window) {
    switch (p.kind) {
        case RhoPolicy::Kind::explicit_value:
            if (!(p.value > 0.0) || !std::isfinite(p.value))
                throw RhoOutOfRange("explicit rho must lie in (0, inf)");
            return p.value;
        case RhoPolicy::Kind::ground_truth: {
            if (!src.ground_truth)
                throw RhoOutOfRange("source has no ground-truth order; use --rho-policy regression or explicit");
            const double rho = src.ground_truth->order;
            if (!(rho > 0.0) || !std::isfinite(rho))
                throw RhoOutOfRange("ground-truth order is 0 or infinite; the type is not defined");
            return rho;
        }
        case RhoPolicy::Kind::regression:
            return order_regression(src, reg_window).value;
    }
    throw ConfigError("unreachable rho policy");
}

inline json rho_policy_json(const RhoPolicy& p) {
    json j;
    switch (p.kind) {
        case RhoPolicy::Kind::ground_truth: j["kind"] = "ground_truth"; break;
        case RhoPolicy::Kind::regression: j["kind"] = "regression"; break;
        case RhoPolicy::Kind::explicit_value:
            j["kind"] = "explicit";
            j["value"] = p.value;
            break;
    }
    return j;
}

// ---------------------------------------------------------------------------
// JSON serialization of library results
// ---------------------------------------------------------------------------

inline json to_json(const GrowthEstimate& e) {
    json j;
    j["value"] = e.value;
    j["window"] = {e.window.lo, e.window.hi};
    j["method"] = e.method == GrowthEstimate::Method::window_sup ? "window_sup" : "regression";
    j["bias_note"] = e.bias_note;
    if (e.skipped_nonpositive > 0) j["skipped_nonpositive"] = e.skipped_nonpositive;
    return j;
}

inline json to_json(const SubseqEstimate& e) {
    json j;
    j["value"] = e.value;
    j["k_window"] = {e.k_window.k_lo, e.k_window.k_hi};
    j["z"] = {e.z.real(), e.z.imag()};
    j["skipped"] = e.skipped_ambiguous + e.zero_terms;
    j["skipped_ambiguous"] = e.skipped_ambiguous;
    j["zero_terms"] = e.zero_terms;
    return j;
}

inline std::string series_csv(const SubseqEstimate& e) {
    std::string out = "k,n_k,term\n";
    for (const auto& [k, n, term] : e.series)
        out += csv_join({std::to_string(k), std::to_string(n), fmt_double(term)});
    return out;
}

inline std::string series_csv(const GrowthEstimate& e) {
    std::string out = "n,term\n";
    for (const auto& [n, term] : e.series)
        out += csv_join({std::to_string(n), fmt_double(term)});
    return out;
}

// ---------------------------------------------------------------------------
// Command: catalog
// ---------------------------------------------------------------------------

inline json catalog_json() {
    json arr = json::array();
    for (const auto& e : catalog_listing()) {
        json j;
        j["id"] = e.id;
        j["params"] = e.params;
        j["ground_truth"] = e.ground_truth;
        j["exact_derivative"] = e.has_exact_derivative;
        arr.push_back(j);
    }
    return arr;
}

inline int cmd_catalog(bool json_mode, std::string* out_text) {
    std::string text;
    if (json_mode) {
        text = catalog_json().dump(2);
        text += '\n';
    } else {
        for (const auto& e : catalog_listing()) {
            text += e.id;
            if (!e.params.empty()) text += " [" + e.params + "]";
            text += " -- " + e.ground_truth;
            if (e.has_exact_derivative) text += " (exact derivative)";
            text += '\n';
        }
    }
    if (out_text) *out_text = text;
    else std::fputs(text.c_str(), stdout);
    return 0;
}

// ---------------------------------------------------------------------------
// Command: analyze
// ---------------------------------------------------------------------------

struct AnalyzeConfig {
    std::string source;
    Window window{1000, 2000};
    RhoPolicy rho_policy;
    std::vector<double> r_grid; // empty -> auto
    std::string method = "both"; // sup|regression|both
    std::string out_path;       // empty -> stdout
    std::string csv_path;       // optional diagnostic series
    unsigned threads = 1;
};

// One-decade geometric grid sized so that ln g#(r_max) lands near a fixed
// budget (~400) for a source of the hinted order; keeps the series lengths
// desk-scale for any catalog order.
inline std::vector<double> auto_r_grid(double rho_hint) {
    const double rho = std::min(std::max(rho_hint, 0.25), 8.0);
    const double r_max = std::min(1.0e6, std::max(10.0, std::pow(400.0 * std::exp(1.0) * rho, 1.0 / rho)));
    const double f = std::pow(10.0, 1.0 / 3.0);
    return {r_max / 10.0, r_max / 10.0 * f, r_max / f, r_max};
}

inline int cmd_analyze(const AnalyzeConfig& cfg, std::string* out_text = nullptr) {
    json config;
    config["command"] = "analyze";
    config["source"] = cfg.source;
    config["window"] = {cfg.window.lo, cfg.window.hi};
    config["rho_policy"] = rho_policy_json(cfg.rho_policy);
    config["method"] = cfg.method;
    json results;
    json diagnostics;
    int exit_code = 0;
    const bool want_sup = cfg.method == "both" || cfg.method == "sup";
    const bool want_reg = cfg.method == "both" || cfg.method == "regression";
    if (!want_sup && !want_reg)
        throw ConfigError("method must be sup|regression|both");

    CoefficientSource src;
    try {
        src = catalog(cfg.source);
    } catch (const Error& e) {
        json report{{"config", config}, {"error", e.name()}, {"message", e.what()}};
        const std::string text = report.dump(2) + "\n";
        if (out_text) *out_text = text;
        else std::fputs(text.c_str(), stdout);
        return 2;
    }

    // Order, window sup.  An empty window on a source with a polynomial-like
    // tail reports order 0 by convention instead of failing.
    std::optional<GrowthEstimate> order_sup;
    try {
        if (want_sup) {
            order_sup = order_from_coeffs(src, cfg.window);
            results["order_window_sup"] = to_json(*order_sup);
        }
    } catch (const EmptyWindow& e) {
        const bool polynomial_like =
            src.ground_truth && src.ground_truth->order == 0.0;
        if (polynomial_like) {
            results["order_window_sup"] = {{"value", 0.0},
                                           {"window", {cfg.window.lo, cfg.window.hi}},
                                           {"method", "window_sup"},
                                           {"bias_note", "all window coefficients zero; polynomial convention order 0"}};
        } else {
            results["order_window_sup"] = {{"error", e.name()}, {"message", e.what()}};
            exit_code = 2;
        }
    } catch (const Error& e) {
        results["order_window_sup"] = {{"error", e.name()}, {"message", e.what()}};
        exit_code = 2;
    }

    std::optional<GrowthEstimate> order_reg;
    if (want_reg) {
        try {
            order_reg = order_regression(src, cfg.window);
            results["order_regression"] = to_json(*order_reg);
        } catch (const Error& e) {
            results["order_regression"] = {{"error", e.name()}, {"message", e.what()}};
        }
    }

    // rho for the type estimate, per policy.
    double rho_used = 0.0;
    bool type_defined = true;
    try {
        rho_used = resolve_rho(cfg.rho_policy, src, cfg.window);
    } catch (const RhoOutOfRange& e) {
        // Ground-truth rho = 0/inf means "the type is not defined": a valid
        // report, not an error.  Explicit bad rho is a caller error.
        if (cfg.rho_policy.kind == RhoPolicy::Kind::explicit_value) {
            results["type"] = {{"error", e.name()}, {"message", e.what()}};
            exit_code = 2;
            type_defined = false;
        } else {
            results["type"] = {{"defined", false}, {"reason", e.what()}};
            type_defined = false;
        }
    } catch (const Error& e) {
        results["type"] = {{"error", e.name()}, {"message", e.what()}};
        exit_code = 2;
        type_defined = false;
    }
    if (type_defined) {
        try {
            GrowthEstimate type = type_from_coeffs(src, rho_used, cfg.window);
            json tj = to_json(type);
            tj["rho_used"] = rho_used;
            results["type"] = tj;
        } catch (const Error& e) {
            results["type"] = {{"error", e.name()}, {"message", e.what()}};
            exit_code = 2;
        }
    }

    // theta normalization of the order estimate (regression when available).
    const double rho_hat = order_reg ? order_reg->value
                                     : (order_sup ? order_sup->value
                                                  : (src.ground_truth ? src.ground_truth->order : 0.0));
    try {
        results["theta"] = {{"value", theta_of_rho(rho_hat).theta}, {"rho_hat", rho_hat}};
    } catch (const Error& e) {
        results["theta"] = {{"error", e.name()}};
    }

    // Max-modulus cross-checks on the sharp majorant.
    const std::vector<double> grid = cfg.r_grid.empty() ? auto_r_grid(rho_hat) : cfg.r_grid;
    json grid_json = json::array();
    for (double r : grid) grid_json.push_back(r);
    diagnostics["r_grid"] = grid_json;
    try {
        results["order_max_modulus"] = to_json(order_from_max_modulus(src, grid));
    } catch (const Error& e) {
        results["order_max_modulus"] = {{"error", e.name()}, {"message", e.what()}};
    }
    if (type_defined) {
        try {
            results["type_max_modulus"] = to_json(type_from_max_modulus(src, rho_used, grid));
        } catch (const Error& e) {
            results["type_max_modulus"] = {{"error", e.name()}, {"message", e.what()}};
        }
    }

    json report{{"config", config}, {"results", results}, {"diagnostics", diagnostics}};
    const std::string text = report.dump(2) + "\n";
    if (!cfg.csv_path.empty() && order_sup) atomic_write_file(cfg.csv_path, series_csv(*order_sup));
    if (!cfg.out_path.empty()) atomic_write_file(cfg.out_path, text);
    if (out_text) *out_text = text;
    else if (cfg.out_path.empty()) std::fputs(text.c_str(), stdout);
    return exit_code;
}

// ---------------------------------------------------------------------------
// Command: subseq
// ---------------------------------------------------------------------------

struct SubseqConfig {
    std::string source;
    std::string nu;
    std::complex<double> z;
    index_t horizon = 2000;
    RhoPolicy rho_policy;
    std::string out_path;
    std::string csv_prefix;
};

inline int cmd_subseq(const SubseqConfig& cfg, std::string* out_text = nullptr) {
    json config;
    config["command"] = "subseq";
    config["source"] = cfg.source;
    config["nu"] = cfg.nu;
    config["z"] = {cfg.z.real(), cfg.z.imag()};
    config["horizon"] = cfg.horizon;
    config["rho_policy"] = rho_policy_json(cfg.rho_policy);
    json results;
    int exit_code = 0;
    try {
        const CoefficientSource src = catalog(cfg.source);
        const IndexSequence nu = parse_index_sequence(cfg.nu, cfg.horizon);
        const IndexSequence mu = complement(nu, cfg.horizon);
        const Window reg_w{std::max<index_t>(2, cfg.horizon / 2), cfg.horizon};
        double rho = 0.0;
        bool have_rho = true;
        try {
            rho = resolve_rho(cfg.rho_policy, src, reg_w);
        } catch (const RhoOutOfRange&) {
            have_rho = false;
        }

        auto part = [&](const IndexSequence& seq, const char* label) {
            json pj;
            KWindow kw;
            try {
                kw = default_k_window(seq, cfg.horizon);
            } catch (const Error& e) {
                pj["error"] = e.name();
                results[label] = pj;
                return;
            }
            try {
                SubseqEstimate e = rho_nu(src, seq, cfg.z, kw);
                pj["rho"] = to_json(e);
                if (!cfg.csv_prefix.empty())
                    atomic_write_file(cfg.csv_prefix + "." + label + ".rho.csv", series_csv(e));
            } catch (const Error& e) {
                pj["rho"] = {{"error", e.name()}};
            }
            try {
                SubseqEstimate e = theta_nu(src, seq, cfg.z, kw);
                pj["theta"] = to_json(e);
                if (!cfg.csv_prefix.empty())
                    atomic_write_file(cfg.csv_prefix + "." + label + ".theta.csv", series_csv(e));
            } catch (const Error& e) {
                pj["theta"] = {{"error", e.name()}};
            }
            if (have_rho) {
                try {
                    SubseqEstimate e = tau_nu(src, seq, cfg.z, rho, kw);
                    pj["tau"] = to_json(e);
                    if (!cfg.csv_prefix.empty())
                        atomic_write_file(cfg.csv_prefix + "." + label + ".tau.csv", series_csv(e));
                } catch (const Error& e) {
                    pj["tau"] = {{"error", e.name()}};
                }
            } else {
                pj["tau"] = {{"defined", false}, {"reason", "no usable rho (type undefined)"}};
            }
            results[label] = pj;
        };
        part(nu, "nu");
        part(mu, "mu");
        part(IndexSequence::naturals(), "full");

        if (have_rho) {
            const MaxIdentityReport idr = max_identity_check(src, nu, cfg.z, rho, cfg.horizon);
            json ij;
            ij["rho_ok"] = idr.rho_ok;
            ij["tau_ok"] = idr.tau_ok;
            auto put = [&](const char* key, const std::optional<double>& v) {
                if (v) ij[key] = *v;
                else ij[key] = nullptr;
            };
            put("rho_full", idr.rho_full);
            put("rho_nu", idr.rho_nu_part);
            put("rho_mu", idr.rho_mu_part);
            put("tau_full", idr.tau_full);
            put("tau_nu", idr.tau_nu_part);
            put("tau_mu", idr.tau_mu_part);
            ij["rho_used"] = rho;
            results["identity"] = ij;
        }
    } catch (const ConfigError& e) {
        json report{{"config", config}, {"error", e.name()}, {"message", e.what()}};
        const std::string text = report.dump(2) + "\n";
        if (out_text) *out_text = text;
        else std::fputs(text.c_str(), stdout);
        return 1;
    } catch (const Error& e) {
        json report{{"config", config}, {"error", e.name()}, {"message", e.what()}};
        const std::string text = report.dump(2) + "\n";
        if (out_text) *out_text = text;
        else std::fputs(text.c_str(), stdout);
        return 2;
    }
    json report{{"config", config}, {"results", results}, {"diagnostics", json::object()}};
    const std::string text = report.dump(2) + "\n";
    if (!cfg.out_path.empty()) atomic_write_file(cfg.out_path, text);
    if (out_text) *out_text = text;
    else if (cfg.out_path.empty()) std::fputs(text.c_str(), stdout);
    return exit_code;
}

} // namespace efg::cli
