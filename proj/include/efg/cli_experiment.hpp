#pragma once

// Experiment execution from JSON config files.  The semantic config is
// echoed verbatim into the report under "config"; execution details (thread
// count, output paths) stay out of the echo so re-runs are byte-identical
// regardless of parallelism.

#include <complex>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "efg/cli.hpp"
#include "efg/experiments.hpp"

namespace efg::cli {

namespace detail {

template <class T>
T require_field(const json& j, const std::string& key) {
    if (!j.contains(key))
        throw ConfigError("experiment config is missing required field \"" + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const std::exception&) {
        throw ConfigError("experiment config field \"" + key + "\" has the wrong type");
    }
}

template <class T>
T field_or(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const std::exception&) {
        throw ConfigError("experiment config field \"" + key + "\" has the wrong type");
    }
}

inline Disk parse_disk(const json& j, const std::string& key) {
    Disk d;
    d.cx = require_field<double>(j, "cx");
    d.cy = require_field<double>(j, "cy");
    d.radius = require_field<double>(j, "r");
    if (!(d.radius > 0.0)) throw ConfigError("field \"" + key + "\": radius must be positive");
    return d;
}

inline SamplingSpec parse_sampling(const json& j) {
    SamplingSpec spec;
    if (!j.contains("disk")) throw ConfigError("sampling spec is missing field \"disk\"");
    spec.region = parse_disk(j.at("disk"), "sampling.disk");
    const std::string mode = require_field<std::string>(j, "mode");
    if (mode == "uniform") {
        spec.mode = SamplingSpec::Mode::uniform;
        spec.count = require_field<std::uint64_t>(j, "count");
    } else if (mode == "grid") {
        spec.mode = SamplingSpec::Mode::grid;
        spec.grid_side = require_field<index_t>(j, "side");
    } else {
        throw ConfigError("sampling mode must be \"uniform\" or \"grid\"");
    }
    if (j.contains("explicit_points")) {
        for (const auto& p : j.at("explicit_points")) {
            if (!p.is_array() || p.size() != 2)
                throw ConfigError("explicit_points entries must be [re, im] pairs");
            spec.explicit_points.emplace_back(p[0].get<double>(), p[1].get<double>());
        }
    }
    return spec;
}

inline RhoPolicy parse_rho_policy_json(const json& cfg) {
    if (!cfg.contains("rho_policy")) return RhoPolicy{}; // ground_truth default
    const json& rp = cfg.at("rho_policy");
    std::optional<double> v;
    if (rp.contains("value")) v = rp.at("value").get<double>();
    return parse_rho_policy(require_field<std::string>(rp, "kind"), v);
}

inline json sample_record_json(const SampleRecord& r) {
    json j;
    j["z"] = {r.z.real(), r.z.imag()};
    if (r.structurally_empty) {
        j["structurally_empty"] = true;
    } else {
        j["value_nu"] = r.value_nu;
        j["value_full"] = r.value_full;
        j["gap"] = r.gap;
        j["exceptional"] = r.exceptional;
    }
    if (r.skipped_ambiguous > 0) j["skipped_ambiguous"] = r.skipped_ambiguous;
    return j;
}

inline json ae_report_json(const AeReport& rep) {
    json j;
    j["seed"] = rep.seed;
    j["exceptional_count"] = rep.exceptional_count;
    j["exceptional_fraction"] = rep.exceptional_fraction;
    j["structurally_empty_count"] = rep.structurally_empty_count;
    json arr = json::array();
    for (const auto& s : rep.samples) arr.push_back(sample_record_json(s));
    j["samples"] = arr;
    return j;
}

} // namespace detail

struct ExperimentOutput {
    json report;
    std::string csv;      // primary CSV artifact (curves / heat map), may be empty
    std::string csv_name; // suggested file name
    int exit_code = 0;
};

// Runs the experiment described by `config` (the semantic object, already
// stripped of any wrapping report).  Throws ConfigError for validation
// failures; numeric-domain errors surface as efg::Error.
inline ExperimentOutput run_experiment_config(const json& config, unsigned threads) {
    const std::string kind = detail::require_field<std::string>(config, "experiment");
    const std::string source_spec = detail::require_field<std::string>(config, "source");
    const std::string nu_spec = detail::require_field<std::string>(config, "nu");
    // Seed is mandatory for every experiment so reports are reproducible from
    // their config alone.
    const std::uint64_t seed = detail::require_field<std::uint64_t>(config, "seed");

    const CoefficientSource src = catalog(source_spec);
    ExperimentOutput out;
    json results;

    if (kind == "ae-order" || kind == "ae-type") {
        const index_t horizon = detail::field_or<index_t>(config, "horizon", 2000);
        if (!config.contains("sampling"))
            throw ConfigError("experiment config is missing required field \"sampling\"");
        SamplingSpec spec = detail::parse_sampling(config.at("sampling"));
        spec.seed = seed;
        const IndexSequence nu = parse_index_sequence(nu_spec, horizon);
        const KWindow kw = default_k_window(nu, horizon);
        AeReport rep;
        if (kind == "ae-order") {
            const double tol = detail::require_field<double>(config, "tol");
            rep = ae_order_experiment(src, nu, spec, kw, tol, threads);
        } else {
            const double tol_rel = detail::require_field<double>(config, "tol_rel");
            const RhoPolicy rp = detail::parse_rho_policy_json(config);
            const double rho = resolve_rho(rp, src, Window{std::max<index_t>(2, horizon / 2), horizon});
            rep = ae_type_experiment(src, nu, spec, rho, kw, tol_rel, threads);
        }
        results = detail::ae_report_json(rep);
        results["k_window"] = {kw.k_lo, kw.k_hi};
        // CSV: one row per sample
        std::string csv = "index,re,im,value_nu,value_full,gap,exceptional\n";
        for (std::size_t i = 0; i < rep.samples.size(); ++i) {
            const auto& s = rep.samples[i];
            csv += csv_join({std::to_string(i), fmt_double(s.z.real()), fmt_double(s.z.imag()),
                             fmt_double(s.value_nu), fmt_double(s.value_full), fmt_double(s.gap),
                             s.structurally_empty ? "empty" : (s.exceptional ? "1" : "0")});
        }
        out.csv = csv;
        out.csv_name = kind + "_samples.csv";
    } else if (kind == "gdelta") {
        if (!config.contains("disks")) throw ConfigError("gdelta config is missing field \"disks\"");
        std::vector<Disk> disks;
        for (const auto& dj : config.at("disks")) disks.push_back(detail::parse_disk(dj, "disks[]"));
        if (disks.empty()) throw ConfigError("gdelta config needs at least one disk");
        const std::vector<index_t> schedule =
            detail::require_field<std::vector<index_t>>(config, "k_schedule");
        const index_t per_disk = detail::field_or<index_t>(config, "samples_per_disk", 25);
        const RhoPolicy rp = detail::parse_rho_policy_json(config);
        const index_t horizon = detail::field_or<index_t>(config, "horizon", 2000);
        const double rho = resolve_rho(rp, src, Window{std::max<index_t>(2, horizon / 2), horizon});
        const IndexSequence nu = parse_index_sequence(nu_spec, horizon);
        const GdeltaReport rep = gdelta_probe(src, nu, disks, rho, schedule, seed, per_disk, threads);
        json darr = json::array();
        std::string csv = "disk,K,sup_sigma\n";
        for (std::size_t di = 0; di < rep.disks.size(); ++di) {
            const auto& d = rep.disks[di];
            json dj;
            dj["disk"] = {{"cx", d.disk.cx}, {"cy", d.disk.cy}, {"r", d.disk.radius}};
            dj["sup_at_schedule"] = d.sup_at_schedule;
            dj["growth_factor"] = d.growth_factor;
            dj["success"] = d.success;
            darr.push_back(dj);
            for (std::size_t t = 0; t < rep.schedule.size(); ++t)
                csv += csv_join({std::to_string(di), std::to_string(rep.schedule[t]),
                                 fmt_double(d.sup_at_schedule[t])});
        }
        results["disks"] = darr;
        results["schedule"] = rep.schedule;
        results["all_disks_success"] = rep.all_disks_success;
        results["seed"] = rep.seed;
        out.csv = csv;
        out.csv_name = "gdelta_curves.csv";
    } else if (kind == "circle-integral") {
        if (!config.contains("circle"))
            throw ConfigError("circle-integral config is missing field \"circle\"");
        const Disk circle = detail::parse_disk(config.at("circle"), "circle");
        const std::vector<index_t> schedule =
            detail::require_field<std::vector<index_t>>(config, "k_schedule");
        const index_t nodes = detail::field_or<index_t>(config, "nodes", 64);
        const RhoPolicy rp = detail::parse_rho_policy_json(config);
        const index_t horizon = detail::field_or<index_t>(config, "horizon", 2000);
        const double rho = resolve_rho(rp, src, Window{std::max<index_t>(2, horizon / 2), horizon});
        const IndexSequence nu = parse_index_sequence(nu_spec, horizon);
        const CircleIntegralReport rep =
            circle_integral_probe(src, nu, rho, circle, schedule, nodes, threads);
        results["schedule"] = rep.schedule;
        results["integral_sigma"] = rep.integral_sigma;
        results["integral_log_sigma"] = rep.integral_log_sigma;
        results["sigma_growth_factor"] = rep.sigma_growth_factor;
        results["log_sigma_growth_factor"] = rep.log_sigma_growth_factor;
        results["sigma_divergent_trend"] = rep.sigma_divergent_trend;
        results["log_divergent_trend"] = rep.log_divergent_trend;
        std::string csv = "K,integral_sigma,integral_log_sigma\n";
        for (std::size_t t = 0; t < rep.schedule.size(); ++t)
            csv += csv_join({std::to_string(rep.schedule[t]), fmt_double(rep.integral_sigma[t]),
                             fmt_double(rep.integral_log_sigma[t])});
        out.csv = csv;
        out.csv_name = "circle_integrals.csv";
    } else if (kind == "mean-value") {
        if (!config.contains("disk")) throw ConfigError("mean-value config is missing field \"disk\"");
        const Disk disk = detail::parse_disk(config.at("disk"), "disk");
        const index_t n_lo = detail::field_or<index_t>(config, "n_lo", 100);
        const index_t n_hi = detail::field_or<index_t>(config, "n_hi", 400);
        QuadratureSpec quad;
        if (config.contains("quadrature")) {
            quad.rings = detail::require_field<index_t>(config.at("quadrature"), "rings");
            quad.spokes = detail::require_field<index_t>(config.at("quadrature"), "spokes");
        }
        const IndexSequence nu = parse_index_sequence(nu_spec, std::max<index_t>(n_hi * 2, 256));
        auto [k_lo, k_hi] = nu.k_window_for(n_lo, n_hi);
        if (k_lo > k_hi) throw ConfigError("mean-value: the sequence has no indices in [n_lo, n_hi]");
        const PhiSpec phi{src, nu, k_lo, k_hi};
        const MeanValueReport rep = mean_value_check(phi, disk, quad, threads);
        results["center_value"] = rep.center_value;
        results["average"] = rep.average;
        results["slack"] = rep.slack;
        results["holds"] = rep.holds;
        results["node_max"] = rep.node_max;
        results["node_min"] = rep.node_min;
        results["excluded_fraction"] = rep.excluded_fraction;
        results["coverage_warning"] = rep.coverage_warning;
        results["center_ambiguous"] = rep.center_ambiguous;
    } else if (kind == "scan") {
        if (!config.contains("grid")) throw ConfigError("scan config is missing field \"grid\"");
        const json& gj = config.at("grid");
        GridSpec grid;
        grid.x0 = detail::require_field<double>(gj, "x0");
        grid.x1 = detail::require_field<double>(gj, "x1");
        grid.y0 = detail::require_field<double>(gj, "y0");
        grid.y1 = detail::require_field<double>(gj, "y1");
        grid.nx = detail::require_field<index_t>(gj, "nx");
        grid.ny = detail::require_field<index_t>(gj, "ny");
        const index_t horizon = detail::field_or<index_t>(config, "horizon", 2000);
        const IndexSequence nu = parse_index_sequence(nu_spec, horizon);
        const KWindow kw = default_k_window(nu, horizon);
        const auto rows = exceptional_set_scan(src, nu, grid, kw, threads);
        std::string csv = "x,y,gap\n";
        for (const auto& r : rows)
            csv += csv_join({fmt_double(r.x), fmt_double(r.y), fmt_double(r.gap)});
        out.csv = csv;
        out.csv_name = "scan_heatmap.csv";
        results["rows"] = rows.size();
        results["k_window"] = {kw.k_lo, kw.k_hi};
    } else {
        throw ConfigError("unknown experiment kind: " + kind +
                          " (expected ae-order|ae-type|gdelta|circle-integral|mean-value|scan)");
    }

    out.report = json{{"config", config}, {"results", results}, {"diagnostics", json::object()}};
    return out;
}

struct ExperimentCliConfig {
    std::string config_path;
    std::string out_dir = ".";
    unsigned threads = 1;
};

inline int cmd_experiment(const ExperimentCliConfig& cli_cfg, std::string* out_text = nullptr) {
    json config;
    try {
        std::ifstream in(cli_cfg.config_path);
        if (!in) throw ConfigError("cannot open config file: " + cli_cfg.config_path);
        json raw = json::parse(in, nullptr, true, true); // allow comments
        // Accept either a bare config or a full report (re-run from the
        // embedded config).
        config = raw.contains("config") && raw.contains("results") ? raw.at("config") : raw;
    } catch (const json::parse_error& e) {
        std::fprintf(stderr, "config parse error: %s\n", e.what());
        return 1;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return 1;
    }
    try {
        ExperimentOutput out = run_experiment_config(config, cli_cfg.threads);
        const std::string kind = config.at("experiment").get<std::string>();
        const std::string report_text = out.report.dump(2) + "\n";
        const std::string report_path = cli_cfg.out_dir + "/" + kind + "_report.json";
        atomic_write_file(report_path, report_text);
        if (!out.csv.empty())
            atomic_write_file(cli_cfg.out_dir + "/" + out.csv_name, out.csv);
        if (out_text) *out_text = report_text;
        else std::printf("wrote %s\n", report_path.c_str());
        return out.exit_code;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", e.name().c_str(), e.what());
        return 2;
    }
}

} // namespace efg::cli
