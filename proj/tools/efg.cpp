// efg: growth analysis of entire functions from Taylor-coefficient data.
//
// Commands:
//   catalog               list the built-in coefficient sources
//   analyze               order/type estimates for one source
//   subseq                subsequence functionals and partition identities at a point
//   experiment            run a seeded experiment from a JSON config file
//
// Exit codes: 0 success, 1 config error, 2 numeric-domain error.

#include <CLI11.hpp>

#include "efg/cli.hpp"
#include "efg/cli_experiment.hpp"

int main(int argc, char** argv) {
    CLI::App app{"entire-function growth toolkit"};
    app.require_subcommand(1);

    // catalog
    auto* cat = app.add_subcommand("catalog", "list coefficient sources");
    std::string cat_format = "text";
    cat->add_option("--format", cat_format, "text|json")->check(CLI::IsMember({"text", "json"}));

    // analyze
    auto* an = app.add_subcommand("analyze", "order/type estimates for a source");
    efg::cli::AnalyzeConfig acfg;
    std::string an_window = "1000:2000";
    std::string an_rho_policy = "ground_truth";
    double an_rho_value = 0.0;
    bool an_rho_value_set = false;
    std::string an_grid;
    an->add_option("--source", acfg.source, "source spec, e.g. sin:lambda=2")->required();
    an->add_option("--window", an_window, "coefficient window LO:HI (default 1000:2000)");
    an->add_option("--method", acfg.method, "order estimators to run: sup|regression|both")
        ->check(CLI::IsMember({"sup", "regression", "both"}));
    an->add_option("--rho-policy", an_rho_policy, "ground_truth|regression|explicit");
    an->add_option("--rho", an_rho_value, "rho value for --rho-policy explicit")
        ->each([&](const std::string&) { an_rho_value_set = true; });
    an->add_option("--r-grid", an_grid, "comma list of radii for the max-modulus cross-check");
    an->add_option("--out", acfg.out_path, "write the JSON report here (default stdout)");
    an->add_option("--csv", acfg.csv_path, "write the order diagnostic series as CSV");

    // subseq
    auto* sq = app.add_subcommand("subseq", "subsequence functionals at a point");
    efg::cli::SubseqConfig scfg;
    std::string sq_z = "0";
    std::string sq_rho_policy = "ground_truth";
    double sq_rho_value = 0.0;
    bool sq_rho_value_set = false;
    sq->add_option("--source", scfg.source, "source spec")->required();
    sq->add_option("--nu", scfg.nu, "index sequence spec, e.g. even|odd|squares|primes")->required();
    sq->add_option("--z", sq_z, "evaluation point, e.g. 1+0.5i")->required();
    sq->add_option("--horizon", scfg.horizon, "derivative-index horizon (default 2000)");
    sq->add_option("--rho-policy", sq_rho_policy, "ground_truth|regression|explicit");
    sq->add_option("--rho", sq_rho_value, "rho value for --rho-policy explicit")
        ->each([&](const std::string&) { sq_rho_value_set = true; });
    sq->add_option("--out", scfg.out_path, "write the JSON report here (default stdout)");
    sq->add_option("--csv-prefix", scfg.csv_prefix, "write per-functional series CSVs with this prefix");

    // experiment
    auto* ex = app.add_subcommand("experiment", "run an experiment from a JSON config");
    efg::cli::ExperimentCliConfig ecfg;
    ex->add_option("--config", ecfg.config_path, "config file (or a previous report)")->required();
    ex->add_option("--out-dir", ecfg.out_dir, "output directory (default .)");
    ex->add_option("--threads", ecfg.threads, "worker threads (does not affect results)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cat) return efg::cli::cmd_catalog(cat_format == "json", nullptr);
        if (*an) {
            acfg.window = efg::cli::parse_window(an_window);
            acfg.rho_policy = efg::cli::parse_rho_policy(
                an_rho_policy,
                an_rho_value_set ? std::optional<double>(an_rho_value) : std::nullopt);
            if (!an_grid.empty()) acfg.r_grid = efg::cli::parse_double_list(an_grid);
            return efg::cli::cmd_analyze(acfg);
        }
        if (*sq) {
            scfg.z = efg::cli::parse_complex(sq_z);
            scfg.rho_policy = efg::cli::parse_rho_policy(
                sq_rho_policy,
                sq_rho_value_set ? std::optional<double>(sq_rho_value) : std::nullopt);
            return efg::cli::cmd_subseq(scfg);
        }
        if (*ex) return efg::cli::cmd_experiment(ecfg);
    } catch (const efg::cli::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const efg::Error& e) {
        std::fprintf(stderr, "error [%s]: %s\n", e.name().c_str(), e.what());
        return 2;
    }
    return 0;
}
