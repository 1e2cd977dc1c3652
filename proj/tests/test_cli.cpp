#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path tmp_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "efg_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = tmp_dir() / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = tmp_dir() / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string(EFG_CLI_PATH) + " " + args + " >" + out.string() +
                            " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

} // namespace

TEST_CASE("catalog lists sources and parses as JSON") {
    auto r = run_cli("catalog --format json");
    REQUIRE(r.exit_code == 0);
    json arr = json::parse(r.out);
    REQUIRE(arr.is_array());
    bool has_sin = false, has_maximal = false;
    for (const auto& e : arr) {
        if (e.at("id") == "sin") {
            has_sin = true;
            CHECK(e.at("ground_truth").get<std::string>().find("|lambda|") != std::string::npos);
        }
        if (e.at("id") == "maximal_type") {
            has_maximal = true;
            CHECK(e.at("ground_truth").get<std::string>().find("maximal") != std::string::npos);
        }
    }
    CHECK(has_sin);
    CHECK(has_maximal);

    auto t = run_cli("catalog");
    CHECK(t.exit_code == 0);
    CHECK(t.out.find("sin") != std::string::npos);
}

TEST_CASE("analyze sin(2z): type near 2 under the ground-truth rho policy") {
    auto r = run_cli("analyze --source sin:lambda=2 --window 1000:2001");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep.at("config").at("source") == "sin:lambda=2");
    const double type = rep.at("results").at("type").at("value").get<double>();
    CHECK(std::fabs(type - 2.0) < 0.04);
    const double reg = rep.at("results").at("order_regression").at("value").get<double>();
    CHECK(std::fabs(reg - 1.0) < 0.02);
}

TEST_CASE("analyze polynomial: order 0 by convention, type undefined") {
    auto r = run_cli("analyze --source polynomial:coeffs=1,0,3 --window 100:200");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep.at("results").at("order_window_sup").at("value").get<double>() == 0.0);
    CHECK(rep.at("results").at("type").at("defined").get<bool>() == false);
}

TEST_CASE("analyze exp with the regression method") {
    auto r = run_cli("analyze --source exp --window 500:2000 --method regression");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    const double reg = rep.at("results").at("order_regression").at("value").get<double>();
    CHECK(std::fabs(reg - 1.0) < 0.02);
    CHECK_FALSE(rep.at("results").contains("order_window_sup"));

    // analyses are deterministic: identical invocation, identical bytes
    auto r2 = run_cli("analyze --source exp --window 500:2000 --method regression");
    CHECK(r.out == r2.out);
}

TEST_CASE("analyze error paths use exit code 2") {
    CHECK(run_cli("analyze --source nonsense").exit_code == 2);
    CHECK(run_cli("analyze --source exp --rho-policy explicit --rho -1").exit_code == 2);
}

TEST_CASE("subseq: theta along evens of sin z") {
    auto r = run_cli("subseq --source sin:lambda=1 --nu even --z 1+0i --horizon 2000");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    const double theta = rep.at("results").at("nu").at("theta").at("value").get<double>();
    CHECK(std::fabs(theta - 1.0) < 1e-3);

    // a 14-digit decimal rendering of pi still lands on the zero set
    auto r2 = run_cli("subseq --source sin:lambda=1 --nu even --z 3.14159265358979+0i");
    REQUIRE(r2.exit_code == 0);
    json rep2 = json::parse(r2.out);
    CHECK(rep2.at("results").at("nu").at("theta").at("value").get<double>() == 0.0);
    // the order functional has nothing to use there and reports AllSkipped
    CHECK(rep2.at("results").at("nu").at("rho").contains("error"));
}

TEST_CASE("subseq: partition identities verdicts") {
    auto r = run_cli("subseq --source exp --nu squares --z 0+0i --horizon 1000");
    REQUIRE(r.exit_code == 0);
    json rep = json::parse(r.out);
    CHECK(rep.at("results").at("identity").at("rho_ok").get<bool>());
    CHECK(rep.at("results").at("identity").at("tau_ok").get<bool>());
}

TEST_CASE("experiment: run, rerun from embedded config, byte-identical") {
    const fs::path dir = tmp_dir();
    const fs::path cfg_path = dir / "ae.json";
    json cfg{{"experiment", "ae-order"},
             {"source", "sin:lambda=1"},
             {"nu", "even"},
             {"seed", 7},
             {"horizon", 1200},
             {"tol", 0.05},
             {"sampling",
              {{"disk", {{"cx", 0.0}, {"cy", 0.0}, {"r", 2.0}}},
               {"mode", "uniform"},
               {"count", 40}}}};
    {
        std::ofstream out(cfg_path);
        out << cfg.dump(2);
    }
    const fs::path d1 = dir / "run1";
    const fs::path d2 = dir / "run2";
    auto r1 = run_cli("experiment --config " + cfg_path.string() + " --out-dir " + d1.string());
    REQUIRE(r1.exit_code == 0);
    json rep = json::parse(slurp(d1 / "ae-order_report.json"));
    CHECK(rep.at("results").at("exceptional_fraction").get<double>() == 0.0);
    CHECK(rep.at("config").at("seed") == 7);

    // rerun straight from the written report, with a different thread count
    auto r2 = run_cli("experiment --config " + (d1 / "ae-order_report.json").string() +
                      " --out-dir " + d2.string() + " --threads 3");
    REQUIRE(r2.exit_code == 0);
    CHECK(slurp(d1 / "ae-order_report.json") == slurp(d2 / "ae-order_report.json"));
    CHECK(slurp(d1 / "ae-order_samples.csv") == slurp(d2 / "ae-order_samples.csv"));
    CHECK(!slurp(d1 / "ae-order_samples.csv").empty());
}

TEST_CASE("experiment: missing seed is a validation error naming the field") {
    const fs::path cfg_path = tmp_dir() / "noseed.json";
    {
        std::ofstream out(cfg_path);
        out << R"({"experiment":"ae-order","source":"exp","nu":"even","tol":0.1,
                   "sampling":{"disk":{"cx":0,"cy":0,"r":1},"mode":"uniform","count":5}})";
    }
    auto r = run_cli("experiment --config " + cfg_path.string());
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("seed") != std::string::npos);
}

TEST_CASE("experiment: unknown kind and malformed config") {
    const fs::path cfg_path = tmp_dir() / "bad.json";
    {
        std::ofstream out(cfg_path);
        out << R"({"experiment":"warp-drive","source":"exp","nu":"even","seed":1})";
    }
    CHECK(run_cli("experiment --config " + cfg_path.string()).exit_code == 1);
    CHECK(run_cli("experiment --config /does/not/exist.json").exit_code == 1);
}
