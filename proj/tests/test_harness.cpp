#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "qtheta/acceptance.hpp"
#include "qtheta/bounds.hpp"
#include "qtheta/cli.hpp"
#include "qtheta/config.hpp"
#include "qtheta/report.hpp"

using namespace qtheta;

namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path scratch_dir(const std::string& name)
{
    auto dir = std::filesystem::temp_directory_path() / ("qtheta_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

int run_cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "qtheta");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return cli_dispatch(static_cast<int>(argv.size()), argv.data());
}

CountReport sample_report()
{
    CountReport r;
    r.proposition = "omega";
    r.constant = 12.5;
    r.meta = {"2024-01-01T00:00:00Z", "0123456789abcdef", 0.25};
    r.rows.push_back({1, 1, 1.0, 2.0, std::nullopt, "I", 32, 4.0, 8.0, false});
    r.rows.push_back({6, 3, 0.25, 16.0, 0.0625, "diag(2,1/2)", 1234, 100.0, 12.34, true});
    return r;
}

}  // namespace

TEST_CASE("config round trips losslessly through the INI writer")
{
    RunConfig cfg;
    cfg.lattice = {10, 5, 0.125, 3.0, 0.1};
    cfg.window.kind = "cosine";
    cfg.window.alpha = 0.3;
    cfg.window.coeffs = {1.0, -0.3333333333333333};
    cfg.window.freqs = {0.0, 2.0};
    cfg.precision.rel_tol = 1e-11;
    cfg.grid.Ls = {1.0, 2.0, 4.0};
    cfg.grid.hearts = {0.1};
    cfg.theta = {0.1234, 0.8, 1e-9, 8.0};
    cfg.run.jobs = 3;
    cfg.run.out_dir = "reports/out";
    cfg.run.format = "json";
    const RunConfig back = parse_config(to_ini(cfg));
    CHECK(back == cfg);
    CHECK(to_ini(back) == to_ini(cfg));
    CHECK(parse_config(to_ini(RunConfig{})) == RunConfig{});
}

TEST_CASE("config errors are reported")
{
    CHECK_THROWS_AS(parse_config("[lattice]\nN=4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[lattice]\nN=6\nell=4\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[lattice]\nbogus=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[nowhere]\nN=1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[theta]\ny=abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[theta]\ny=1.5x\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[window]\nkind=square\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[grid]\nLs=1,,2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[run]\nformat=xml\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/qtheta.ini"), ConfigError);
}

TEST_CASE("CSV header and float formatting are fixed")
{
    const std::string csv = to_csv(sample_report());
    CHECK(csv.rfind("N,ell,delta,L,heart,g,count,rhs,ratio,flag\n", 0) == 0);
    CHECK(csv.find("1,1,1.000000000000e+00,2.000000000000e+00,,I,32,") != std::string::npos);
    CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("emitting the same report twice gives byte-identical files")
{
    const auto dir = scratch_dir("emit");
    const CountReport r = sample_report();
    for (ReportFormat f : {ReportFormat::Csv, ReportFormat::Json}) {
        report_emit(r, f, dir / "a");
        report_emit(r, f, dir / "b");
        CHECK(slurp(dir / "a") == slurp(dir / "b"));
    }
}

TEST_CASE("JSON report carries every row field")
{
    const auto j = nlohmann::json::parse(to_json(sample_report()));
    CHECK(j["schema"] == "qtheta-count-report-1");
    CHECK(j["proposition"] == "omega");
    REQUIRE(j["rows"].size() == 2);
    CHECK(j["rows"][0]["heart"].is_null());
    CHECK(j["rows"][1]["heart"].get<double>() == doctest::Approx(0.0625));
    CHECK(j["rows"][1]["flag"] == true);
    CHECK(j["metadata"]["config_hash"] == "0123456789abcdef");
}

TEST_CASE("sweep reports are independent of the worker count")
{
    BoundGrid grid = default_prop_grid(3);
    grid.Ls = {1.0, 2.0, 3.0};
    VerifyOptions one, three;
    three.jobs = 3;
    auto a = verify_bound(Proposition::PsiProp, grid, one);
    auto b = verify_bound(Proposition::PsiProp, grid, three);
    a.meta = b.meta = {};
    CHECK(to_csv(a) == to_csv(b));
    CHECK(to_json(a) == to_json(b));
}

TEST_CASE("command line exit codes")
{
    const auto dir = scratch_dir("cli");
    CHECK(run_cli({"--definitely-not-a-flag"}) == kExitUsage);
    CHECK(run_cli({}) == kExitUsage);
    CHECK(run_cli({"count", "--frobnicate"}) == kExitUsage);
    CHECK(run_cli({"count", "--N", "4"}) == kExitUsage);
    CHECK(run_cli({"count", "--N", "1", "--pairs"}) == kExitOk);
    CHECK(run_cli({"theta", "--config", "/nonexistent.ini"}) == kExitUsage);
    CHECK(run_cli({"theta", "--y", "-1"}) == kExitUsage);
    CHECK(run_cli({"selftest", "--criterion", "13"}) == kExitUsage);
    CHECK(run_cli({"selftest", "--criterion", "6"}) == kExitOk);
    CHECK(run_cli({"phi", "--P", "2", "--tau", "1"}) == kExitOk);
    CHECK(run_cli({"phi", "--P", "0.5", "--tau", "1"}) == kExitUsage);
    CHECK(run_cli({"minima", "--N", "6", "--ell", "6"}) == kExitOk);
    CHECK(run_cli({"--help"}) == kExitOk);

    {
        std::ofstream ini(dir / "bad.ini");
        ini << "[lattice]\nN=6\nnot_a_key=1\n";
    }
    CHECK(run_cli({"l2", "--config", (dir / "bad.ini").string()}) == kExitUsage);

    // a constant below every ratio flags rows: exit 1, except for the report-only Conjecture scan
    const std::string out = (dir / "reports").string();
    CHECK(run_cli({"verify-bound", "--prop", "tracefree", "--N-max", "2", "--constant", "1e-6", "--out", out})
          == kExitFailed);
    CHECK(run_cli({"verify-bound", "--prop", "heart", "--N-max", "2", "--constant", "1e-6", "--out", out})
          == kExitOk);
    CHECK(std::filesystem::exists(dir / "reports" / "verify_heart.csv"));
    CHECK(std::filesystem::exists(dir / "reports" / "verify_heart.json"));
    CHECK(run_cli({"verify-bound", "--prop", "psi", "--N-max", "2", "--out", out, "--format", "csv"}) == kExitOk);
}

TEST_CASE("acceptance criteria are named and numbered")
{
    CHECK(criterion_name(1) == "alpha=0 closed form");
    CHECK(criterion_name(kCriterionCount) == "appendix envelopes");
    CHECK_THROWS_AS(criterion_name(0), std::out_of_range);
    const CriterionResult r = run_criterion(6, {});
    CHECK(r.pass);
    CHECK(format_result(r).rfind("[PASS] 6 golden counts", 0) == 0);
}
