#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

std::string cli_path() {
    const char* p = std::getenv("RXCOOP_CLI");
    REQUIRE(p != nullptr);
    return p;
}

std::string fixtures_dir() {
    const char* p = std::getenv("RXCOOP_FIXTURES");
    REQUIRE(p != nullptr);
    return p;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

CliResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out_file =
        fs::temp_directory_path() /
        ("rxcoop_cli_test_" + std::to_string(counter++) + ".out");
    const std::string cmd =
        cli_path() + " " + args + " > " + out_file.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_file);
    fs::remove(out_file);
    return r;
}

}  // namespace

TEST_CASE("rates: spot values on the frozen point") {
    const CliResult r =
        run_cli("rates --snr-db 20 --inr-db 10 --cb 1 --phases 0,0,0,0 "
                "--format json");
    REQUIRE(r.exit_code == 0);
    const auto rows = nlohmann::json::parse(r.out);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0]["r_sym"].get<double>() == doctest::Approx(3.392).epsilon(1e-3));
    CHECK(rows[0]["c_ub"].get<double>() == doctest::Approx(5.328).epsilon(1e-3));
    CHECK(rows[0]["gap"].get<double>() == doctest::Approx(1.936).epsilon(1e-3));
    CHECK(rows[0]["gap"].get<double>() ==
          doctest::Approx(rows[0]["c_ub"].get<double>() -
                          rows[0]["r_sym"].get<double>())
              .epsilon(1e-9));
}

TEST_CASE("rates: gap within contract at cb = 0") {
    const CliResult r = run_cli(
        "rates --snr-db 20 --inr-db 10 --cb 0 --phases 0,0,0,0 --format json");
    REQUIRE(r.exit_code == 0);
    const auto rows = nlohmann::json::parse(r.out);
    const double gap = rows[0]["gap"].get<double>();
    CHECK(gap >= 0.0);
    CHECK(gap <= 3.0);
}

TEST_CASE("rates: missing required flag is a usage error") {
    CHECK(run_cli("rates --snr-db 20").exit_code != 0);
    CHECK(run_cli("rates --snr-db 20 --inr-db 10 --format xml").exit_code != 0);
}

TEST_CASE("gap-sweep: exit code contract and summary consistency") {
    const CliResult r = run_cli(
        "gap-sweep --snr-db 5:25:5 --inr-db 5:25:5 --cb 0,2,4 "
        "--phase-samples 4 --seed 11");
    REQUIRE(r.exit_code == 0);
    const auto summary = nlohmann::json::parse(r.out);
    CHECK(summary["pass"].get<bool>());
    CHECK(summary["max_gap"].get<double>() <= 3.0 + 1e-6);
    CHECK(summary["min_gap"].get<double>() >= -1e-6);
    CHECK(summary["points"].get<int>() == 5 * 5 * 3 * (4 + 2));

    // single-point sweep agrees with cmd rates on the extreme tuples
    const CliResult single = run_cli(
        "gap-sweep --snr-db 20 --inr-db 10 --cb 1 --phase-samples 0");
    REQUIRE(single.exit_code == 0);
    const auto s = nlohmann::json::parse(single.out);
    // aligned tuple gives the larger gap of the two extremes here
    CHECK(s["max_gap"].get<double>() == doctest::Approx(1.936).epsilon(1e-3));
}

TEST_CASE("gap-sweep: corrupted formula hook trips the gate") {
    const CliResult r = run_cli(
        "gap-sweep --snr-db 5:15:5 --inr-db 5:15:5 --cb 0 --phase-samples 2 "
        "--corrupt-achievable -4");
    CHECK(r.exit_code != 0);
    const CliResult r2 = run_cli(
        "gap-sweep --snr-db 5:15:5 --inr-db 5:15:5 --cb 0 --phase-samples 2 "
        "--corrupt-achievable 4");
    CHECK(r2.exit_code != 0);
}

TEST_CASE("gap-sweep: byte-identical output for identical flags and seed") {
    const fs::path f1 = fs::temp_directory_path() / "rxcoop_det_1.csv";
    const fs::path f2 = fs::temp_directory_path() / "rxcoop_det_2.csv";
    const std::string args =
        "gap-sweep --snr-db 5:30:5 --inr-db 5:30:5 --cb 0:4:2 "
        "--phase-samples 6 --seed 42 --out ";
    REQUIRE(run_cli(args + f1.string()).exit_code == 0);
    REQUIRE(run_cli(args + f2.string()).exit_code == 0);
    const std::string a = slurp(f1), b = slurp(f2);
    CHECK(a == b);
    CHECK(a.size() > 1000);
    CHECK(a.find("nan") == std::string::npos);
    CHECK(a.find("inf") == std::string::npos);
    fs::remove(f1);
    fs::remove(f2);
}

TEST_CASE("gdof: curve CSV with kink and caveat flags") {
    const CliResult r = run_cli("gdof --alpha 0.5 --kappa 0:1:0.05");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("alpha,kappa,d,binding,kappa_star,phase_caveat") !=
          std::string::npos);
    // saturation at kappa_star = 0.5: the d column reaches 1 and stays there
    CHECK(r.out.find("0.5,0.5,1,") != std::string::npos);
    CHECK(r.out.find("0.5,0.75,1,") != std::string::npos);

    const CliResult exact =
        run_cli("gdof --alpha 0.6667 --kappa 0.3333 --format json");
    const auto rows = nlohmann::json::parse(exact.out);
    CHECK(rows[0]["d"].get<double>() ==
          doctest::Approx(5.0 / 6.0).epsilon(1e-3));

    const CliResult caveat = run_cli("gdof --alpha 1 --kappa 0.5 --format json");
    const auto crow = nlohmann::json::parse(caveat.out);
    CHECK(crow[0]["phase_caveat"].get<bool>());
}

TEST_CASE("ldc run/search/scenario reports") {
    const CliResult run =
        run_cli("ldc run " + fixtures_dir() + "/fig2_optimal.json");
    REQUIRE(run.exit_code == 0);
    const auto report = nlohmann::json::parse(run.out);
    CHECK(report["sum_rate"].get<int>() == 5);
    CHECK(report["decode_errors"][0].get<int>() == 0);
    CHECK(report["decode_errors"][1].get<int>() == 0);

    const CliResult search = run_cli("ldc search --n 3 --m 2 --k 1");
    REQUIRE(search.exit_code == 0);
    const auto s = nlohmann::json::parse(search.out);
    CHECK(s["best_sum"].get<int>() == 5);
    CHECK(s["best_sym"].get<double>() == doctest::Approx(2.5));

    const std::string cfg = " --n11 2 --n12 1 --n21 4 --n22 4 --k21 1";
    const CliResult one =
        run_cli("ldc scenario --mode one_round_quantize" + cfg);
    const CliResult df = run_cli("ldc scenario --mode decode_forward" + cfg);
    CHECK(nlohmann::json::parse(one.out)["max_r1"].get<int>() == 2);
    CHECK(nlohmann::json::parse(df.out)["max_r1"].get<int>() == 3);
}

TEST_CASE("ldc run rejects a missing fixture with nonzero exit") {
    CHECK(run_cli("ldc run /nonexistent.json").exit_code != 0);
}
