#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <gmq/ext/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
    int rc = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "gmq_cli_test";
        fs::remove_all(d);
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

// run the installed binary with stdout/stderr captured to files
RunResult run_cli(const std::string& args) {
    static int seq = 0;
    const fs::path o = scratch_dir() / ("out" + std::to_string(seq));
    const fs::path e = scratch_dir() / ("err" + std::to_string(seq));
    ++seq;
    const std::string cmd = std::string("\"") + GMQ_CLI_PATH + "\" " + args +
                            " >" + o.string() + " 2>" + e.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    return r;
}

json stderr_error(const RunResult& r) {
    return json::parse(r.err).at("error");
}

} // namespace

TEST_CASE("transform evaluation prints the value and the crosscheck") {
    const auto r = run_cli("fourier --c 1 --d 1 --n 1 --s 1");
    CHECK(r.rc == 0);
    CHECK(r.out.find("phi_hat(s=1) = -1.2038144603944689  [series]") != std::string::npos);
    CHECK(r.out.find("(oracle crosscheck delta") != std::string::npos);
}

TEST_CASE("infeasible support reports the smallest sufficient radius") {
    const auto r = run_cli("coeffs --c 1 --d 5 --n 1 --support 2");
    CHECK(r.rc == 1);
    const json e = stderr_error(r);
    CHECK(e.at("type").get<std::string>() == "infeasible_construction");
    CHECK(e.at("details").at("smallest_sufficient_radius").get<int>() == 7);
}

TEST_CASE("invalid frequency exits 1 with a structured error") {
    const auto r = run_cli("fourier --c 1 --d 1 --n 1 --s -1");
    CHECK(r.rc == 1);
    CHECK(stderr_error(r).at("type").get<std::string>() == "invalid_parameter");
}

TEST_CASE("series breakdown without an oracle route exits 2") {
    // n = 2 has no closed-form fallback, and c*s = 25 is far past the
    // trustworthy range of the residue series
    const auto r = run_cli("fourier --c 1 --d 1 --n 2 --s 25");
    CHECK(r.rc == 2);
    CHECK(stderr_error(r).at("type").get<std::string>() == "numerical_failure");
}

TEST_CASE("check violations exit 3") {
    const auto bad = run_cli(
        "reproduce --c 1 --d 1 --n 1 --support 1 --degrees 0,1 --radius 500 --check 1e-30");
    CHECK(bad.rc == 3);
    const auto ok = run_cli(
        "reproduce --c 1 --d 1 --n 1 --support 1 --degrees 0,1 --radius 2000 --check 1e-4");
    CHECK(ok.rc == 0);
}

TEST_CASE("rerun from the emitted config is byte-identical") {
    const fs::path a = scratch_dir() / "repA";
    const fs::path b = scratch_dir() / "repB";
    const auto r1 = run_cli("coeffs --c 1 --d 3 --n 1 --support 4 --out " + a.string());
    REQUIRE(r1.rc == 0);
    const auto r2 =
        run_cli("coeffs --config " + (a / "report.json").string() + " --out " + b.string());
    REQUIRE(r2.rc == 0);
    CHECK(slurp(a / "report.json") == slurp(b / "report.json"));
    CHECK(!slurp(a / "report.json").empty());
    CHECK(slurp(a / "samples.csv") == slurp(b / "samples.csv"));
}

TEST_CASE("config loader rejects foreign keys and foreign commands") {
    const fs::path a = scratch_dir() / "repC";
    const auto r0 = run_cli("coeffs --c 1 --d 1 --n 1 --support 1 --out " + a.string());
    REQUIRE(r0.rc == 0);

    json doc = json::parse(slurp(a / "report.json"));
    doc["config"]["bogus"] = 1;
    const fs::path tampered = scratch_dir() / "tampered.json";
    std::ofstream(tampered) << doc.dump(2) << "\n";
    const auto r = run_cli("coeffs --config " + tampered.string());
    CHECK(r.rc == 1);
    CHECK(stderr_error(r).at("message").get<std::string>().find("unknown config key")
          != std::string::npos);

    const auto w = run_cli("fourier --config " + (a / "report.json").string());
    CHECK(w.rc == 1);
    CHECK(stderr_error(w).at("message").get<std::string>().find("produced by subcommand")
          != std::string::npos);
}

TEST_CASE("interpolation matrix demo splits the spectrum") {
    const auto r = run_cli("pd-check --c 1 --d 1 --n 1 --r 1");
    CHECK(r.rc == 0);
}
