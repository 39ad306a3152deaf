#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "er/hjsolver.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace er;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

// Run the CLI under test with ER_THREADS=1 into `out_dir`.
RunResult run_cli(const std::string& args, const std::string& out_dir) {
    REQUIRE(!er_test::g_cli_binary.empty());
    fs::remove_all(out_dir);
    fs::create_directories(fs::path(out_dir).parent_path());
    const std::string log = out_dir + ".stdout";
    const std::string cmd = "ER_THREADS=1 \"" + er_test::g_cli_binary + "\" " +
                            args + " --out \"" + out_dir + "\" > \"" + log +
                            "\" 2> \"" + out_dir + ".stderr\"";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream f(log, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    r.stdout_text = ss.str();
    return r;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

json read_json(const std::string& path) { return json::parse(read_file(path)); }

const std::string kTmp = "cli_tmp";

} // namespace

TEST_CASE("resonance subcommand prints the root and writes the manifest") {
    const std::string dir = kTmp + "/res";
    const auto r = run_cli("resonance --tol 1e-10", dir);
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("alpha_R = 1.66") != std::string::npos);
    const json j = read_json(dir + "/resonance.json");
    CHECK(j["alpha_R"].get<double>() == doctest::Approx(1.6626).epsilon(1e-3));
    CHECK(j["dx_over_a"].get<double>() == doctest::Approx(2.97).epsilon(0.005));
    CHECK(j["coefficient"].get<double>() == doctest::Approx(0.94).epsilon(0.02));
    CHECK(std::abs(j["connection_constant_at_root"].get<double>()) < 1e-9);
    const json m = read_json(dir + "/manifest.json");
    CHECK(m["status"] == "ok");
    CHECK(m["exit_code"] == 0);
    CHECK(m["subcommand"] == "resonance");
    CHECK(m["config"]["tol"].get<double>() == 1e-10);
}

TEST_CASE("stable output schemas: golden CSV headers") {
    CHECK(first_line(read_file([&] {
              const auto r = run_cli("field --alpha 1 --nu 4 --nx 41 --ny 31",
                                     kTmp + "/fld");
              REQUIRE(r.exit_code == 0);
              return kTmp + "/fld/field.csv";
          }())) == "x,y,re_psi,im_psi,abs_psi,chi,Qx,Qy,region");
    CHECK(first_line(read_file([&] {
              const auto r = run_cli(
                  "effpot --source model --alpha 1 --nu 4", kTmp + "/eff");
              REQUIRE(r.exit_code == 0);
              return kTmp + "/eff/effpot.csv";
          }())) == "x,U,variant,masked");
    CHECK(first_line(read_file([&] {
              const auto r = run_cli("action --nu 4 --steps 3", kTmp + "/act");
              REQUIRE(r.exit_code == 0);
              return kTmp + "/act/action.csv";
          }())) ==
          "alpha,wkb_action,transverse_action,total_action,reduction_fraction,"
          "suppression");
    CHECK(first_line(read_file([&] {
              const auto r =
                  run_cli("profile --alpha 1 --nu 4 --samples 50", kTmp + "/prf");
              REQUIRE(r.exit_code == 0);
              return kTmp + "/prf/profile.csv";
          }())) == "x,abs_psi_ratio");
    CHECK(first_line(read_file([&] {
              const auto r =
                  run_cli("regions --alpha 1 --nu 4 --samples 16", kTmp + "/reg");
              REQUIRE(r.exit_code == 0);
              return kTmp + "/reg/regions.csv";
          }())) == "k,x,y");
    CHECK(first_line(read_file([&] {
              const auto r = run_cli("bounce --alpha 1 --nu 4", kTmp + "/bnc");
              REQUIRE(r.exit_code == 0);
              return kTmp + "/bnc/bounce_trajectory.csv";
          }())) == "tau,eta");
}

TEST_CASE("identical configs produce byte-identical data files") {
    const auto r1 = run_cli("action --nu 4 --steps 19", kTmp + "/det1");
    const auto r2 = run_cli("action --nu 4 --steps 19", kTmp + "/det2");
    REQUIRE(r1.exit_code == 0);
    REQUIRE(r2.exit_code == 0);
    CHECK(read_file(kTmp + "/det1/action.csv") ==
          read_file(kTmp + "/det2/action.csv"));

    const std::string fargs = "field --alpha 1 --nu 4 --nx 61 --ny 41";
    const auto f1 = run_cli(fargs, kTmp + "/det3");
    const auto f2 = run_cli(fargs, kTmp + "/det4");
    REQUIRE(f1.exit_code == 0);
    REQUIRE(f2.exit_code == 0);
    CHECK(read_file(kTmp + "/det3/field.csv") ==
          read_file(kTmp + "/det4/field.csv"));

    const std::string bargs = "bounce --alpha 1.3 --nu 6 --u0-ratio 80";
    const auto b1 = run_cli(bargs, kTmp + "/det5");
    const auto b2 = run_cli(bargs, kTmp + "/det6");
    REQUIRE(b1.exit_code == 0);
    REQUIRE(b2.exit_code == 0);
    CHECK(read_file(kTmp + "/det5/bounce_trajectory.csv") ==
          read_file(kTmp + "/det6/bounce_trajectory.csv"));
    CHECK(read_file(kTmp + "/det5/bounce.json") ==
          read_file(kTmp + "/det6/bounce.json"));
}

TEST_CASE("domain errors exit with code 2 and still emit a manifest") {
    const std::string dir = kTmp + "/err";
    const auto r = run_cli("action --alpha 0 --nu 4", dir);
    CHECK(r.exit_code == 2);
    const json m = read_json(dir + "/manifest.json");
    CHECK(m["status"] == "error");
    CHECK(m["exit_code"] == 2);
    CHECK(m.contains("error"));

    // Missing required dimensionless input.
    CHECK(run_cli("profile", kTmp + "/err2").exit_code == 2);
    // Under-resolved oracle grid (resolution rule violation).
    CHECK(run_cli("oracle --alpha 1 --nu 4 --nx 32 --ny 32", kTmp + "/err3")
              .exit_code == 2);
    // Negative wall strength.
    CHECK(run_cli("bounce --alpha 1 --nu 4 --u0-ratio -1", kTmp + "/err4")
              .exit_code == 2);
}

TEST_CASE("unknown options are rejected") {
    const auto r = run_cli("resonance --no-such-flag", kTmp + "/unk");
    CHECK(r.exit_code != 0);
}

TEST_CASE("json format emits parseable row arrays") {
    const auto r =
        run_cli("action --nu 4 --steps 5 --format json", kTmp + "/json");
    REQUIRE(r.exit_code == 0);
    const json rows = read_json(kTmp + "/json/action.json");
    REQUIRE(rows.is_array());
    REQUIRE(rows.size() == 5);
    for (const auto& row : rows) {
        CHECK(row.contains("alpha"));
        CHECK(row["total_action"].is_number());
    }
}

TEST_CASE("profile CSV round-trips the sawtooth modulus exactly") {
    const int samples = 200;
    const auto r =
        run_cli("profile --alpha 1 --nu 4 --samples 200", kTmp + "/prof2");
    REQUIRE(r.exit_code == 0);
    std::ifstream f(kTmp + "/prof2/profile.csv");
    std::string line;
    std::getline(f, line); // header
    const double extent = 2.5 * hj::period(1.0);
    int i = 0;
    while (std::getline(f, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        const std::string value = line.substr(comma + 1);
        const double x = extent * i / (samples - 1);
        if (!value.empty()) {
            // 17 significant digits survive the CSV round trip bit-exactly.
            CHECK(std::stod(value) == hj::modulus_ratio(x, 1.0, 4.0));
        }
        if (i == 0) CHECK(std::stod(value) == 1.0);
        ++i;
    }
    CHECK(i == samples);
}

TEST_CASE("model effective potential emits levels and provenance") {
    const auto r = run_cli(
        "effpot --source model --alpha 1 --nu 4 --well-depth 2 --emin -2 --emax 1",
        kTmp + "/eff2");
    REQUIRE(r.exit_code == 0);
    const std::string csv = read_file(kTmp + "/eff2/effpot.csv");
    CHECK(csv.find("piecewise-parabolic") != std::string::npos);
    const json levels = read_json(kTmp + "/eff2/levels.json");
    CHECK(levels["kinetic_coefficient"].get<double>() ==
          doctest::Approx(1.0 / 16.0));
    CHECK(levels["levels"].is_array());
}

TEST_CASE("tan effective potential masks its poles in the CSV") {
    const auto r = run_cli(
        "effpot --source tan --omega-c 2 --wall-a 1.5 --mag-l 0.7 --samples 400",
        kTmp + "/eff3");
    REQUIRE(r.exit_code == 0);
    std::ifstream f(kTmp + "/eff3/effpot.csv");
    std::string line;
    std::getline(f, line);
    bool saw_masked = false;
    while (std::getline(f, line)) {
        // Masked rows have an empty U column and masked = 1.
        if (line.find(",,analytic-tan,1") != std::string::npos) saw_masked = true;
    }
    CHECK(saw_masked);
}

TEST_CASE("oracle subcommand reports the eigensolve and comparison") {
    const auto r = run_cli("oracle --alpha 1 --nu 4 --nx 256 --ny 128",
                           kTmp + "/orc");
    REQUIRE(r.exit_code == 0);
    const json j = read_json(kTmp + "/orc/oracle.json");
    CHECK(j["eigenvalue"].get<double>() == doctest::Approx(-0.792).epsilon(0.01));
    CHECK(j["residual"].get<double>() < 1e-9);
    const json c = j["comparison"];
    CHECK(c["decay_ok"].get<bool>());
    CHECK(c["disjoining_ok"].get<bool>());
    CHECK(c["winding_ok"].get<bool>());
    CHECK(std::abs(c["node_winding"].get<int>()) == 1);
    CHECK(first_line(read_file(kTmp + "/orc/oracle_field.csv")) ==
          "x,y,re_psi,im_psi,abs_psi,chi,Qx,Qy,region");
}

TEST_CASE("scan subcommand emits the suppression table") {
    const auto r = run_cli(
        "scan --nu 4 --alpha-min 0.5 --alpha-max 0.8 --steps 2 --nx 256 --ny 128",
        kTmp + "/scan");
    REQUIRE(r.exit_code == 0);
    const std::string csv = read_file(kTmp + "/scan/scan.csv");
    CHECK(first_line(csv) ==
          "alpha,measured_log_suppression,predicted_log_suppression");
    // Two data rows.
    int lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == 3);
}
