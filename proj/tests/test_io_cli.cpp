#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qjump/cli.hpp"
#include "qjump/io.hpp"
#include "qjump/units.hpp"

using namespace qjump;
namespace fs = std::filesystem;

namespace {

fs::path make_temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("qjump_test_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

}  // namespace

TEST_CASE("trace csv round trip keeps full precision") {
    PopulationTrace trace;
    trace.times = {0.0, 1.0 / 3.0, 0.125, 0.9999999999999};
    trace.populations = {{0.0, 1.0, 0.0},
                         {0.1234567890123456, 0.5, 0.3765432109876544},
                         {1e-15, 0.25, 0.75},
                         {0.0, 0.0, 1.0}};
    std::stringstream ss;
    write_trace_csv(ss, trace);
    CHECK(ss.str().substr(0, 25) == "t_ns,p0,p_minus1,p_plus1\n");
    const PopulationTrace back = read_trace_csv(ss);
    REQUIRE(back.times.size() == trace.times.size());
    for (size_t i = 0; i < trace.times.size(); ++i) {
        CHECK(back.times[i] == doctest::Approx(trace.times[i]).epsilon(1e-14));
        for (int k = 0; k < 3; ++k)
            CHECK(back.populations[i][k] ==
                  doctest::Approx(trace.populations[i][k]).epsilon(1e-14));
    }
}

TEST_CASE("scan csv round trip") {
    ScanResult scan;
    scan.parameter = "delta";
    scan.values = {-2.0, 0.0, 2.0};
    scan.efficiencies = {0.4829204927041, 1.0, 0.4829204927041};
    std::stringstream ss;
    write_scan_csv(ss, scan);
    CHECK(ss.str().rfind("param_value,efficiency\n", 0) == 0);
    const ScanResult back = read_scan_csv(ss);
    REQUIRE(back.values.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(back.values[i] == scan.values[i]);
        CHECK(back.efficiencies[i] ==
              doctest::Approx(scan.efficiencies[i]).epsilon(1e-14));
    }
}

TEST_CASE("malformed csv is rejected with the line number") {
    SUBCASE("wrong header") {
        std::stringstream ss("time,efficiency\n1,2\n");
        CHECK_THROWS_AS(read_scan_csv(ss), std::runtime_error);
    }
    SUBCASE("non-numeric field") {
        std::stringstream ss("param_value,efficiency\n1,0.5\nx,0.5\n");
        try {
            read_scan_csv(ss);
            FAIL("expected a parse error");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SUBCASE("wrong field count") {
        std::stringstream ss("param_value,efficiency\n1,0.5,9\n");
        CHECK_THROWS_AS(read_scan_csv(ss), std::runtime_error);
    }
}

TEST_CASE("schedule json carries user units") {
    const auto s = make_jump_schedule(2, mhz_to_angular(4.0));
    const nlohmann::json j = schedule_to_json(s);
    CHECK(j.at("protocol") == "jump");
    CHECK(j.at("omega_mhz").get<double>() == doctest::Approx(4.0));
    CHECK(j.at("n_pulses") == 2);
    CHECK(j.at("total_time_ns").get<double>() == doctest::Approx(250.0));
    REQUIRE(j.at("segments").size() == 2);
    CHECK(j.at("segments")[0].at("tau_ns").get<double>() == doctest::Approx(125.0));
    CHECK(j.at("segments")[1].at("theta_rad").get<double>() ==
          doctest::Approx(3.0 * 3.14159265358979 / 8.0));
}

TEST_CASE("config json round trip") {
    RunConfig cfg;
    cfg.protocol = "stirap";
    cfg.omega_mhz = 4.0;
    cfg.total_time_ns = 1800.0;
    cfg.delta_mhz = -0.5;
    cfg.sweep = SweepSpec{"delta", -2.0, 2.0, 101};
    cfg.output = OutputSpec{"scan.csv", "csv"};
    cfg.seed = 42;
    const RunConfig back = config_from_json(config_to_json(cfg));
    CHECK(back.protocol == cfg.protocol);
    CHECK(back.total_time_ns == cfg.total_time_ns);
    CHECK(back.delta_mhz == cfg.delta_mhz);
    REQUIRE(back.sweep.has_value());
    CHECK(back.sweep->parameter == "delta");
    CHECK(back.sweep->points == 101);
    REQUIRE(back.output.has_value());
    CHECK(back.output->path == "scan.csv");
    CHECK(back.seed == cfg.seed);
}

TEST_CASE("unknown config fields are named") {
    try {
        config_from_json({{"protocol", "jump"}, {"omgea_mhz", 4.0}});
        FAIL("expected a config error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("omgea_mhz") != std::string::npos);
    }
}

TEST_CASE("validation names the offending field") {
    RunConfig cfg;
    SUBCASE("protocol") {
        cfg.protocol = "ramp";
        try {
            validate(cfg);
            FAIL("expected a config error");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("protocol") != std::string::npos);
        }
    }
    SUBCASE("n_pulses") {
        cfg.n_pulses = 0;
        CHECK_THROWS_AS(validate(cfg), ConfigError);
    }
    SUBCASE("omega") {
        cfg.omega_mhz = -4.0;
        try {
            validate(cfg);
            FAIL("expected a config error");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("omega_mhz") != std::string::npos);
        }
    }
    SUBCASE("sweep parameter") {
        cfg.sweep = SweepSpec{"phase", 0.0, 1.0, 5};
        CHECK_THROWS_AS(validate(cfg), ConfigError);
    }
    SUBCASE("output format") {
        cfg.output = OutputSpec{"x.csv", "xml"};
        try {
            validate(cfg);
            FAIL("expected a config error");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("output.format") != std::string::npos);
        }
    }
}

TEST_CASE("sweep argument parsing") {
    const SweepSpec sw = parse_sweep("delta:-2:2:101");
    CHECK(sw.parameter == "delta");
    CHECK(sw.start == -2.0);
    CHECK(sw.stop == 2.0);
    CHECK(sw.points == 101);
    CHECK_THROWS_AS(parse_sweep("delta:-2:2"), ConfigError);
    CHECK_THROWS_AS(parse_sweep("delta:a:2:101"), ConfigError);
}

TEST_CASE("cli simulate prints the efficiency") {
    std::string out;
    const int code = cli({"simulate", "--protocol", "jump", "--n", "4", "--omega",
                          "4", "--time", "500"},
                         &out);
    CHECK(code == 0);
    CHECK(out.find("efficiency = 1.000000") != std::string::npos);
}

TEST_CASE("cli config file with flag overrides") {
    const fs::path dir = make_temp_dir("config");
    const fs::path cfg_path = dir / "run.json";
    {
        std::ofstream f(cfg_path);
        f << R"({"protocol": "stirap", "omega_mhz": 4.0, "total_time_ns": 500.0})";
    }
    std::string out;
    CHECK(cli({"simulate", "--config", cfg_path.string()}, &out) == 0);
    CHECK(out.find("efficiency = 0.624953") != std::string::npos);
    CHECK(cli({"simulate", "--config", cfg_path.string(), "--time", "1800"}, &out) == 0);
    CHECK(out.find("efficiency = 0.999979") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("cli exit codes") {
    std::string err;
    SUBCASE("invalid field is a config error naming the field") {
        CHECK(cli({"simulate", "--n", "0"}, nullptr, &err) == 2);
        CHECK(err.find("n_pulses") != std::string::npos);
    }
    SUBCASE("unknown subcommand") {
        CHECK(cli({"frobnicate"}, nullptr, &err) == 2);
    }
    SUBCASE("unconverged integrator") {
        CHECK(cli({"simulate", "--protocol", "stirap", "--time", "500", "--dt",
                   "150"},
                  nullptr, &err) == 3);
        CHECK(err.find("non-convergence") != std::string::npos);
    }
    SUBCASE("verify succeeds") {
        std::string out;
        CHECK(cli({"verify"}, &out) == 0);
        CHECK(out.find("FAIL") == std::string::npos);
        CHECK(out.find("PASS") != std::string::npos);
    }
}

TEST_CASE("cli sweep writes the scan file") {
    const fs::path dir = make_temp_dir("sweep");
    const fs::path out_path = dir / "scan.csv";
    std::string out;
    const int code = cli({"simulate", "--protocol", "jump", "--n", "4", "--omega",
                          "4", "--sweep", "time:0:500:11", "--out",
                          out_path.string()},
                         &out);
    CHECK(code == 0);
    std::ifstream f(out_path);
    REQUIRE(f.good());
    const ScanResult scan = read_scan_csv(f);
    REQUIRE(scan.values.size() == 11);
    CHECK(scan.values.front() == 0.0);
    CHECK(scan.values.back() == 500.0);
    CHECK(scan.efficiencies.front() == 0.0);
    CHECK(scan.efficiencies.back() == doctest::Approx(1.0).epsilon(1e-10));
    fs::remove_all(dir);
}

TEST_CASE("cli json output embeds the config") {
    const fs::path dir = make_temp_dir("json");
    const fs::path out_path = dir / "run.json";
    std::string out;
    CHECK(cli({"simulate", "--protocol", "jump", "--n", "2", "--omega", "4",
               "--time", "250", "--out", out_path.string(), "--format", "json"},
              &out) == 0);
    const nlohmann::json j = nlohmann::json::parse(slurp(out_path));
    CHECK(j.at("config").at("protocol") == "jump");
    CHECK(j.at("config").at("n_pulses") == 2);
    CHECK(j.at("trace").at("samples").size() == 101);
    fs::remove_all(dir);
}

TEST_CASE("environment variable supplies the default output directory") {
    const fs::path dir = make_temp_dir("envdir");
    setenv("QJUMP_OUT_DIR", dir.c_str(), 1);
    std::string out;
    const int code = cli({"simulate", "--protocol", "jump", "--n", "1", "--omega",
                          "4", "--time", "125", "--out", "rel.csv"},
                         &out);
    unsetenv("QJUMP_OUT_DIR");
    CHECK(code == 0);
    CHECK(fs::exists(dir / "rel.csv"));
    fs::remove_all(dir);
}

TEST_CASE("reproduced figure files are byte-identical across runs") {
    const fs::path dir_a = make_temp_dir("fig_a");
    const fs::path dir_b = make_temp_dir("fig_b");
    const auto files_a = write_figures("fig4", dir_a.string());
    const auto files_b = write_figures("fig4", dir_b.string());
    REQUIRE(files_a.size() == 1);
    REQUIRE(files_b.size() == 1);
    CHECK(slurp(files_a[0]) == slurp(files_b[0]));
    CHECK_THROWS_AS(write_figures("fig9", dir_a.string()), ConfigError);
    fs::remove_all(dir_a);
    fs::remove_all(dir_b);
}

TEST_CASE("dump-schedule emits the resolved schedule") {
    std::string out;
    CHECK(cli({"dump-schedule", "--protocol", "jump", "--n", "1", "--omega", "4",
               "--time", "60"},
              &out) == 0);
    const nlohmann::json j = nlohmann::json::parse(out);
    CHECK(j.at("n_pulses") == 1);
    CHECK(j.at("segments")[0].at("tau_ns").get<double>() == doctest::Approx(60.0));
    CHECK(j.at("segments")[0].at("theta_rad").get<double>() ==
          doctest::Approx(0.7853981633974483));

    CHECK(cli({"dump-schedule", "--protocol", "stirap", "--omega", "4", "--time",
               "500"},
              &out) == 0);
    const nlohmann::json js = nlohmann::json::parse(out);
    CHECK(js.at("protocol") == "stirap");
    CHECK(js.at("delay_ns").get<double>() == doctest::Approx(50.0));
    CHECK(js.at("width_ns").get<double>() == doctest::Approx(500.0 / 6.0));
    CHECK(js.at("dt_ns").get<double>() == doctest::Approx(0.25));
}
