#include "qjump/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "qjump/io.hpp"
#include "qjump/model.hpp"
#include "qjump/units.hpp"

namespace qjump {

namespace {

namespace fs = std::filesystem;

constexpr double kDefaultOmegaMhz = 4.0;

const char* kOutDirEnv = "QJUMP_OUT_DIR";

void check_known_keys(const nlohmann::json& j,
                      const std::vector<std::string>& known,
                      const std::string& scope) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (const auto& k : known)
            if (item.key() == k) {
                ok = true;
                break;
            }
        if (!ok) throw ConfigError(scope + item.key() + ": unknown field");
    }
}

template <typename T>
T get_field(const nlohmann::json& j, const std::string& key, const T& fallback,
            const char* type_name) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ConfigError(key + ": expected " + type_name);
    }
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config: expected a JSON object");
    check_known_keys(j,
                     {"protocol", "n_pulses", "omega_mhz", "total_time_ns",
                      "delta_mhz", "dt_ns", "sweep", "output", "seed"},
                     "");
    RunConfig cfg;
    cfg.protocol = get_field<std::string>(j, "protocol", cfg.protocol, "string");
    cfg.n_pulses = get_field<int>(j, "n_pulses", cfg.n_pulses, "integer");
    cfg.omega_mhz = get_field<double>(j, "omega_mhz", cfg.omega_mhz, "number");
    cfg.total_time_ns =
        get_field<double>(j, "total_time_ns", cfg.total_time_ns, "number");
    cfg.delta_mhz = get_field<double>(j, "delta_mhz", cfg.delta_mhz, "number");
    cfg.dt_ns = get_field<double>(j, "dt_ns", cfg.dt_ns, "number");
    if (j.contains("sweep")) {
        const auto& js = j.at("sweep");
        if (!js.is_object()) throw ConfigError("sweep: expected a JSON object");
        check_known_keys(js, {"parameter", "start", "stop", "points"}, "sweep.");
        SweepSpec sw;
        sw.parameter =
            get_field<std::string>(js, "parameter", std::string(), "string");
        sw.start = get_field<double>(js, "start", 0.0, "number");
        sw.stop = get_field<double>(js, "stop", 0.0, "number");
        sw.points = get_field<int>(js, "points", 0, "integer");
        cfg.sweep = sw;
    }
    if (j.contains("output")) {
        const auto& jo = j.at("output");
        if (!jo.is_object()) throw ConfigError("output: expected a JSON object");
        check_known_keys(jo, {"path", "format"}, "output.");
        OutputSpec out;
        out.path = get_field<std::string>(jo, "path", std::string(), "string");
        out.format = get_field<std::string>(jo, "format", out.format, "string");
        cfg.output = out;
    }
    if (j.contains("seed"))
        cfg.seed = get_field<std::uint64_t>(j, "seed", 0, "unsigned integer");
    return cfg;
}

nlohmann::json config_to_json(const RunConfig& cfg) {
    nlohmann::json j{{"protocol", cfg.protocol},
                     {"n_pulses", cfg.n_pulses},
                     {"omega_mhz", cfg.omega_mhz},
                     {"total_time_ns", cfg.total_time_ns},
                     {"delta_mhz", cfg.delta_mhz},
                     {"dt_ns", cfg.dt_ns}};
    if (cfg.sweep)
        j["sweep"] = {{"parameter", cfg.sweep->parameter},
                      {"start", cfg.sweep->start},
                      {"stop", cfg.sweep->stop},
                      {"points", cfg.sweep->points}};
    if (cfg.output)
        j["output"] = {{"path", cfg.output->path}, {"format", cfg.output->format}};
    if (cfg.seed) j["seed"] = *cfg.seed;
    return j;
}

void validate(const RunConfig& cfg) {
    if (cfg.protocol != "jump" && cfg.protocol != "stirap")
        throw ConfigError("protocol: must be 'jump' or 'stirap', got '" +
                          cfg.protocol + "'");
    if (cfg.protocol == "jump" && cfg.n_pulses < 1)
        throw ConfigError("n_pulses: must be >= 1, got " +
                          std::to_string(cfg.n_pulses));
    if (!(cfg.omega_mhz > 0.0))
        throw ConfigError("omega_mhz: must be > 0");
    if (cfg.dt_ns < 0.0) throw ConfigError("dt_ns: must be >= 0");
    if (cfg.sweep) {
        const auto& sw = *cfg.sweep;
        if (sw.parameter != "time" && sw.parameter != "delta" && sw.parameter != "n")
            throw ConfigError("sweep.parameter: must be 'time', 'delta' or 'n', got '" +
                              sw.parameter + "'");
        if (sw.points < 1) throw ConfigError("sweep.points: must be >= 1");
        if (sw.parameter == "time" && (sw.start < 0.0 || sw.stop < 0.0))
            throw ConfigError("sweep: time values must be >= 0");
        if (sw.parameter == "n" && (sw.start < 1.0 || sw.stop < 1.0))
            throw ConfigError("sweep: n values must be >= 1");
    } else {
        if (!(cfg.total_time_ns > 0.0))
            throw ConfigError("total_time_ns: must be > 0");
    }
    if (cfg.output) {
        if (cfg.output->path.empty()) throw ConfigError("output.path: must not be empty");
        if (cfg.output->format != "csv" && cfg.output->format != "json")
            throw ConfigError("output.format: must be 'csv' or 'json', got '" +
                              cfg.output->format + "'");
    }
}

RunSpec to_run_spec(const RunConfig& cfg) {
    RunSpec spec;
    spec.protocol = cfg.protocol == "jump" ? Protocol::jump : Protocol::stirap;
    spec.n_pulses = cfg.n_pulses;
    spec.omega = mhz_to_angular(cfg.omega_mhz);
    spec.total_time = ns_to_us(cfg.total_time_ns);
    spec.delta = mhz_to_angular(cfg.delta_mhz);
    spec.dt = ns_to_us(cfg.dt_ns);
    return spec;
}

SweepSpec parse_sweep(const std::string& text) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4)
        throw ConfigError("sweep: expected 'param:start:stop:points', got '" +
                          text + "'");
    SweepSpec sw;
    sw.parameter = parts[0];
    try {
        size_t used = 0;
        sw.start = std::stod(parts[1], &used);
        if (used != parts[1].size()) throw std::invalid_argument("");
        sw.stop = std::stod(parts[2], &used);
        if (used != parts[2].size()) throw std::invalid_argument("");
        sw.points = std::stoi(parts[3], &used);
        if (used != parts[3].size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw ConfigError("sweep: start/stop must be numbers and points an integer, got '" +
                          text + "'");
    }
    return sw;
}

ScanResult run_sweep(const RunConfig& cfg) {
    const SweepSpec& sw = *cfg.sweep;
    const std::vector<double> values = linspace(sw.start, sw.stop, sw.points);
    RunSpec spec = to_run_spec(cfg);
    ScanResult out;
    out.parameter = sw.parameter;
    out.values = values;
    out.efficiencies.reserve(values.size());
    for (const double v : values) {
        if (sw.parameter == "time")
            spec.total_time = ns_to_us(v);
        else if (sw.parameter == "delta")
            spec.delta = mhz_to_angular(v);
        else
            spec.n_pulses = static_cast<int>(std::llround(v));
        out.efficiencies.push_back(transfer_efficiency(spec));
    }
    return out;
}

namespace {

fs::path resolve_out_path(const std::string& path) {
    fs::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv(kOutDirEnv)) p = fs::path(dir) / p;
    }
    return p;
}

std::ofstream open_out_file(const fs::path& p) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream f(p);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    return f;
}

std::array<double, 3> final_populations_jump(int n_pulses, double omega,
                                             double total_time) {
    if (total_time == 0.0) return {0.0, 1.0, 0.0};
    const JumpSchedule s =
        stretch_schedule(make_jump_schedule(n_pulses, omega), total_time);
    const auto r = propagate_piecewise(s, 0.0, ket_minus(), 1);
    return r.trace.populations.back();
}

void write_fig2(const std::string& dir, std::vector<std::string>& files) {
    const double omega = mhz_to_angular(kDefaultOmegaMhz);
    const char* names[] = {"fig2a.csv", "fig2b.csv", "fig2c.csv", "fig2d.csv"};
    for (int n = 1; n <= 4; ++n) {
        const fs::path p = fs::path(dir) / names[n - 1];
        std::ofstream f = open_out_file(p);
        f << "t_ns,p0,p_minus1,p_plus1\n";
        for (const double t_ns : linspace(0.0, 125.0 * n, 101)) {
            const auto pops = final_populations_jump(n, omega, ns_to_us(t_ns));
            f << format_double(t_ns) << ',' << format_double(pops[0]) << ','
              << format_double(pops[1]) << ',' << format_double(pops[2]) << '\n';
        }
        files.push_back(p.string());
    }
}

void write_fig3(const std::string& dir, std::vector<std::string>& files) {
    const double omega = mhz_to_angular(kDefaultOmegaMhz);
    {
        const fs::path p = fs::path(dir) / "fig3a.csv";
        std::ofstream f = open_out_file(p);
        f << "t_ns,eff_n1,eff_n2,eff_n3,eff_n4\n";
        for (const double t_ns : linspace(0.0, 500.0, 101)) {
            f << format_double(t_ns);
            for (int n = 1; n <= 4; ++n)
                f << ','
                  << format_double(
                         transfer_efficiency_jump(n, omega, ns_to_us(t_ns)));
            f << '\n';
        }
        files.push_back(p.string());
    }
    {
        const fs::path p = fs::path(dir) / "fig3b.csv";
        std::ofstream f = open_out_file(p);
        f << "t_ns,efficiency\n";
        for (const double t_ns : linspace(0.0, 1800.0, 101)) {
            const double eff =
                t_ns == 0.0
                    ? 0.0
                    : transfer_efficiency_stirap(
                          stirap_defaults(omega, ns_to_us(t_ns)));
            f << format_double(t_ns) << ',' << format_double(eff) << '\n';
        }
        files.push_back(p.string());
    }
}

void write_fig4(const std::string& dir, std::vector<std::string>& files) {
    const double omega = mhz_to_angular(kDefaultOmegaMhz);
    const double t = ns_to_us(500.0);
    const fs::path p = fs::path(dir) / "fig4.csv";
    std::ofstream f = open_out_file(p);
    f << "delta_mhz,eff_jump_n4,eff_stirap\n";
    for (const double d_mhz : linspace(-2.0, 2.0, 101)) {
        const double delta = mhz_to_angular(d_mhz);
        const double ej = transfer_efficiency_jump(4, omega, t, delta);
        const double es =
            transfer_efficiency_stirap(stirap_defaults(omega, t, delta));
        f << format_double(d_mhz) << ',' << format_double(ej) << ','
          << format_double(es) << '\n';
    }
    files.push_back(p.string());
}

void write_fig5(const std::string& dir, std::vector<std::string>& files) {
    const double omega = mhz_to_angular(kDefaultOmegaMhz);
    {
        RunSpec spec;
        spec.protocol = Protocol::jump;
        spec.n_pulses = 4;
        spec.omega = omega;
        spec.total_time = ns_to_us(500.0);
        const fs::path p = fs::path(dir) / "fig5a.csv";
        std::ofstream f = open_out_file(p);
        write_trace_csv(f, run_protocol(spec, 100).trace);
        files.push_back(p.string());
    }
    {
        RunSpec spec;
        spec.protocol = Protocol::stirap;
        spec.omega = omega;
        spec.total_time = ns_to_us(1800.0);
        const fs::path p = fs::path(dir) / "fig5b.csv";
        std::ofstream f = open_out_file(p);
        write_trace_csv(f, run_protocol(spec, 100).trace);
        files.push_back(p.string());
    }
}

}  // namespace

std::vector<std::string> write_figures(const std::string& figure,
                                       const std::string& dir) {
    std::vector<std::string> files;
    if (figure == "fig2" || figure == "all") write_fig2(dir, files);
    if (figure == "fig3" || figure == "all") write_fig3(dir, files);
    if (figure == "fig4" || figure == "all") write_fig4(dir, files);
    if (figure == "fig5" || figure == "all") write_fig5(dir, files);
    if (files.empty())
        throw ConfigError("figure: must be fig2, fig3, fig4, fig5 or all, got '" +
                          figure + "'");
    return files;
}

namespace {

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

std::string sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", x);
    return buf;
}

std::vector<Check> self_checks() {
    const double omega = mhz_to_angular(kDefaultOmegaMhz);
    std::vector<Check> checks;
    {
        double worst = 0.0;
        for (int n = 1; n <= 8; ++n)
            worst = std::max(
                worst, diabatic_correction(make_jump_schedule(n, omega)).deviation);
        checks.push_back({"geodesic_identity", worst <= 1e-8,
                          "max |U_dia - I| = " + sci(worst) + " over N=1..8"});
    }
    {
        double worst = 0.0;
        for (int n = 1; n <= 4; ++n) {
            const JumpSchedule s = make_jump_schedule(n, omega);
            const auto ref = diabatic_correction(s);
            worst = std::max(worst, max_abs(diabatic_correction_pathordered(s, 10000) -
                                            ref.u_dia));
        }
        checks.push_back({"ordered_exponential_crosscheck", worst <= 1e-3,
                          "max discrepancy = " + sci(worst) +
                              " at n_grid=10000 over N=1..4"});
    }
    {
        double worst = 0.0;
        for (const double theta : linspace(0.0, 1.5707963267948966, 100)) {
            const Spectral sp = eig_hermitian(hamiltonian_jump({omega, theta, 0.0}));
            worst = std::max({worst, std::abs(sp.values(0) + omega),
                              std::abs(sp.values(1)), std::abs(sp.values(2) - omega)});
        }
        checks.push_back({"jump_spectrum", worst <= 1e-10,
                          "max |eigenvalue error| = " + sci(worst) +
                              " vs (-Omega, 0, +Omega)"});
    }
    {
        const StirapConfig c = stirap_defaults(omega, 0.5);
        double worst = 0.0;
        for (const double t : linspace(0.0, c.total_time, 101)) {
            const auto [p_t, s_t] = stirap_envelopes(c, t);
            const auto [p_m, s_m] = stirap_envelopes(c, c.total_time - t);
            worst = std::max(worst, std::abs(p_t - s_m) + std::abs(s_t - p_m));
        }
        checks.push_back({"envelope_mirror", worst <= 1e-12 * 2.0 * omega,
                          "max |P(t) - S(T-t)| = " + sci(worst)});
    }
    {
        std::mt19937_64 rng(12345);
        const auto uniform = [&rng] {
            return static_cast<double>(rng() >> 11) * 0x1.0p-53;
        };
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            ComplexMatrix h;
            for (int i = 0; i < 3; ++i) {
                h(i, i) = 2.0 * uniform() - 1.0;
                for (int k = i + 1; k < 3; ++k) {
                    h(i, k) = Complex(2.0 * uniform() - 1.0, 2.0 * uniform() - 1.0);
                    h(k, i) = std::conj(h(i, k));
                }
            }
            worst = std::max(worst,
                             unitarity_defect(expm_unitary(h, 2.0 * uniform())));
        }
        checks.push_back({"exponential_unitarity", worst <= 1e-12,
                          "max |U^dag U - I| = " + sci(worst) + " over 200 draws"});
    }
    return checks;
}

}  // namespace

bool run_self_checks(std::ostream& out) {
    bool all = true;
    for (const auto& c : self_checks()) {
        out << (c.pass ? "PASS " : "FAIL ") << c.name << " (" << c.detail << ")\n";
        all = all && c.pass;
    }
    return all;
}

namespace {

struct CliFlags {
    std::string config_path;
    std::optional<std::string> protocol;
    std::optional<int> n_pulses;
    std::optional<double> omega_mhz;
    std::optional<double> time_ns;
    std::optional<double> delta_mhz;
    std::optional<double> dt_ns;
    std::optional<std::string> sweep;
    std::optional<std::string> out_path;
    std::optional<std::string> format;
    std::optional<std::uint64_t> seed;
};

void add_run_options(CLI::App* cmd, CliFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--protocol", f.protocol, "jump or stirap");
    cmd->add_option("--n", f.n_pulses, "number of jump pulses");
    cmd->add_option("--omega", f.omega_mhz, "coupling Omega/2pi in MHz");
    cmd->add_option("--time", f.time_ns, "total protocol time in ns");
    cmd->add_option("--delta", f.delta_mhz, "two-photon detuning in MHz");
    cmd->add_option("--dt", f.dt_ns, "integrator step in ns (stirap)");
}

RunConfig load_config(const CliFlags& f, bool allow_sweep) {
    RunConfig cfg;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw ConfigError("config: cannot read " + f.config_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("config: " + std::string(e.what()));
        }
        cfg = config_from_json(j);
    }
    if (f.protocol) cfg.protocol = *f.protocol;
    if (f.n_pulses) cfg.n_pulses = *f.n_pulses;
    if (f.omega_mhz) cfg.omega_mhz = *f.omega_mhz;
    if (f.time_ns) cfg.total_time_ns = *f.time_ns;
    if (f.delta_mhz) cfg.delta_mhz = *f.delta_mhz;
    if (f.dt_ns) cfg.dt_ns = *f.dt_ns;
    if (f.sweep) cfg.sweep = parse_sweep(*f.sweep);
    if (f.out_path) {
        OutputSpec out = cfg.output.value_or(OutputSpec{});
        out.path = *f.out_path;
        cfg.output = out;
    }
    if (f.format) {
        OutputSpec out = cfg.output.value_or(OutputSpec{});
        out.format = *f.format;
        cfg.output = out;
    }
    if (f.seed) cfg.seed = *f.seed;
    if (!allow_sweep) cfg.sweep.reset();
    validate(cfg);
    return cfg;
}

void print_efficiency(std::ostream& out, double eff) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", eff);
    out << "efficiency = " << buf << '\n';
}

int cmd_simulate(const CliFlags& f, std::ostream& out) {
    const RunConfig cfg = load_config(f, true);
    if (cfg.sweep) {
        const ScanResult scan = run_sweep(cfg);
        if (cfg.output) {
            const fs::path p = resolve_out_path(cfg.output->path);
            std::ofstream file = open_out_file(p);
            if (cfg.output->format == "csv")
                write_scan_csv(file, scan);
            else
                file << nlohmann::json{{"config", config_to_json(cfg)},
                                       {"scan", scan_to_json(scan)}}
                            .dump(2)
                     << '\n';
            out << "wrote " << p.string() << '\n';
        }
        print_efficiency(out, scan.efficiencies.back());
        return 0;
    }
    const RunSpec spec = to_run_spec(cfg);
    const PropagationResult run = run_protocol(spec, 100);
    if (cfg.output) {
        const fs::path p = resolve_out_path(cfg.output->path);
        std::ofstream file = open_out_file(p);
        if (cfg.output->format == "csv")
            write_trace_csv(file, run.trace);
        else
            file << nlohmann::json{{"config", config_to_json(cfg)},
                                   {"trace", trace_to_json(run.trace)}}
                        .dump(2)
                 << '\n';
        out << "wrote " << p.string() << '\n';
    }
    print_efficiency(out, run.trace.populations.back()[kIdxPlus]);
    return 0;
}

int cmd_dump_schedule(const CliFlags& f, std::ostream& out) {
    const RunConfig cfg = load_config(f, false);
    const RunSpec spec = to_run_spec(cfg);
    nlohmann::json j;
    if (spec.protocol == Protocol::jump) {
        const JumpSchedule s = stretch_schedule(
            make_jump_schedule(spec.n_pulses, spec.omega), spec.total_time);
        j = schedule_to_json(s);
    } else {
        j = stirap_to_json(to_stirap_config(spec));
    }
    if (f.out_path) {
        const fs::path p = resolve_out_path(*f.out_path);
        std::ofstream file = open_out_file(p);
        file << j.dump(2) << '\n';
        out << "wrote " << p.string() << '\n';
    } else {
        out << j.dump(2) << '\n';
    }
    return 0;
}

int cmd_reproduce(const std::string& figure, const std::optional<std::string>& dir,
                  std::ostream& out) {
    std::string target = ".";
    if (dir)
        target = *dir;
    else if (const char* env = std::getenv(kOutDirEnv))
        target = env;
    for (const auto& path : write_figures(figure, target))
        out << "wrote " << path << '\n';
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Accelerated adiabatic population transfer in a three-level system"};
    app.require_subcommand(1);

    CliFlags sim_flags;
    CLI::App* sim = app.add_subcommand(
        "simulate", "Run one protocol or a parameter sweep");
    add_run_options(sim, sim_flags);
    sim->add_option("--sweep", sim_flags.sweep,
                    "sweep spec 'param:start:stop:points' (param: time, delta, n)");
    sim->add_option("--out", sim_flags.out_path, "output file path");
    sim->add_option("--format", sim_flags.format, "csv or json");
    sim->add_option("--seed", sim_flags.seed, "random seed");

    CLI::App* verify = app.add_subcommand("verify", "Run the built-in cross checks");

    std::string figure;
    std::optional<std::string> reproduce_dir;
    CLI::App* reproduce =
        app.add_subcommand("reproduce", "Write the reference figure data files");
    reproduce->add_option("figure", figure, "fig2, fig3, fig4, fig5 or all")
        ->required();
    reproduce->add_option("--out", reproduce_dir, "output directory");

    CliFlags dump_flags;
    CLI::App* dump = app.add_subcommand("dump-schedule",
                                        "Print the resolved schedule as JSON");
    add_run_options(dump, dump_flags);
    dump->add_option("--out", dump_flags.out_path, "output file path");

    std::vector<const char*> argv;
    argv.push_back("qjump");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (sim->parsed()) return cmd_simulate(sim_flags, out);
        if (verify->parsed()) return run_self_checks(out) ? 0 : 1;
        if (reproduce->parsed()) return cmd_reproduce(figure, reproduce_dir, out);
        if (dump->parsed()) return cmd_dump_schedule(dump_flags, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const InvalidPulseCount& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const NonConvergence& e) {
        err << "non-convergence: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qjump
