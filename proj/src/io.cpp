#include "qjump/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "qjump/units.hpp"

namespace qjump {

namespace {

constexpr const char* kTraceHeader = "t_ns,p0,p_minus1,p_plus1";
constexpr const char* kScanHeader = "param_value,efficiency";

std::vector<double> parse_row(const std::string& line, size_t n_fields, size_t lineno) {
    std::vector<double> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) {
        size_t consumed = 0;
        double v = 0.0;
        try {
            v = std::stod(field, &consumed);
        } catch (const std::exception&) {
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": not a number: '" + field + "'");
        }
        if (consumed != field.size())
            throw std::runtime_error("line " + std::to_string(lineno) +
                                     ": trailing characters in '" + field + "'");
        out.push_back(v);
    }
    if (out.size() != n_fields)
        throw std::runtime_error("line " + std::to_string(lineno) + ": expected " +
                                 std::to_string(n_fields) + " fields, got " +
                                 std::to_string(out.size()));
    return out;
}

std::string read_header(std::istream& is, const char* expected) {
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != expected)
        throw std::runtime_error("bad header: expected '" + std::string(expected) +
                                 "', got '" + line + "'");
    return line;
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.15g", x);
    return buf;
}

void write_trace_csv(std::ostream& os, const PopulationTrace& trace) {
    os << kTraceHeader << '\n';
    for (size_t i = 0; i < trace.times.size(); ++i) {
        const auto& p = trace.populations[i];
        os << format_double(us_to_ns(trace.times[i])) << ',' << format_double(p[0])
           << ',' << format_double(p[1]) << ',' << format_double(p[2]) << '\n';
    }
}

PopulationTrace read_trace_csv(std::istream& is) {
    read_header(is, kTraceHeader);
    PopulationTrace trace;
    std::string line;
    size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto row = parse_row(line, 4, lineno);
        trace.times.push_back(ns_to_us(row[0]));
        trace.populations.push_back({row[1], row[2], row[3]});
    }
    return trace;
}

void write_scan_csv(std::ostream& os, const ScanResult& scan) {
    os << kScanHeader << '\n';
    for (size_t i = 0; i < scan.values.size(); ++i)
        os << format_double(scan.values[i]) << ','
           << format_double(scan.efficiencies[i]) << '\n';
}

ScanResult read_scan_csv(std::istream& is) {
    read_header(is, kScanHeader);
    ScanResult scan;
    std::string line;
    size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto row = parse_row(line, 2, lineno);
        scan.values.push_back(row[0]);
        scan.efficiencies.push_back(row[1]);
    }
    return scan;
}

nlohmann::json trace_to_json(const PopulationTrace& trace) {
    nlohmann::json samples = nlohmann::json::array();
    for (size_t i = 0; i < trace.times.size(); ++i) {
        const auto& p = trace.populations[i];
        samples.push_back({{"t_ns", us_to_ns(trace.times[i])},
                           {"p0", p[0]},
                           {"p_minus1", p[1]},
                           {"p_plus1", p[2]}});
    }
    return {{"samples", samples}};
}

nlohmann::json scan_to_json(const ScanResult& scan) {
    nlohmann::json points = nlohmann::json::array();
    for (size_t i = 0; i < scan.values.size(); ++i)
        points.push_back({{"param_value", scan.values[i]},
                          {"efficiency", scan.efficiencies[i]}});
    return {{"parameter", scan.parameter}, {"points", points}};
}

nlohmann::json schedule_to_json(const JumpSchedule& s) {
    nlohmann::json segments = nlohmann::json::array();
    for (int i = 0; i < s.n_pulses(); ++i)
        segments.push_back(
            {{"theta_rad", s.thetas[i]}, {"tau_ns", us_to_ns(s.taus[i])}});
    return {{"protocol", "jump"},
            {"omega_mhz", angular_to_mhz(s.omega)},
            {"n_pulses", s.n_pulses()},
            {"total_time_ns", us_to_ns(s.total_time())},
            {"segments", segments}};
}

nlohmann::json stirap_to_json(const StirapConfig& c) {
    return {{"protocol", "stirap"},
            {"omega_mhz", angular_to_mhz(c.omega)},
            {"total_time_ns", us_to_ns(c.total_time)},
            {"delay_ns", us_to_ns(c.delay)},
            {"width_ns", us_to_ns(c.width)},
            {"delta_mhz", angular_to_mhz(c.delta)},
            {"dt_ns", us_to_ns(c.dt)}};
}

}  // namespace qjump
