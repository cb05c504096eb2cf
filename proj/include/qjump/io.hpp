#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "qjump/experiments.hpp"
#include "qjump/propagate.hpp"
#include "qjump/schedules.hpp"

// Serialization boundary. CSV and JSON carry user-facing units: times in
// ns, frequencies in MHz, angles in rad. Doubles are written with %.15g
// so a parse round trip reproduces the value.

namespace qjump {

std::string format_double(double x);

/// Header: t_ns,p0,p_minus1,p_plus1
void write_trace_csv(std::ostream& os, const PopulationTrace& trace);
PopulationTrace read_trace_csv(std::istream& is);

/// Header: param_value,efficiency. Values are written verbatim; the caller
/// chooses their units.
void write_scan_csv(std::ostream& os, const ScanResult& scan);
ScanResult read_scan_csv(std::istream& is);

nlohmann::json trace_to_json(const PopulationTrace& trace);
nlohmann::json scan_to_json(const ScanResult& scan);
nlohmann::json schedule_to_json(const JumpSchedule& s);
nlohmann::json stirap_to_json(const StirapConfig& c);

}  // namespace qjump
