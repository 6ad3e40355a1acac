#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "iscp/analysis.hpp"
#include "iscp/enumerator.hpp"
#include "iscp/experiment.hpp"
#include "iscp/instance.hpp"

namespace iscp {

using json = nlohmann::json;

// Instance files: {"m": int, "sets": [[int,...],...], "mean_costs": [...],
// "radius": {"abs": x} | {"rel": x}}. Throws std::runtime_error on schema
// errors.
IscpInstance instance_from_json(const json& doc);
json instance_to_json(const IscpInstance& instance);
IscpInstance read_instance(const std::string& path);
void write_instance(const IscpInstance& instance, const std::string& path);

// Recovers the radius spec of a box built from centres; throws when the
// box is neither uniform absolute nor uniform relative.
RadiusSpec infer_radius(const IscpInstance& instance);

json approx_set_to_json(const UnitedApproxSet& united);
json optimal_set_to_json(const std::vector<OptimalSolutionRecord>& optimal);
json stats_to_json(const InstanceStats& stats);

json experiment_to_json(const ExperimentResult& result);
// Throws when the stored mean/std do not match the replicates.
ExperimentResult experiment_from_json(const json& doc);
json mp_to_json(const MpResult& result);
json fixture_report_to_json(const FixtureReport& report);

// CSV outputs.
void write_table_csv(std::ostream& os, const std::vector<ExperimentResult>& results);
void write_histogram_csv(std::ostream& os, const std::vector<HistogramBin>& bins);
void write_probability_csv(std::ostream& os, const UnitedApproxSet& united,
                           const RepresentativenessPolicy& policy);

json read_json(const std::string& path);
// Writes text to path, or stdout when path is empty or "-".
void write_text(const std::string& path, const std::string& text);

// Shortest decimal text that round-trips, integers without a fraction.
std::string format_number(double value);

}  // namespace iscp
