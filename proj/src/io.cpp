#include "iscp/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace iscp {

std::string format_number(double value) {
  if (value == std::floor(value) && std::abs(value) < 1e15) {
    std::ostringstream os;
    os << static_cast<long long>(value);
    return os.str();
  }
  std::ostringstream os;
  os << std::setprecision(17) << value;
  // Prefer the shortest representation that parses back exactly.
  for (int digits = 6; digits < 17; ++digits) {
    std::ostringstream shorter;
    shorter << std::setprecision(digits) << value;
    if (std::stod(shorter.str()) == value) return shorter.str();
  }
  return os.str();
}

namespace {

json number(double value) {
  if (value == std::floor(value) && std::abs(value) < 9e15) {
    return static_cast<long long>(value);
  }
  return value;
}

json interval_json(const Interval& a) { return json::array({number(a.lo), number(a.hi)}); }

[[noreturn]] void schema_error(const std::string& what) {
  throw std::runtime_error("instance schema: " + what);
}

}  // namespace

IscpInstance instance_from_json(const json& doc) {
  if (!doc.is_object()) schema_error("top level must be an object");
  for (const char* key : {"m", "sets", "mean_costs", "radius"}) {
    if (!doc.contains(key)) schema_error(std::string("missing key '") + key + "'");
  }
  if (!doc["m"].is_number_integer()) schema_error("'m' must be an integer");
  const int m = doc["m"].get<int>();
  std::vector<std::vector<int>> sets;
  if (!doc["sets"].is_array()) schema_error("'sets' must be an array");
  for (const auto& s : doc["sets"]) {
    if (!s.is_array()) schema_error("each set must be an array");
    std::vector<int> elements;
    for (const auto& e : s) {
      if (!e.is_number_integer()) schema_error("set elements must be integers");
      elements.push_back(e.get<int>());
    }
    sets.push_back(std::move(elements));
  }
  std::vector<double> means;
  if (!doc["mean_costs"].is_array()) schema_error("'mean_costs' must be an array");
  for (const auto& c : doc["mean_costs"]) {
    if (!c.is_number()) schema_error("mean costs must be numbers");
    means.push_back(c.get<double>());
  }
  const json& radius = doc["radius"];
  RadiusSpec spec;
  if (radius.is_object() && radius.size() == 1 && radius.contains("abs") &&
      radius["abs"].is_number()) {
    spec = RadiusSpec::absolute(radius["abs"].get<double>());
  } else if (radius.is_object() && radius.size() == 1 && radius.contains("rel") &&
             radius["rel"].is_number()) {
    spec = RadiusSpec::relative(radius["rel"].get<double>());
  } else {
    schema_error("'radius' must be {\"abs\": x} or {\"rel\": x}");
  }
  if (spec.value < 0.0) schema_error("radius must be nonnegative");
  return IscpInstance::with_radius(m, std::move(sets), means, spec);
}

RadiusSpec infer_radius(const IscpInstance& instance) {
  const Box& box = instance.cost_box();
  if (box.empty()) return RadiusSpec::absolute(0.0);
  const double abs0 = 0.5 * box[0].width();
  bool uniform_abs = true;
  for (const auto& a : box) {
    uniform_abs = uniform_abs && std::abs(0.5 * a.width() - abs0) <= 1e-9 * std::max(1.0, abs0);
  }
  if (uniform_abs) return RadiusSpec::absolute(abs0);
  const double rel0 = 0.5 * box[0].width() / midpoint(box[0]);
  for (const auto& a : box) {
    if (std::abs(0.5 * a.width() / midpoint(a) - rel0) > 1e-9) {
      throw std::runtime_error("cost box has no uniform radius");
    }
  }
  return RadiusSpec::relative(rel0);
}

json instance_to_json(const IscpInstance& instance) {
  json doc;
  doc["m"] = instance.m();
  doc["sets"] = instance.sets();
  json means = json::array();
  for (double c : instance.mean_costs()) means.push_back(number(c));
  doc["mean_costs"] = std::move(means);
  const RadiusSpec radius = infer_radius(instance);
  doc["radius"] = json::object(
      {{radius.kind == RadiusSpec::Kind::kAbsolute ? "abs" : "rel", number(radius.value)}});
  return doc;
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

IscpInstance read_instance(const std::string& path) {
  return instance_from_json(read_json(path));
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void write_instance(const IscpInstance& instance, const std::string& path) {
  write_text(path, instance_to_json(instance).dump(2) + "\n");
}

json approx_set_to_json(const UnitedApproxSet& united) {
  json records = json::array();
  for (const auto& r : united.records) {
    json item;
    item["solution"] = r.solution.to_string();
    item["refined"] = interval_json(r.refined_cost);
    item["branch_count"] = r.branch_count;
    item["branch_probability"] = r.branch_probability;
    if (r.probability) item["probability"] = *r.probability;
    json leaves = json::array();
    for (const auto& leaf : r.leaves) {
      leaves.push_back({{"cost", interval_json(leaf.cost)},
                        {"branch_probability", leaf.branch_probability}});
    }
    item["leaves"] = std::move(leaves);
    records.push_back(std::move(item));
  }
  return {{"approx_set", std::move(records)},
          {"nodes", united.nodes_explored},
          {"partial", united.partial}};
}

json optimal_set_to_json(const std::vector<OptimalSolutionRecord>& optimal) {
  json records = json::array();
  for (const auto& r : optimal) {
    records.push_back({{"solution", r.solution.to_string()},
                       {"refined", interval_json(r.refined_cost)}});
  }
  return records;
}

json stats_to_json(const InstanceStats& stats) {
  return {{"p_mean", stats.p_mean},
          {"p_max", stats.p_max},
          {"solution_count", stats.solution_count},
          {"expected_mid_cost", stats.expected_mid_cost},
          {"deviation_opt", number(stats.deviation_opt)},
          {"deviation_approx", number(stats.deviation_approx)}};
}

namespace {

json vector_json(const DistributionVector& v) {
  json out = json::array();
  for (double b : v.bins) out.push_back(b);
  return out;
}

DistributionVector vector_from_json(const json& doc) {
  if (!doc.is_array() || doc.size() != 10) {
    throw std::runtime_error("distribution vector needs 10 entries");
  }
  DistributionVector v;
  for (std::size_t k = 0; k < 10; ++k) v.bins[k] = doc[k].get<double>();
  return v;
}

json probability_config_json(const ProbabilityConfig& p) {
  return {{"estimator", to_string(p.source)},
          {"mode", to_string(p.greedy.ratio_mode)},
          {"domain", to_string(p.domain)},
          {"samples", p.samples}};
}

ProbabilityConfig probability_config_from_json(const json& doc) {
  ProbabilityConfig p;
  p.source = parse_probability_source(doc.at("estimator").get<std::string>());
  p.greedy.ratio_mode = parse_ratio_mode(doc.at("mode").get<std::string>());
  p.domain = parse_domain(doc.at("domain").get<std::string>());
  p.samples = doc.at("samples").get<std::size_t>();
  return p;
}

}  // namespace

json experiment_to_json(const ExperimentResult& result) {
  const DistributionConfig& c = result.config;
  json replicates = json::array();
  for (const auto& v : result.replicates) replicates.push_back(vector_json(v));
  return {{"config",
           {{"m", c.m},
            {"delta", number(c.delta)},
            {"q", c.q},
            {"instances_per_replicate", c.instances_per_replicate},
            {"replicates", c.replicates},
            {"seed", c.seed},
            {"workers", c.workers},
            {"probability", probability_config_json(c.probability)}}},
          {"replicates", std::move(replicates)},
          {"mean", vector_json(result.mean)},
          {"std", vector_json(result.stddev)},
          {"anomalies", result.anomalies}};
}

ExperimentResult experiment_from_json(const json& doc) {
  ExperimentResult result;
  const json& c = doc.at("config");
  result.config.m = c.at("m").get<int>();
  result.config.delta = c.at("delta").get<double>();
  result.config.q = c.at("q").get<int>();
  result.config.instances_per_replicate = c.at("instances_per_replicate").get<std::size_t>();
  result.config.replicates = c.at("replicates").get<std::size_t>();
  result.config.seed = c.at("seed").get<std::uint64_t>();
  result.config.workers = c.at("workers").get<std::size_t>();
  result.config.probability = probability_config_from_json(c.at("probability"));
  for (const auto& v : doc.at("replicates")) {
    result.replicates.push_back(vector_from_json(v));
  }
  result.mean = vector_from_json(doc.at("mean"));
  result.stddev = vector_from_json(doc.at("std"));
  result.anomalies = doc.value("anomalies", std::size_t{0});
  DistributionVector mean;
  DistributionVector stddev;
  summarize(result.replicates, mean, stddev);
  for (std::size_t k = 0; k < 10; ++k) {
    if (std::abs(mean.bins[k] - result.mean.bins[k]) > 1e-9 ||
        std::abs(stddev.bins[k] - result.stddev.bins[k]) > 1e-9) {
      throw std::runtime_error("stored mean/std disagree with replicates at bin " +
                               std::to_string(k + 1));
    }
  }
  return result;
}

json mp_to_json(const MpResult& result) {
  json per = json::array();
  for (const auto& i : result.instances) {
    per.push_back({{"n", i.n},
                   {"solution_count", i.solution_count},
                   {"p_mean", i.p_mean},
                   {"p_max", i.p_max}});
  }
  const MpConfig& c = result.config;
  return {{"config",
           {{"m", c.m},
            {"q", c.q},
            {"radius", json::object({{c.radius.kind == RadiusSpec::Kind::kAbsolute ? "abs" : "rel",
                                      number(c.radius.value)}})},
            {"instances", c.instances},
            {"seed", c.seed},
            {"workers", c.workers},
            {"probability", probability_config_json(c.probability)}}},
          {"instances", std::move(per)},
          {"mp_mean", result.mp_mean},
          {"mp_max", result.mp_max},
          {"support_bias", result.support_bias}};
}

json fixture_report_to_json(const FixtureReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) {
    json item{{"name", c.name},
              {"expected", c.expected},
              {"observed", c.observed},
              {"status", c.passed ? "pass" : (c.documented ? "documented-diff" : "fail")}};
    if (c.delta) item["delta"] = *c.delta;
    if (c.documented) item["note"] = *c.documented;
    checks.push_back(std::move(item));
  }
  return {{"passed", report.passed()},
          {"checks", std::move(checks)},
          {"observations", json::parse(report.observations_json)}};
}

void write_table_csv(std::ostream& os, const std::vector<ExperimentResult>& results) {
  os << "delta,k,mean,std\n";
  for (const auto& r : results) {
    for (std::size_t k = 0; k < 10; ++k) {
      os << format_number(r.config.delta) << ',' << k + 1 << ','
         << std::fixed << std::setprecision(2) << r.mean.bins[k] << ','
         << r.stddev.bins[k] << '\n';
      os.unsetf(std::ios::floatfield);
    }
  }
}

void write_histogram_csv(std::ostream& os, const std::vector<HistogramBin>& bins) {
  os << "bin_lo,bin_hi,frequency\n";
  for (const auto& b : bins) {
    os << format_number(b.lo) << ',' << format_number(b.hi) << ','
       << format_number(b.frequency) << '\n';
  }
}

void write_probability_csv(std::ostream& os, const UnitedApproxSet& united,
                           const RepresentativenessPolicy& policy) {
  os << "solution_bits,frequency,refined_lo,refined_hi,classification\n";
  for (const auto& r : united.records) {
    const double p = r.probability.value_or(0.0);
    os << r.solution.to_string() << ',' << format_number(p) << ','
       << format_number(r.refined_cost.lo) << ','
       << format_number(r.refined_cost.hi) << ','
       << to_string(classify(p, policy)) << '\n';
  }
}

}  // namespace iscp
