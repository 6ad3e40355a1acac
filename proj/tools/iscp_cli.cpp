#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iscp/analysis.hpp"
#include "iscp/enumerator.hpp"
#include "iscp/experiment.hpp"
#include "iscp/generator.hpp"
#include "iscp/greedy.hpp"
#include "iscp/io.hpp"

namespace {

using namespace iscp;

constexpr int kInputError = 1;
constexpr int kDiffFailure = 2;

struct GlobalOptions {
  std::uint64_t seed = 1;
  std::optional<std::string> mode;
  std::string domain = "integer";
  std::string estimator = "mc";
  std::string out = "-";
  std::size_t threads = 1;
};

GreedyConfig greedy_config(const GlobalOptions& g, RatioMode fallback) {
  return GreedyConfig{g.mode ? parse_ratio_mode(*g.mode) : fallback};
}

ProbabilityConfig probability_config(const GlobalOptions& g, std::size_t samples) {
  ProbabilityConfig p;
  p.source = parse_probability_source(g.estimator);
  p.greedy = greedy_config(g, RatioMode::kFloorInteger);
  p.domain = parse_domain(g.domain);
  p.samples = samples;
  return p;
}

SamplingPlan sampling_plan(const GlobalOptions& g, std::size_t samples) {
  SamplingPlan plan;
  plan.samples = samples;
  plan.seed = g.seed;
  plan.domain = parse_domain(g.domain);
  plan.workers = g.threads;
  return plan;
}

Scenario parse_scenario(const std::string& text, const IscpInstance& instance) {
  if (text.empty()) return instance.mean_costs();
  Scenario c;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) c.push_back(std::stod(item));
  if (c.size() != instance.n()) {
    throw std::invalid_argument("scenario has " + std::to_string(c.size()) +
                                " costs, instance has " + std::to_string(instance.n()) +
                                " sets");
  }
  if (!box_contains(instance.cost_box(), c)) {
    throw std::invalid_argument("scenario lies outside the cost box");
  }
  return c;
}

void report_time(const char* what, std::chrono::steady_clock::time_point start) {
  const double s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cerr << what << " finished in " << s << " s\n";
}

int run_generate(const GlobalOptions& g, int m, int q, std::optional<double> delta,
                 std::optional<double> rel, std::size_t count) {
  GeneratorConfig config;
  config.m = m;
  config.q = q;
  config.seed = g.seed;
  if (delta && rel) throw std::invalid_argument("--delta and --rel are exclusive");
  config.radius = rel ? RadiusSpec::relative(*rel) : RadiusSpec::absolute(delta.value_or(1.0));
  if (count == 1) {
    write_instance(generate(config), g.out);
    return 0;
  }
  if (g.out == "-") throw std::invalid_argument("--out must name a directory when --count > 1");
  std::filesystem::create_directories(g.out);
  json manifest = json::array();
  const auto batch = generate_batch(config, count);
  for (std::size_t k = 0; k < batch.size(); ++k) {
    std::ostringstream name;
    name << "instance_" << std::setw(5) << std::setfill('0') << k << ".json";
    write_instance(batch[k], (std::filesystem::path(g.out) / name.str()).string());
    manifest.push_back({{"file", name.str()}, {"seed", batch_instance_seed(g.seed, k)}});
  }
  write_text((std::filesystem::path(g.out) / "manifest.json").string(),
             manifest.dump(2) + "\n");
  return 0;
}

int run_solve(const GlobalOptions& g, const std::string& path, const std::string& scenario) {
  const IscpInstance instance = read_instance(path);
  const Scenario c = parse_scenario(scenario, instance);
  const GreedyConfig cfg = greedy_config(g, RatioMode::kFloorInteger);
  const GreedyResult greedy = greedy_cover(instance, c, cfg);
  const double greedy_cost = cost(instance, greedy.solution, c);
  json steps = json::array();
  for (const auto& step : greedy.trace.steps) {
    steps.push_back({{"set", step.chosen + 1}, {"new_elements", step.new_count}});
  }
  json doc;
  doc["mode"] = to_string(cfg.ratio_mode);
  doc["scenario"] = c;
  doc["greedy"] = {{"solution", greedy.solution.to_string()},
                   {"cost", greedy_cost},
                   {"steps", std::move(steps)}};
  if (instance.n() <= 25) {
    const OptimumResult opt = exact_optimum(instance, c);
    doc["optimum"] = {{"solution", opt.solution.to_string()}, {"cost", opt.cost}};
    doc["ratio"] = approx_ratio(greedy_cost, opt.cost);
    doc["harmonic_bound"] = harmonic_bound(instance.m());
  }
  write_text(g.out, doc.dump(2) + "\n");
  return 0;
}

int run_enumerate(const GlobalOptions& g, const std::string& path, std::size_t node_limit) {
  const IscpInstance instance = read_instance(path);
  const GreedyConfig cfg = greedy_config(g, RatioMode::kExactRational);
  if (cfg.ratio_mode != RatioMode::kExactRational) {
    throw std::invalid_argument(
        "enumeration supports --mode exact only; use analyze for floor-mode sampling");
  }
  EnumerationOptions options;
  options.domain = parse_domain(g.domain);
  options.node_limit = node_limit;
  json doc = approx_set_to_json(enumerate_approx(instance, cfg, options).united);
  if (instance.n() <= 25) doc["optimal_set"] = optimal_set_to_json(enumerate_optimal(instance));
  write_text(g.out, doc.dump(2) + "\n");
  return 0;
}

int run_analyze(const GlobalOptions& g, const std::string& path, std::size_t samples,
                double boundary, const std::string& format) {
  const IscpInstance instance = read_instance(path);
  const GreedyConfig cfg = greedy_config(g, RatioMode::kFloorInteger);
  EnumerationOptions options;
  options.domain = parse_domain(g.domain);
  UnitedApproxSet united =
      enumerate_approx(instance, GreedyConfig{RatioMode::kExactRational}, options).united;
  std::vector<ProbabilityEstimate> estimates;
  std::vector<CoverSolution> unknown;
  if (parse_probability_source(g.estimator) == ProbabilitySource::kBranch) {
    attach_branch_probabilities(united);
  } else {
    estimates = estimate_probabilities(instance, cfg, sampling_plan(g, samples));
    unknown = attach_probabilities(united, estimates);
  }
  RepresentativenessPolicy policy{boundary};
  if (format == "csv") {
    std::ostringstream os;
    write_probability_csv(os, united, policy);
    write_text(g.out, os.str());
    return 0;
  }
  const MeanSolutions mean = mean_solutions(instance, cfg);
  json doc = approx_set_to_json(united);
  for (auto& record : doc["approx_set"]) {
    const double p = record.value("probability", 0.0);
    record["classification"] = to_string(classify(p, policy));
  }
  json outside = json::array();
  for (const auto& x : unknown) {
    for (const auto& e : estimates) {
      if (e.solution == x) outside.push_back({{"solution", x.to_string()}, {"frequency", e.frequency()}});
    }
  }
  doc["sampled_outside_set"] = std::move(outside);
  doc["mean_approx"] = {{"solution", mean.approx.to_string()}, {"cost", mean.approx_cost}};
  if (instance.n() <= 25) {
    doc["mean_optimal"] = {{"solution", mean.optimal.to_string()}, {"cost", mean.optimal_cost}};
    doc["stats"] = stats_to_json(instance_stats(united, enumerate_optimal(instance), mean));
  }
  doc["boundary"] = boundary;
  write_text(g.out, doc.dump(2) + "\n");
  return 0;
}

int run_histogram(const GlobalOptions& g, const std::string& path, std::size_t samples,
                  double bin_width) {
  const IscpInstance instance = read_instance(path);
  const auto bins = cost_histogram(instance, greedy_config(g, RatioMode::kFloorInteger),
                                   sampling_plan(g, samples), bin_width);
  std::ostringstream os;
  write_histogram_csv(os, bins);
  write_text(g.out, os.str());
  return 0;
}

int run_distribution_cmd(const GlobalOptions& g, int m, int q, const std::vector<double>& deltas,
                         std::size_t instances, std::size_t replicates, std::size_t samples,
                         const std::string& csv_path) {
  std::vector<ExperimentResult> results;
  json docs = json::array();
  for (double delta : deltas) {
    DistributionConfig config;
    config.m = m;
    config.delta = delta;
    config.q = q;
    config.instances_per_replicate = instances;
    config.replicates = replicates;
    config.seed = g.seed;
    config.probability = probability_config(g, samples);
    config.workers = g.threads;
    const auto start = std::chrono::steady_clock::now();
    results.push_back(run_distribution(config));
    report_time(("distribution m=" + std::to_string(m) + " delta=" + format_number(delta)).c_str(),
                start);
    docs.push_back(experiment_to_json(results.back()));
  }
  write_text(g.out, (docs.size() == 1 ? docs[0] : docs).dump(2) + "\n");
  if (!csv_path.empty()) {
    std::ostringstream os;
    write_table_csv(os, results);
    write_text(csv_path, os.str());
  }
  return 0;
}

int run_mp_cmd(const GlobalOptions& g, int m, int q, double rel, std::size_t instances,
               std::size_t samples) {
  MpConfig config;
  config.m = m;
  config.q = q;
  config.radius = RadiusSpec::relative(rel);
  config.instances = instances;
  config.seed = g.seed;
  config.probability = probability_config(g, samples);
  config.workers = g.threads;
  const auto start = std::chrono::steady_clock::now();
  const MpResult result = run_mp(config);
  report_time("mp", start);
  write_text(g.out, mp_to_json(result).dump(2) + "\n");
  return 0;
}

int run_fixture(const GlobalOptions& g, const std::string& instance_path,
                const std::string& expected_path) {
  const FixtureReport report = run_fixture_report(instance_path, expected_path);
  write_text(g.out, fixture_report_to_json(report).dump(2) + "\n");
  for (const auto& c : report.checks) {
    const char* status = c.passed ? "PASS" : (c.documented ? "DIFF" : "FAIL");
    std::cerr << status << "  " << c.name << "  expected " << c.expected << "  observed "
              << c.observed << "\n";
  }
  return report.passed() ? 0 : kDiffFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interval set cover: greedy solution sets, probabilities and experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--mode", g.mode, "Greedy ratio comparison: exact or floor")
      ->check(CLI::IsMember({"exact", "floor"}));
  app.add_option("--domain", g.domain, "Scenario sampling domain")
      ->check(CLI::IsMember({"continuous", "integer"}))
      ->capture_default_str();
  app.add_option("--estimator", g.estimator, "Probability source: mc or branch")
      ->check(CLI::IsMember({"mc", "montecarlo", "branch"}))
      ->capture_default_str();
  app.add_option("--out", g.out, "Output path, - for stdout")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker count of the partition plan")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  int gen_m = 5;
  int gen_q = 3;
  std::optional<double> gen_delta;
  std::optional<double> gen_rel;
  std::size_t gen_count = 1;
  auto* generate_cmd = app.add_subcommand("generate", "Generate random instances");
  generate_cmd->add_option("--m", gen_m, "Universe size")->check(CLI::PositiveNumber);
  generate_cmd->add_option("--q", gen_q, "Minimum coverage multiplicity")->check(CLI::PositiveNumber);
  generate_cmd->add_option("--delta", gen_delta, "Absolute radius");
  generate_cmd->add_option("--rel", gen_rel, "Relative radius");
  generate_cmd->add_option("--count", gen_count, "Number of instances")->check(CLI::PositiveNumber);

  std::string instance_path;
  std::string scenario;
  auto* solve_cmd = app.add_subcommand("solve", "Greedy and exact solutions at a scenario");
  solve_cmd->add_option("instance", instance_path, "Instance JSON")->required();
  solve_cmd->add_option("--scenario", scenario, "Comma-separated costs (default: midpoints)");

  std::size_t node_limit = 1'000'000;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Possible approximate and optimal solutions");
  enumerate_cmd->add_option("instance", instance_path, "Instance JSON")->required();
  enumerate_cmd->add_option("--node-limit", node_limit, "Branch node limit")->capture_default_str();

  std::size_t samples = 1'000'000;
  double boundary = 0.5;
  std::string format = "json";
  auto* analyze_cmd = app.add_subcommand("analyze", "Solution probabilities and statistics");
  analyze_cmd->add_option("instance", instance_path, "Instance JSON")->required();
  analyze_cmd->add_option("--samples", samples, "Scenario samples")->capture_default_str();
  analyze_cmd->add_option("--boundary", boundary, "Representativeness boundary")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  analyze_cmd->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  double bin_width = 1.0;
  auto* histogram_cmd = app.add_subcommand("histogram", "Greedy cost histogram");
  histogram_cmd->add_option("instance", instance_path, "Instance JSON")->required();
  histogram_cmd->add_option("--samples", samples, "Scenario samples")->capture_default_str();
  histogram_cmd->add_option("--bins", bin_width, "Bin width")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  auto* experiment_cmd = app.add_subcommand("experiment", "Bulk experiments");
  experiment_cmd->require_subcommand(1);
  experiment_cmd->fallthrough();
  int exp_m = 5;
  int exp_q = 3;
  std::vector<double> deltas{1.0};
  std::size_t exp_instances = 200;
  std::size_t replicates = 20;
  std::size_t exp_samples = 10'000;
  std::string csv_path;
  auto* distribution_cmd =
      experiment_cmd->add_subcommand("distribution", "Distribution vectors of P(mean solution)");
  distribution_cmd->add_option("--m", exp_m, "Universe size")->check(CLI::PositiveNumber);
  distribution_cmd->add_option("--q", exp_q, "Minimum coverage multiplicity");
  distribution_cmd->add_option("--delta", deltas, "Absolute radii, comma separated")
      ->delimiter(',');
  distribution_cmd->add_option("--instances", exp_instances, "Instances per replicate")
      ->check(CLI::PositiveNumber);
  distribution_cmd->add_option("--replicates", replicates, "Replicates")
      ->check(CLI::PositiveNumber);
  distribution_cmd->add_option("--samples", exp_samples, "Probability samples per instance")
      ->check(CLI::PositiveNumber);
  distribution_cmd->add_option("--csv", csv_path, "Also write the delta,k,mean,std table");

  int mp_m = 100;
  double rel = 0.05;
  std::size_t mp_instances = 100;
  auto* mp_cmd = experiment_cmd->add_subcommand("mp", "Average solution probabilities");
  mp_cmd->add_option("--m", mp_m, "Universe size")->check(CLI::PositiveNumber);
  mp_cmd->add_option("--q", exp_q, "Minimum coverage multiplicity");
  mp_cmd->add_option("--rel", rel, "Relative radius");
  mp_cmd->add_option("--instances", mp_instances, "Instances")->check(CLI::PositiveNumber);
  mp_cmd->add_option("--samples", exp_samples, "Probability samples per instance")
      ->check(CLI::PositiveNumber);

  std::string expected_path;
  auto* fixture_cmd = app.add_subcommand("fixture", "Compare an instance against expected values");
  fixture_cmd->add_option("instance", instance_path, "Instance JSON")->required();
  fixture_cmd->add_option("expected", expected_path, "Expectations JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*generate_cmd) return run_generate(g, gen_m, gen_q, gen_delta, gen_rel, gen_count);
    if (*solve_cmd) return run_solve(g, instance_path, scenario);
    if (*enumerate_cmd) return run_enumerate(g, instance_path, node_limit);
    if (*analyze_cmd) return run_analyze(g, instance_path, samples, boundary, format);
    if (*histogram_cmd) return run_histogram(g, instance_path, samples, bin_width);
    if (*distribution_cmd) {
      return run_distribution_cmd(g, exp_m, exp_q, deltas, exp_instances, replicates,
                                  exp_samples, csv_path);
    }
    if (*mp_cmd) return run_mp_cmd(g, mp_m, exp_q, rel, mp_instances, exp_samples);
    if (*fixture_cmd) return run_fixture(g, instance_path, expected_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
