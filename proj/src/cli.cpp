#include "exind/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "exind/crosscheck.hpp"
#include "exind/estimation.hpp"
#include "exind/graph.hpp"
#include "exind/independence.hpp"
#include "exind/measure_io.hpp"
#include "exind/simulation.hpp"

namespace exind::cli {
namespace {

// Thrown for flag combinations CLI11 cannot express.
struct FlagError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string measure_path;
  std::vector<int> block_a;
  std::vector<int> block_c;
  std::string dot_path;
  bool certify = false;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::optional<int> conditional;
  std::string out_path;
  std::string in_path;
  double q = kDefaultChiLevel;
  double threshold = kDefaultEdgeThreshold;
  bool graph = false;
  std::string csv_path;
  std::size_t n_perm = kDefaultPermutations;
  double alpha = kDefaultAlpha;
  std::size_t d = 0;
  std::optional<std::size_t> d_max;
  std::size_t atoms = 0;
  std::optional<std::size_t> atoms_max;
  std::size_t trials = 0;
};

ExponentMeasure load_valid(const std::string& path) {
  auto measure = load_measure(path);
  require_valid(measure);
  return measure;
}

Bipartition parse_blocks(const Options& o, std::size_t d) {
  try {
    return Bipartition::from_one_based(d, o.block_a, o.block_c);
  } catch (const std::invalid_argument& e) {
    throw FlagError(std::string("--A/--C: ") + e.what());
  }
}

int cmd_validate(const Options& o, std::ostream& out) {
  const auto measure = load_measure(o.measure_path);
  const auto violations = validate(measure);
  nlohmann::json list = nlohmann::json::array();
  for (const auto& v : violations) {
    const bool coordinate = v.code == ViolationCode::kDeadCoordinate;
    list.push_back({{"code", code_name(v.code)},
                    {coordinate ? "coordinate" : "atom", coordinate ? v.index + 1 : v.index},
                    {"message", v.to_string()}});
  }
  out << nlohmann::json{{"valid", violations.empty()}, {"violations", list}}.dump(2) << '\n';
  return violations.empty() ? kOk : kInputError;
}

int cmd_check(const Options& o, std::ostream& out) {
  const auto measure = load_valid(o.measure_path);
  const auto part = parse_blocks(o, measure.dim());
  const auto report = full_report(measure, part);
  out << to_json(report).dump(2) << '\n';
  if (!report.agree) return kDisagreement;
  return report.cond_i.holds ? kOk : kDependent;
}

int cmd_graph(const Options& o, std::ostream& out) {
  const auto measure = load_valid(o.measure_path);
  const auto graph = build_graph(measure);
  auto doc = to_json(graph);
  if (o.certify) {
    const bool certified = certify_partition_bruteforce(measure);
    doc["certified"] = certified;
    if (!certified) {
      out << doc.dump(2) << '\n';
      return kDisagreement;
    }
  }
  if (!o.dot_path.empty()) {
    std::ofstream dot(o.dot_path);
    if (!dot) throw std::runtime_error("cannot write " + o.dot_path);
    dot << to_dot(graph);
  }
  out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_simulate(const Options& o, std::ostream& out) {
  const auto measure = load_valid(o.measure_path);
  if (o.conditional && (*o.conditional < 1 || static_cast<std::size_t>(*o.conditional) > measure.dim())) {
    throw FlagError("--conditional must lie in 1.." + std::to_string(measure.dim()));
  }
  const auto batch = o.conditional
                         ? sample_conditional(measure, static_cast<std::size_t>(*o.conditional - 1), o.n, o.seed)
                         : sample_max_stable(measure, o.n, o.seed);
  save_batch(batch, o.out_path);
  out << metadata_json(batch).dump(2) << '\n';
  return kOk;
}

int cmd_estimate(const Options& o, std::ostream& out) {
  const auto batch = load_batch(o.in_path);
  if (batch.kind == SampleKind::kConditional) {
    if (o.block_a.empty() || o.block_c.empty()) throw FlagError("conditional batches need --A and --C");
    const auto part = parse_blocks(o, batch.d);
    const auto result = factorization_test(batch, part, o.n_perm, o.alpha, o.seed);
    auto doc = to_json(result);
    doc["k"] = *batch.k + 1;
    out << doc.dump(2) << '\n';
    return kOk;
  }
  const auto chi = chi_empirical(batch, o.q);
  auto doc = to_json(chi);
  if (o.graph) {
    doc["threshold"] = o.threshold;
    doc["graph"] = to_json(graph_from_chi(chi, o.threshold));
  }
  if (!o.csv_path.empty()) {
    std::ofstream csv(o.csv_path);
    if (!csv) throw std::runtime_error("cannot write " + o.csv_path);
    write_csv(chi, csv);
  }
  out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_crosscheck(const Options& o, std::ostream& out) {
  CrosscheckConfig config;
  config.d_min = o.d;
  config.d_max = o.d_max.value_or(o.d);
  config.atoms_min = o.atoms;
  config.atoms_max = o.atoms_max.value_or(o.atoms);
  config.trials = o.trials;
  config.seed = o.seed;
  CrosscheckSummary summary;
  try {
    summary = run_crosscheck(config);
  } catch (const std::invalid_argument& e) {
    throw FlagError(e.what());
  }
  out << to_json(summary).dump(2) << '\n';
  return summary.ok() ? kOk : kDisagreement;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal independence for exponent measures with atoms on faces", "exind"};
  app.require_subcommand(1);
  Options o;

  auto* validate_cmd = app.add_subcommand("validate", "Check a measure file against the model invariants");
  validate_cmd->add_option("measure", o.measure_path, "Measure JSON")->required();

  auto* check_cmd = app.add_subcommand("check", "Decide extremal independence of (A, C) by every criterion");
  check_cmd->add_option("measure", o.measure_path, "Measure JSON")->required();
  check_cmd->add_option("--A", o.block_a, "Block A, 1-based, comma separated")->required()->delimiter(',');
  check_cmd->add_option("--C", o.block_c, "Block C, 1-based, comma separated")->required()->delimiter(',');

  auto* graph_cmd = app.add_subcommand("graph", "Extremal dependence graph and its components");
  graph_cmd->add_option("measure", o.measure_path, "Measure JSON")->required();
  graph_cmd->add_option("--dot", o.dot_path, "Write Graphviz output here");
  graph_cmd->add_flag("--certify", o.certify, "Brute-force check of the partition over all bipartitions");

  auto* simulate_cmd = app.add_subcommand("simulate", "Exact samples of X or of Y^k");
  simulate_cmd->add_option("measure", o.measure_path, "Measure JSON")->required();
  simulate_cmd->add_option("--n", o.n, "Sample count")->required()->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", o.seed, "RNG seed")->required();
  simulate_cmd->add_option("--conditional", o.conditional, "Sample Y^k for this 1-based k");
  simulate_cmd->add_option("--out", o.out_path, "CSV path; metadata goes to <out>.meta.json")->required();

  auto* estimate_cmd = app.add_subcommand("estimate", "Chi matrix or factorization test from samples");
  estimate_cmd->add_option("--in", o.in_path, "Samples CSV written by simulate")->required();
  estimate_cmd->add_option("--q", o.q, "Quantile level for chi")->check(CLI::Range(0.0, 1.0));
  estimate_cmd->add_option("--threshold", o.threshold, "Edge threshold on chi");
  estimate_cmd->add_flag("--graph", o.graph, "Also report the thresholded graph");
  estimate_cmd->add_option("--csv", o.csv_path, "Write the chi matrix as CSV");
  estimate_cmd->add_option("--A", o.block_a, "Block A for conditional batches")->delimiter(',');
  estimate_cmd->add_option("--C", o.block_c, "Block C for conditional batches")->delimiter(',');
  estimate_cmd->add_option("--n-perm", o.n_perm, "Permutations")->check(CLI::Range(std::size_t{kMinPermutations},
                                                                                     std::size_t{1} << 24));
  estimate_cmd->add_option("--alpha", o.alpha, "Test level")->check(CLI::Range(0.0, 1.0));
  auto* estimate_seed = estimate_cmd->add_option("--seed", o.seed, "Permutation seed");

  auto* crosscheck_cmd = app.add_subcommand("crosscheck", "Random battery: all criteria must agree");
  crosscheck_cmd->add_option("--d", o.d, "Dimension (minimum when --d-max is given)")->required();
  crosscheck_cmd->add_option("--d-max", o.d_max, "Largest dimension");
  crosscheck_cmd->add_option("--atoms", o.atoms, "Atoms per measure (minimum when --atoms-max is given)")->required();
  crosscheck_cmd->add_option("--atoms-max", o.atoms_max, "Largest atom count");
  crosscheck_cmd->add_option("--trials", o.trials, "Random measures")->required();
  crosscheck_cmd->add_option("--seed", o.seed, "RNG seed")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (estimate_cmd->parsed() && !o.block_a.empty() && estimate_seed->count() == 0) {
      throw FlagError("--seed is required for the factorization test");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "exind: " << e.what() << '\n';
    return kBadFlags;
  } catch (const FlagError& e) {
    err << "exind: " << e.what() << '\n';
    return kBadFlags;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    if (check_cmd->parsed()) return cmd_check(o, out);
    if (graph_cmd->parsed()) return cmd_graph(o, out);
    if (simulate_cmd->parsed()) return cmd_simulate(o, out);
    if (estimate_cmd->parsed()) return cmd_estimate(o, out);
    if (crosscheck_cmd->parsed()) return cmd_crosscheck(o, out);
  } catch (const FlagError& e) {
    err << "exind: " << e.what() << '\n';
    return kBadFlags;
  } catch (const std::exception& e) {
    err << "exind: " << e.what() << '\n';
    return kInputError;
  }
  return kBadFlags;
}

}  // namespace exind::cli
