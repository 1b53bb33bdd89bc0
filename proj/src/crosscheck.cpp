#include "exind/crosscheck.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "exind/independence.hpp"
#include "exind/measure.hpp"
#include "exind/measure_io.hpp"
#include "exind/rng.hpp"

namespace exind {
namespace {

constexpr std::size_t kMaxRecordedFailures = 10;

Bipartition random_bipartition(std::size_t d, Xoshiro256& gen) {
  // Uniform over proper nonempty subsets for A.
  const IndexSet::Mask full = IndexSet::full(d).mask();
  const IndexSet a(1 + uniform_index(gen, full - 1));
  return Bipartition(d, a, IndexSet(full).minus(a));
}

}  // namespace

CrosscheckSummary run_crosscheck(const CrosscheckConfig& config) {
  if (config.d_min < 2 || config.d_max < config.d_min) throw std::invalid_argument("need 2 <= d_min <= d_max");
  if (config.d_max > 62) throw std::invalid_argument("crosscheck supports d <= 62");
  if (config.atoms_max < config.d_max) throw std::invalid_argument("atoms_max must be at least d_max");
  if (config.atoms_min > config.atoms_max) throw std::invalid_argument("atoms_min exceeds atoms_max");

  struct Grids {
    Grid positive;
    Grid boundary;
  };
  std::map<std::size_t, Grids> grids;
  for (std::size_t d = config.d_min; d <= config.d_max; ++d) {
    grids.emplace(d, Grids{default_grid(d), default_boundary_grid(d)});
  }

  CrosscheckSummary summary;
  for (std::size_t t = 0; t < config.trials; ++t) {
    auto gen = substream(config.seed, Stream::kBattery, t);
    const std::size_t d = config.d_min + uniform_index(gen, config.d_max - config.d_min + 1);
    const std::size_t lo = std::max(d, config.atoms_min);
    const std::size_t n_atoms = lo + uniform_index(gen, config.atoms_max - lo + 1);
    std::optional<Bipartition> block;
    if (t % 2 == 0) {
      block = random_bipartition(d, gen);
      ++summary.block_structured;
    }
    const auto measure = generate_random_measure(d, n_atoms, block, gen());

    std::vector<Bipartition> parts;
    if (d <= config.exhaustive_max_dim) {
      parts = all_bipartitions(d);
    } else {
      for (std::size_t r = 0; r < config.random_bipartitions; ++r) parts.push_back(random_bipartition(d, gen));
      if (block) parts.push_back(*block);
    }

    ReportOptions options;
    options.grid = grids.at(d).positive;
    options.boundary_grid = grids.at(d).boundary;
    for (const auto& part : parts) {
      const auto report = full_report(measure, part, options);
      ++summary.instances;
      const bool v = report.cond_i.holds;
      const bool lemma_ok = report.cond_ii.holds == v && report.cond_ii.structural == v &&
                            report.cond_iii.holds == v && report.df.holds == v;
      const bool theorem_ok = report.new_notion.holds == v;
      if (v && lemma_ok && theorem_ok) ++summary.independent_instances;
      if (!lemma_ok) ++summary.lemma_disagreements;
      if (!theorem_ok) ++summary.theorem_disagreements;
      if ((!lemma_ok || !theorem_ok) && summary.failures.size() < kMaxRecordedFailures) {
        summary.failures.push_back("trial " + std::to_string(t) + " A=" + part.a().to_string() +
                                   " C=" + part.c().to_string() + " report=" + to_json(report).dump() +
                                   " measure=" + to_json(measure).dump());
      }
    }
    ++summary.trials;
  }
  return summary;
}

nlohmann::json to_json(const CrosscheckSummary& summary) {
  return {{"trials", summary.trials},
          {"block_structured", summary.block_structured},
          {"instances", summary.instances},
          {"independent_instances", summary.independent_instances},
          {"lemma_disagreements", summary.lemma_disagreements},
          {"theorem_disagreements", summary.theorem_disagreements},
          {"ok", summary.ok()},
          {"failures", summary.failures}};
}

}  // namespace exind
