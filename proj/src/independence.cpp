#include "exind/independence.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "exind/rng.hpp"

namespace exind {
namespace {

constexpr std::array<double, 4> kTensorLevels{0.5, 1.0, 2.0, 5.0};

void check_dims(const ExponentMeasure& measure, const Bipartition& part) {
  if (part.dim() != measure.dim()) throw std::invalid_argument("bipartition dimension does not match the measure");
}

void gather(std::span<const double> x, std::span<const std::size_t> idx, std::vector<double>& out) {
  out.resize(idx.size());
  for (std::size_t t = 0; t < idx.size(); ++t) out[t] = x[idx[t]];
}

// Larger score wins; ties go to the lexicographically smaller point.
bool replaces(double score, std::span<const double> point, double best_score,
              const std::optional<std::vector<double>>& best_point) {
  if (!best_point) return true;
  if (score != best_score) return score > best_score;
  return std::lexicographical_compare(point.begin(), point.end(), best_point->begin(), best_point->end());
}

// Split evaluation shared by conditions (ii) and (ii)'.
struct BlockEvaluator {
  ExponentMeasure marginal_a;
  ExponentMeasure marginal_c;
  std::vector<std::size_t> idx_a;
  std::vector<std::size_t> idx_c;
  std::vector<double> xa;
  std::vector<double> xc;

  BlockEvaluator(const ExponentMeasure& measure, const Bipartition& part)
      : marginal_a(marginalize(measure, part.a())),
        marginal_c(marginalize(measure, part.c())),
        idx_a(part.a().members()),
        idx_c(part.c().members()) {}
};

}  // namespace

void Grid::add(std::span<const double> point) {
  if (point.size() != dim_) throw std::invalid_argument("grid point has the wrong dimension");
  data_.insert(data_.end(), point.begin(), point.end());
}

Grid default_grid(std::size_t d, std::uint64_t seed) {
  if (d == 0) throw std::invalid_argument("grid dimension must be positive");
  Grid grid(d);
  std::vector<double> x(d);
  auto gen = substream(seed, Stream::kGrid, 0);
  const bool full_tensor = d <= 6;  // 4^6 == kTensorGridCap
  if (full_tensor) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) total *= kTensorLevels.size();
    for (std::size_t n = 0; n < total; ++n) {
      std::size_t rem = n;
      for (std::size_t i = d; i-- > 0;) {
        x[i] = kTensorLevels[rem % kTensorLevels.size()];
        rem /= kTensorLevels.size();
      }
      grid.add(x);
    }
  } else {
    for (std::size_t n = 0; n < kTensorGridCap; ++n) {
      for (auto& v : x) v = kTensorLevels[uniform_index(gen, kTensorLevels.size())];
      grid.add(x);
    }
  }
  for (std::size_t n = 0; n < kRandomGridPoints; ++n) {
    for (auto& v : x) v = 0.1 + 9.9 * uniform_positive(gen);
    grid.add(x);
  }
  return grid;
}

Grid default_boundary_grid(std::size_t d, std::uint64_t seed) {
  Grid grid = default_grid(d, seed);
  std::vector<double> x(d, 1.0);
  for (std::size_t i = 0; i < d; ++i) {
    x[i] = 0.0;
    grid.add(x);
    x[i] = 1.0;
  }
  grid.add(std::vector<double>(d, 0.0));
  return grid;
}

ConditionI check_condition_i(const ExponentMeasure& measure, const Bipartition& part) {
  check_dims(measure, part);
  for (std::size_t j = 0; j < measure.size(); ++j) {
    if (!part.separates(measure.face(j))) return {false, j};
  }
  return {true, std::nullopt};
}

ConditionII check_condition_ii(const ExponentMeasure& measure, const Bipartition& part, const Grid& grid,
                               double tol) {
  check_dims(measure, part);
  if (grid.dim() != measure.dim()) throw std::invalid_argument("grid dimension does not match the measure");
  if (grid.size() == 0) throw std::invalid_argument("condition (ii) needs a nonempty grid");
  BlockEvaluator eval(measure, part);
  ConditionII out{true, check_condition_i(measure, part).holds, std::nullopt, 0.0};
  std::optional<std::vector<double>> worst;
  double worst_score = -1.0;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto x = grid.point(p);
    const double whole = exponent_function(measure, x);
    gather(x, eval.idx_a, eval.xa);
    gather(x, eval.idx_c, eval.xc);
    const double split = exponent_function(eval.marginal_a, eval.xa) + exponent_function(eval.marginal_c, eval.xc);
    const double score = std::abs(whole - split) / (1.0 + std::abs(whole));
    if (score > tol) out.holds = false;
    if (replaces(score, x, worst_score, worst)) {
      worst_score = score;
      worst.emplace(x.begin(), x.end());
    }
  }
  out.worst_defect = worst_score;
  if (!out.holds) out.worst_point = std::move(worst);
  return out;
}

ConditionIII check_condition_iii(const ExponentMeasure& measure, const Bipartition& part, std::size_t enum_cap) {
  check_dims(measure, part);
  const std::size_t d = measure.dim();
  auto charged = [&](IndexSet subset) {
    return std::ranges::any_of(measure.faces(), [subset](IndexSet f) { return subset.subset_of(f); });
  };
  ConditionIII out{true, d <= enum_cap ? EnumerationMode::kFull : EnumerationMode::kPairwise, std::nullopt};
  auto consider = [&](IndexSet subset) {
    if (!charged(subset)) return;
    out.holds = false;
    if (!out.violating_subset || smaller_subset(subset, *out.violating_subset)) out.violating_subset = subset;
  };
  if (out.mode == EnumerationMode::kFull) {
    const IndexSet::Mask end = IndexSet::full(d).mask();
    for (IndexSet::Mask m = 1; m <= end && m != 0; ++m) {
      const IndexSet subset(m);
      if (subset.intersects(part.a()) && subset.intersects(part.c())) consider(subset);
    }
  } else {
    for (std::size_t a : part.a().members()) {
      for (std::size_t c : part.c().members()) consider(IndexSet({a, c}));
    }
  }
  return out;
}

DfFactorization df_factorization(const ExponentMeasure& measure, const Bipartition& part, const Grid& grid,
                                 double tol) {
  check_dims(measure, part);
  if (grid.dim() != measure.dim()) throw std::invalid_argument("grid dimension does not match the measure");
  BlockEvaluator eval(measure, part);
  DfFactorization out{true, std::nullopt, 0.0};
  std::optional<std::vector<double>> worst;
  double worst_score = -1.0;
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const auto x = grid.point(p);
    const double whole = exponent_function_nonneg(measure, x);
    gather(x, eval.idx_a, eval.xa);
    gather(x, eval.idx_c, eval.xc);
    const double split =
        exponent_function_nonneg(eval.marginal_a, eval.xa) + exponent_function_nonneg(eval.marginal_c, eval.xc);
    bool ok = true;
    if (std::isinf(whole) || std::isinf(split)) {
      ok = std::isinf(whole) && std::isinf(split);
    } else {
      ok = std::abs(whole - split) <= tol * (1.0 + whole);
    }
    const double gap = std::abs(std::exp(-whole) - std::exp(-split));
    // Failing points outrank passing ones when choosing the witness.
    const double score = ok ? gap : 2.0 + gap;
    if (!ok) out.holds = false;
    if (replaces(score, x, worst_score, worst)) {
      worst_score = score;
      worst.emplace(x.begin(), x.end());
    }
    out.worst_gap = std::max(out.worst_gap, gap);
  }
  if (!out.holds) out.worst_point = std::move(worst);
  return out;
}

double joint_exceedance_mass(const ExponentMeasure& measure, const Bipartition& part, std::span<const double> x) {
  check_dims(measure, part);
  if (x.size() != measure.dim()) throw std::invalid_argument("point dimension does not match the measure");
  for (double v : x) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::domain_error("joint_exceedance_mass requires finite x > 0");
  }
  const auto idx_a = part.a().members();
  const auto idx_c = part.c().members();
  double total = 0.0;
  for (const auto& atom : measure.atoms()) {
    double reach_a = 0.0;
    double reach_c = 0.0;
    for (std::size_t i : idx_a) reach_a = std::max(reach_a, atom.omega[i] / x[i]);
    for (std::size_t i : idx_c) reach_c = std::max(reach_c, atom.omega[i] / x[i]);
    total += atom.mass * std::min(reach_a, reach_c);
  }
  return total;
}

double interior_face_mass(const ExponentMeasure& measure, IndexSet subset, double n) {
  if (subset.empty()) throw std::invalid_argument("interior_face_mass needs a nonempty subset");
  if (!subset.subset_of(IndexSet::full(measure.dim()))) throw std::invalid_argument("subset exceeds the dimension");
  if (!(n > 0.0)) throw std::domain_error("interior_face_mass needs n > 0");
  const auto members = subset.members();
  double total = 0.0;
  for (std::size_t j = 0; j < measure.size(); ++j) {
    if (!subset.subset_of(measure.face(j))) continue;
    double smallest = std::numeric_limits<double>::infinity();
    for (std::size_t i : members) smallest = std::min(smallest, measure.atom(j).omega[i]);
    total += measure.atom(j).mass * n * smallest;
  }
  return total;
}

IndependenceReport full_report(const ExponentMeasure& measure, const Bipartition& part, const ReportOptions& options) {
  require_valid(measure);
  check_dims(measure, part);
  const Grid grid = options.grid ? *options.grid : default_grid(measure.dim(), options.grid_seed);
  const Grid boundary = options.boundary_grid ? *options.boundary_grid
                                              : default_boundary_grid(measure.dim(), options.grid_seed);
  IndependenceReport report{
      check_condition_i(measure, part),
      check_condition_ii(measure, part, grid, options.tol),
      check_condition_iii(measure, part, options.enum_cap),
      df_factorization(measure, part, boundary, options.tol),
      structural_new_notion(measure, part),
      false,
  };
  const bool v = report.cond_i.holds;
  report.agree = report.cond_ii.holds == v && report.cond_ii.structural == v && report.cond_iii.holds == v &&
                 report.df.holds == v && report.new_notion.holds == v;
  return report;
}

nlohmann::json to_json(const IndependenceReport& report) {
  using nlohmann::json;
  json witnesses = json::object();
  if (report.cond_i.violating_atom) witnesses["cond_i"] = {{"atom", *report.cond_i.violating_atom}};
  if (report.cond_ii.worst_point) {
    witnesses["cond_ii"] = {{"point", *report.cond_ii.worst_point}, {"defect", report.cond_ii.worst_defect}};
  }
  if (report.cond_iii.violating_subset) {
    std::vector<std::size_t> one_based;
    for (std::size_t i : report.cond_iii.violating_subset->members()) one_based.push_back(i + 1);
    witnesses["cond_iii"] = {{"subset", one_based}};
  }
  if (report.df.worst_point) witnesses["df"] = {{"point", *report.df.worst_point}, {"gap", report.df.worst_gap}};
  for (const auto& cv : report.new_notion.per_k) {
    if (!cv.holds) {
      witnesses["new_notion"] = {{"k", cv.k + 1}, {"atom", *cv.atom}};
      break;
    }
  }
  return {
      {"cond_i", report.cond_i.holds},
      {"cond_ii", report.cond_ii.holds},
      {"cond_ii_structural", report.cond_ii.structural},
      {"cond_iii", report.cond_iii.holds},
      {"cond_iii_mode", report.cond_iii.mode == EnumerationMode::kFull ? "full" : "pairwise"},
      {"df", report.df.holds},
      {"new_notion", report.new_notion.holds},
      {"agree", report.agree},
      {"witnesses", std::move(witnesses)},
  };
}

}  // namespace exind
