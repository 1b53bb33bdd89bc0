#include "exind/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "exind/parallel.hpp"
#include "exind/rng.hpp"

namespace exind {

double chi_exact(const ExponentMeasure& measure, std::size_t i, std::size_t j) {
  if (i >= measure.dim() || j >= measure.dim()) throw std::out_of_range("chi_exact coordinate out of range");
  if (i == j) throw std::invalid_argument("chi_exact needs two distinct coordinates");
  if (!is_standardized(measure)) throw std::invalid_argument("chi_exact requires a standardized measure");
  double total = 0.0;
  for (const auto& atom : measure.atoms()) total += atom.mass * std::min(atom.omega[i], atom.omega[j]);
  return std::clamp(total, 0.0, 1.0);
}

std::vector<double> midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(n);
  for (std::size_t start = 0; start < n;) {
    std::size_t stop = start + 1;
    while (stop < n && values[order[stop]] == values[order[start]]) ++stop;
    const double shared = 0.5 * static_cast<double>(start + 1 + stop);  // mean of ranks start+1..stop
    for (std::size_t t = start; t < stop; ++t) ranks[order[t]] = shared;
    start = stop;
  }
  return ranks;
}

namespace {

std::vector<double> centered_ranks(std::span<const double> values) {
  auto r = midranks(values);
  const double mean = 0.5 * static_cast<double>(values.size() + 1);
  for (double& v : r) v -= mean;
  return r;
}

double sum_squares(std::span<const double> v) { return std::inner_product(v.begin(), v.end(), v.begin(), 0.0); }

bool is_constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

std::vector<double> block_max(const SampleBatch& batch, IndexSet block) {
  const auto members = block.members();
  std::vector<double> out(batch.n, 0.0);
  for (std::size_t s = 0; s < batch.n; ++s) {
    for (std::size_t i : members) out[s] = std::max(out[s], batch.at(s, i));
  }
  return out;
}

}  // namespace

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("spearman needs equal-length inputs");
  if (x.empty() || is_constant(x) || is_constant(y)) return 0.0;
  const auto rx = centered_ranks(x);
  const auto ry = centered_ranks(y);
  return std::inner_product(rx.begin(), rx.end(), ry.begin(), 0.0) / std::sqrt(sum_squares(rx) * sum_squares(ry));
}

ChiMatrix chi_empirical(const SampleBatch& batch, double q) {
  if (batch.kind != SampleKind::kMaxStable) throw std::invalid_argument("chi_empirical needs a max-stable batch");
  if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("quantile level q must lie in (0, 1)");
  if (batch.n < kMinChiSamples) {
    throw std::invalid_argument("chi_empirical needs at least " + std::to_string(kMinChiSamples) + " samples");
  }
  const std::size_t d = batch.d;
  const double n = static_cast<double>(batch.n);
  std::vector<std::vector<char>> exceeds(d);
  ChiMatrix out{d, q, batch.n, std::vector<double>(d * d, 0.0), std::vector<std::size_t>(d * d, 0),
                std::vector<std::size_t>(d, 0)};
  for (std::size_t i = 0; i < d; ++i) {
    const auto ranks = midranks(batch.column(i));
    exceeds[i].resize(batch.n);
    for (std::size_t s = 0; s < batch.n; ++s) {
      exceeds[i][s] = ranks[s] / n > q;
      out.marginal_exceedances[i] += exceeds[i][s];
    }
    if (out.marginal_exceedances[i] < kMinExceedances) {
      throw std::runtime_error("coordinate " + std::to_string(i + 1) + " has only " +
                               std::to_string(out.marginal_exceedances[i]) + " exceedances above q");
    }
  }
  const double denom = n * (1.0 - q);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      std::size_t joint = 0;
      for (std::size_t s = 0; s < batch.n; ++s) joint += exceeds[i][s] && exceeds[j][s];
      const double value = i == j ? 1.0 : std::clamp(static_cast<double>(joint) / denom, 0.0, 1.0);
      out.chi[i * d + j] = out.chi[j * d + i] = value;
      out.joint_exceedances[i * d + j] = out.joint_exceedances[j * d + i] = joint;
    }
  }
  return out;
}

nlohmann::json to_json(const ChiMatrix& chi) {
  nlohmann::json rows = nlohmann::json::array();
  nlohmann::json counts = nlohmann::json::array();
  for (std::size_t i = 0; i < chi.d; ++i) {
    rows.push_back(std::vector<double>(chi.chi.begin() + i * chi.d, chi.chi.begin() + (i + 1) * chi.d));
    counts.push_back(std::vector<std::size_t>(chi.joint_exceedances.begin() + i * chi.d,
                                              chi.joint_exceedances.begin() + (i + 1) * chi.d));
  }
  return {{"d", chi.d}, {"n", chi.n}, {"q", chi.q}, {"chi", rows}, {"n_used", counts}};
}

void write_csv(const ChiMatrix& chi, std::ostream& out) {
  char buf[32];
  for (std::size_t j = 0; j < chi.d; ++j) out << (j ? "," : "") << 'x' << (j + 1);
  out << '\n';
  for (std::size_t i = 0; i < chi.d; ++i) {
    for (std::size_t j = 0; j < chi.d; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", chi.at(i, j));
      out << (j ? "," : "") << buf;
    }
    out << '\n';
  }
}

PermutationTestResult factorization_test(const SampleBatch& batch, const Bipartition& part, std::size_t n_perm,
                                         double alpha, std::uint64_t seed) {
  if (batch.kind != SampleKind::kConditional) throw std::invalid_argument("factorization_test needs a conditional batch");
  if (part.dim() != batch.d) throw std::invalid_argument("bipartition dimension does not match the batch");
  if (n_perm < kMinPermutations) {
    throw std::invalid_argument("factorization_test needs at least " + std::to_string(kMinPermutations) +
                                " permutations");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (batch.n < 2) throw std::invalid_argument("factorization_test needs at least two samples");

  PermutationTestResult result;
  result.n_perm = n_perm;
  const auto u = block_max(batch, part.a());
  const auto v = block_max(batch, part.c());
  if (is_constant(u) || is_constant(v)) {
    result.trivially_independent = true;
    return result;
  }
  const auto ru = centered_ranks(u);
  const auto rv = centered_ranks(v);
  const double scale = std::sqrt(sum_squares(ru) * sum_squares(rv));
  const double observed = std::inner_product(ru.begin(), ru.end(), rv.begin(), 0.0);
  result.statistic = observed / scale;
  // Reordering a sum perturbs it in the last bits; treat those as ties.
  const double cutoff = std::abs(observed) - 1e-10 * scale;

  std::vector<char> as_extreme(n_perm, 0);
  parallel_for(
      n_perm,
      [&](std::size_t b) {
        auto gen = substream(seed, Stream::kPermutation, b);
        std::vector<double> shuffled = rv;
        for (std::size_t i = shuffled.size() - 1; i > 0; --i) {
          std::swap(shuffled[i], shuffled[uniform_index(gen, i + 1)]);
        }
        const double dot = std::inner_product(ru.begin(), ru.end(), shuffled.begin(), 0.0);
        as_extreme[b] = std::abs(dot) >= cutoff;
      },
      8);
  const auto count = static_cast<double>(std::count(as_extreme.begin(), as_extreme.end(), 1));
  result.p_value = (1.0 + count) / (static_cast<double>(n_perm) + 1.0);
  result.reject = result.p_value <= alpha;
  return result;
}

nlohmann::json to_json(const PermutationTestResult& result) {
  return {{"reject", result.reject},
          {"p_value", result.p_value},
          {"statistic", result.statistic},
          {"trivially_independent", result.trivially_independent},
          {"n_perm", result.n_perm}};
}

}  // namespace exind
