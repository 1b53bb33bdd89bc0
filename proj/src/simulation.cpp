#include "exind/simulation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <system_error>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "exind/conditional.hpp"
#include "exind/parallel.hpp"
#include "exind/rng.hpp"

namespace exind {

std::vector<double> SampleBatch::column(std::size_t j) const {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = at(i, j);
  return out;
}

SampleBatch sample_max_stable(const ExponentMeasure& measure, std::size_t n, std::uint64_t seed) {
  require_valid(measure);
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  const std::size_t d = measure.dim();
  SampleBatch batch{SampleKind::kMaxStable, std::nullopt, n, d, seed, std::string(kRngAlgorithm),
                    std::vector<double>(n * d, 0.0)};
  parallel_for(n, [&](std::size_t s) {
    auto gen = substream(seed, Stream::kMaxStable, s);
    double* row = batch.data.data() + s * d;
    for (const auto& atom : measure.atoms()) {
      const double scale = atom.mass / standard_exponential(gen);
      for (std::size_t i = 0; i < d; ++i) row[i] = std::max(row[i], scale * atom.omega[i]);
    }
  });
  return batch;
}

SampleBatch sample_conditional(const ExponentMeasure& measure, std::size_t k, std::size_t n, std::uint64_t seed) {
  const ConditionalLaw law = build_conditional(measure, k);
  if (n == 0) throw std::invalid_argument("sample count must be positive");
  const std::size_t d = measure.dim();
  const auto comps = law.components();
  std::vector<double> cumulative;
  cumulative.reserve(comps.size());
  double acc = 0.0;
  for (const auto& c : comps) cumulative.push_back(acc += c.weight);

  SampleBatch batch{SampleKind::kConditional, k, n, d, seed, std::string(kRngAlgorithm), std::vector<double>(n * d)};
  parallel_for(n, [&](std::size_t s) {
    auto gen = substream(seed, Stream::kConditional, s);
    const double pick = uniform01(gen) * acc;
    const std::size_t j = std::min<std::size_t>(
        static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), pick) - cumulative.begin()),
        comps.size() - 1);
    const double radius = comps[j].r_min / uniform_positive(gen);
    double* row = batch.data.data() + s * d;
    for (std::size_t i = 0; i < d; ++i) row[i] = radius * comps[j].omega[i];
    // Y_k = 1 / U > 1 in exact arithmetic; rounding may land on 1.
    if (row[k] <= 1.0) row[k] = std::nextafter(1.0, 2.0);
  });
  return batch;
}

nlohmann::json metadata_json(const SampleBatch& batch) {
  return {
      {"kind", batch.kind == SampleKind::kMaxStable ? "max_stable" : "conditional"},
      {"k", batch.k ? nlohmann::json(*batch.k + 1) : nlohmann::json(nullptr)},
      {"n", batch.n},
      {"d", batch.d},
      {"seed", batch.seed},
      {"rng", batch.rng},
  };
}

void write_csv(const SampleBatch& batch, std::ostream& out) {
  for (std::size_t j = 0; j < batch.d; ++j) out << (j ? "," : "") << 'x' << (j + 1);
  out << '\n';
  char buf[32];
  for (std::size_t i = 0; i < batch.n; ++i) {
    for (std::size_t j = 0; j < batch.d; ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", batch.at(i, j));
      if (j) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path) {
  return std::filesystem::path(csv_path.string() + ".meta.json");
}

void save_batch(const SampleBatch& batch, const std::filesystem::path& path) {
  std::ofstream csv(path);
  if (!csv) throw std::runtime_error("cannot write " + path.string());
  write_csv(batch, csv);
  std::ofstream meta(sidecar_path(path));
  if (!meta) throw std::runtime_error("cannot write " + sidecar_path(path).string());
  meta << metadata_json(batch).dump(2) << '\n';
}

SampleBatch read_batch(std::istream& csv, const nlohmann::json& metadata) {
  SampleBatch batch;
  try {
    const auto kind = metadata.at("kind").get<std::string>();
    if (kind == "max_stable") {
      batch.kind = SampleKind::kMaxStable;
    } else if (kind == "conditional") {
      batch.kind = SampleKind::kConditional;
      const auto k = metadata.at("k").get<long long>();
      if (k < 1) throw std::runtime_error("metadata k must be >= 1");
      batch.k = static_cast<std::size_t>(k - 1);
    } else {
      throw std::runtime_error("unknown batch kind \"" + kind + "\"");
    }
    batch.seed = metadata.at("seed").get<std::uint64_t>();
    batch.rng = metadata.at("rng").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("malformed sample metadata: ") + e.what());
  }

  std::string line;
  if (!std::getline(csv, line)) throw std::runtime_error("sample CSV is empty");
  batch.d = static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
  if (batch.k && *batch.k >= batch.d) throw std::runtime_error("metadata k exceeds the CSV width");
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    std::size_t fields = 0;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p <= end) {
      const char* comma = std::find(p, end, ',');
      double v = 0.0;
      const auto [stop, ec] = std::from_chars(p, comma, v);
      if (p == comma || ec != std::errc() || stop != comma || !std::isfinite(v) || v < 0.0) {
        throw std::runtime_error("bad sample value \"" + std::string(p, comma) + "\" on data row " +
                                 std::to_string(batch.n + 1));
      }
      batch.data.push_back(v);
      ++fields;
      p = comma + 1;
    }
    if (fields != batch.d) throw std::runtime_error("ragged CSV row " + std::to_string(batch.n + 1));
    ++batch.n;
  }
  if (metadata.contains("n") && metadata["n"].get<std::size_t>() != batch.n) {
    throw std::runtime_error("metadata n disagrees with the CSV row count");
  }
  return batch;
}

SampleBatch load_batch(const std::filesystem::path& path) {
  std::ifstream csv(path);
  if (!csv) throw std::runtime_error("cannot open " + path.string());
  std::ifstream meta_in(sidecar_path(path));
  if (!meta_in) throw std::runtime_error("missing metadata sidecar " + sidecar_path(path).string());
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(meta_in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("malformed sample metadata: ") + e.what());
  }
  return read_batch(csv, meta);
}

}  // namespace exind
