#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "exind/measure.hpp"

namespace exind {

enum class SampleKind { kMaxStable, kConditional };

/// n x d samples in row-major order plus the metadata needed to reproduce them.
struct SampleBatch {
  SampleKind kind = SampleKind::kMaxStable;
  std::optional<std::size_t> k;  // conditioning coordinate (0-based) for kConditional
  std::size_t n = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
  std::string rng;
  std::vector<double> data;

  double at(std::size_t row, std::size_t col) const { return data[row * d + col]; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * d, d}; }
  std::vector<double> column(std::size_t j) const;
};

/// Exact draws of the max-stable vector with P(X <= x) = exp(-Lambda(x)):
/// X_i = max_j mass_j * omega_ji / E_j with independent unit exponentials E_j.
SampleBatch sample_max_stable(const ExponentMeasure& measure, std::size_t n, std::uint64_t seed);

/// Exact draws of Y^k (see ConditionalLaw): atom by weight, R = r_min / U.
SampleBatch sample_conditional(const ExponentMeasure& measure, std::size_t k, std::size_t n, std::uint64_t seed);

/// `{"kind":"max_stable"|"conditional","k":<1-based or null>,"n":..,"seed":..,"rng":"..."}`
nlohmann::json metadata_json(const SampleBatch& batch);

/// Header x1,...,xd then one row per sample at 17 significant digits.
void write_csv(const SampleBatch& batch, std::ostream& out);
/// Writes `<path>` and the sidecar `<path>.meta.json`.
void save_batch(const SampleBatch& batch, const std::filesystem::path& path);
/// Reads CSV plus sidecar; throws std::runtime_error on malformed input.
SampleBatch load_batch(const std::filesystem::path& path);
SampleBatch read_batch(std::istream& csv, const nlohmann::json& metadata);

std::filesystem::path sidecar_path(const std::filesystem::path& csv_path);

}  // namespace exind
