#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "exind/measure.hpp"
#include "exind/rng.hpp"

namespace exind::testing {

// Two axis atoms: independent coordinates.
inline ExponentMeasure m_ind() { return ExponentMeasure(2, {{{1.0, 0.0}, 1.0}, {{0.0, 1.0}, 1.0}}); }
// One diagonal atom: complete dependence.
inline ExponentMeasure m_dep() { return ExponentMeasure(2, {{{0.5, 0.5}, 2.0}}); }
// Block {1,2} dependent, {3} independent of it.
inline ExponentMeasure m_blk() { return ExponentMeasure(3, {{{0.5, 0.5, 0.0}, 2.0}, {{0.0, 0.0, 1.0}, 1.0}}); }

// Random measure with unconstrained faces, for property tests.
inline ExponentMeasure random_measure(std::uint64_t seed, std::size_t d_min = 2, std::size_t d_max = 6) {
  auto gen = Xoshiro256(seed * 7919 + 13);
  const std::size_t d = d_min + uniform_index(gen, d_max - d_min + 1);
  const std::size_t atoms = d + uniform_index(gen, 4);
  return generate_random_measure(d, atoms, std::nullopt, seed);
}

inline std::vector<double> random_point(Xoshiro256& gen, std::size_t d, double lo = 0.1, double hi = 10.0) {
  std::vector<double> x(d);
  for (auto& v : x) v = lo * std::pow(hi / lo, uniform01(gen));
  return x;
}

inline std::filesystem::path temp_dir() {
  std::filesystem::path dir(EXIND_TEST_TMPDIR);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace exind::testing
