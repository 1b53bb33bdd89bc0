#pragma once

// Test-only reference computations. Each atom contributes mass times the
// radial measure r^-2 dr of {r : r * omega in S}. For the sets used here S is
// upward closed along every ray, so that set is (r*, inf) with measure 1/r*.
// r* is located by bisection on set membership alone, independently of the
// closed forms used by the library.

#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "exind/bipartition.hpp"
#include "exind/measure.hpp"

namespace exind::oracle {

using Membership = std::function<bool(std::span<const double>)>;

inline double ray_mass(std::span<const double> omega, const Membership& in_set) {
  std::vector<double> z(omega.size());
  auto member = [&](double r) {
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = r * omega[i];
    return in_set(z);
  };
  double lo = 1e-12;
  double hi = 1e12;
  if (!member(hi)) return 0.0;
  if (member(lo)) return std::numeric_limits<double>::infinity();
  for (int it = 0; it < 400 && hi > lo * (1.0 + 1e-16); ++it) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    (member(mid) ? hi : lo) = mid;
  }
  return 1.0 / hi;
}

inline double measure_of(const ExponentMeasure& measure, const Membership& in_set) {
  double total = 0.0;
  for (const auto& atom : measure.atoms()) total += atom.mass * ray_mass(atom.omega, in_set);
  return total;
}

// Lambda(E \ [0, x]) restricted to coordinates in `coords` (all when empty):
// exceedance of x in at least one listed coordinate.
inline double exceedance(const ExponentMeasure& measure, std::span<const double> x, IndexSet coords = {}) {
  if (coords.empty()) coords = IndexSet::full(measure.dim());
  const auto idx = coords.members();
  return measure_of(measure, [&](std::span<const double> z) {
    for (std::size_t i : idx) {
      if (z[i] > x[i]) return true;
    }
    return false;
  });
}

inline double joint_exceedance(const ExponentMeasure& measure, const Bipartition& part, std::span<const double> x) {
  const auto a = part.a().members();
  const auto c = part.c().members();
  return measure_of(measure, [&](std::span<const double> z) {
    bool hit_a = false;
    bool hit_c = false;
    for (std::size_t i : a) hit_a = hit_a || z[i] > x[i];
    for (std::size_t i : c) hit_c = hit_c || z[i] > x[i];
    return hit_a && hit_c;
  });
}

// Lambda([x, inf)) for x >= 0, not all zero.
inline double upper_orthant(const ExponentMeasure& measure, std::span<const double> x) {
  return measure_of(measure, [&](std::span<const double> z) {
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (z[i] < x[i]) return false;
    }
    return true;
  });
}

inline bool close(double a, double b, double rel) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= rel * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace exind::oracle
