#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <json.hpp>

#include "exind/bipartition.hpp"
#include "exind/measure.hpp"
#include "exind/simulation.hpp"

namespace exind {

inline constexpr double kDefaultChiLevel = 0.95;
inline constexpr std::size_t kMinChiSamples = 1000;
inline constexpr std::size_t kMinExceedances = 20;
inline constexpr std::size_t kDefaultPermutations = 499;
inline constexpr std::size_t kMinPermutations = 199;
inline constexpr double kDefaultAlpha = 0.05;

/// Tail dependence coefficient of coordinates i != j for a standardized
/// measure: sum over atoms of mass * min(omega_i, omega_j), which equals
/// 2 - Lambda_{ij}(1, 1). Exactly 0 iff no atom charges both coordinates.
double chi_exact(const ExponentMeasure& measure, std::size_t i, std::size_t j);

struct ChiMatrix {
  std::size_t d = 0;
  double q = kDefaultChiLevel;
  std::size_t n = 0;
  std::vector<double> chi;                    // d x d, symmetric, unit diagonal, clipped to [0, 1]
  std::vector<std::size_t> joint_exceedances;  // d x d
  std::vector<std::size_t> marginal_exceedances;

  double at(std::size_t i, std::size_t j) const { return chi[i * d + j]; }
};

/// Rank-based exceedance estimator
///   chi_ij = #{F_i(X_i) > q, F_j(X_j) > q} / (n (1 - q))
/// with F the empirical (mid-rank) distribution functions.
ChiMatrix chi_empirical(const SampleBatch& batch, double q = kDefaultChiLevel);

nlohmann::json to_json(const ChiMatrix& chi);
void write_csv(const ChiMatrix& chi, std::ostream& out);

/// Mid-ranks (1-based, ties share their average rank).
std::vector<double> midranks(std::span<const double> values);

/// Spearman correlation from mid-ranks; 0 when either side is constant.
double spearman(std::span<const double> x, std::span<const double> y);

struct PermutationTestResult {
  bool reject = false;
  double p_value = 1.0;
  double statistic = 0.0;  // Spearman rho of (U, V)
  bool trivially_independent = false;
  std::size_t n_perm = 0;
};

/// Permutation test of U = max_{a in A} Y_a against V = max_{c in C} Y_c on a
/// conditional batch. Two-sided in |rho|; p = (1 + #{|rho*| >= |rho|}) / (n_perm + 1).
/// A constant U or V short-circuits to trivially independent (p = 1).
PermutationTestResult factorization_test(const SampleBatch& batch, const Bipartition& part,
                                         std::size_t n_perm = kDefaultPermutations, double alpha = kDefaultAlpha,
                                         std::uint64_t seed = 0);

nlohmann::json to_json(const PermutationTestResult& result);

}  // namespace exind
