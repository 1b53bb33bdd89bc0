#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

#include "exind/bipartition.hpp"
#include "exind/conditional.hpp"
#include "exind/measure.hpp"

namespace exind {

/// Relative tolerance for additivity and df factorization on grids.
inline constexpr double kAdditivityTol = 1e-9;
/// Largest dimension for which condition (iii) enumerates all 2^d subsets.
inline constexpr std::size_t kSubsetEnumerationCap = 16;
inline constexpr std::uint64_t kDefaultGridSeed = 0x5eedULL;
inline constexpr std::size_t kTensorGridCap = 4096;
inline constexpr std::size_t kRandomGridPoints = 64;

/// Row-major list of test points of a common dimension.
class Grid {
 public:
  explicit Grid(std::size_t dim) : dim_(dim) {}
  void add(std::span<const double> point);
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return dim_ == 0 ? 0 : data_.size() / dim_; }
  std::span<const double> point(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }

 private:
  std::size_t dim_;
  std::vector<double> data_;
};

/// Tensor grid over {0.5, 1, 2, 5}^d (4^d <= 4096; otherwise 4096 seeded draws
/// from the tensor levels) followed by 64 seeded uniform points in (0.1, 10)^d.
Grid default_grid(std::size_t d, std::uint64_t seed = kDefaultGridSeed);

/// default_grid plus boundary points: each unit vector's complement
/// (ones with one coordinate zeroed) and the origin.
Grid default_boundary_grid(std::size_t d, std::uint64_t seed = kDefaultGridSeed);

struct ConditionI {
  bool holds;
  std::optional<std::size_t> violating_atom;
};

struct ConditionII {
  bool holds;       // numeric additivity on the grid
  bool structural;  // exact support form, identical to condition (i)
  std::optional<std::vector<double>> worst_point;
  double worst_defect;  // max |Lambda - Lambda_A - Lambda_C| / (1 + Lambda)
};

enum class EnumerationMode { kFull, kPairwise };

struct ConditionIII {
  bool holds;
  EnumerationMode mode;
  std::optional<IndexSet> violating_subset;
};

struct DfFactorization {
  bool holds;
  std::optional<std::vector<double>> worst_point;
  double worst_gap;  // max |F - F_A F_C| over the grid
};

/// Every atom's face lies in A or in C.
ConditionI check_condition_i(const ExponentMeasure& measure, const Bipartition& part);

/// Lambda(x) = Lambda_A(x_A) + Lambda_C(x_C) on every grid point (x > 0).
ConditionII check_condition_ii(const ExponentMeasure& measure, const Bipartition& part, const Grid& grid,
                               double tol = kAdditivityTol);

/// No atom's face contains a set I meeting both blocks. Enumerates all such I
/// up to `enum_cap` dimensions, pairs {a, c} beyond.
ConditionIII check_condition_iii(const ExponentMeasure& measure, const Bipartition& part,
                                 std::size_t enum_cap = kSubsetEnumerationCap);

/// exp(-Lambda(x)) = exp(-Lambda_A(x_A)) exp(-Lambda_C(x_C)) on a grid with
/// x >= 0. Compared on the exponent scale with exact +inf bookkeeping.
DfFactorization df_factorization(const ExponentMeasure& measure, const Bipartition& part, const Grid& grid,
                                 double tol = kAdditivityTol);

/// Lambda of {z : z_a > x_a for some a in A and z_c > x_c for some c in C}.
/// Equals Lambda_A(x_A) + Lambda_C(x_C) - Lambda(x).
double joint_exceedance_mass(const ExponentMeasure& measure, const Bipartition& part, std::span<const double> x);

/// Lambda_I({z_I : z_i > 1/n for all i in I}), the n-th set of the increasing
/// sequence that exhausts the interior of face I.
double interior_face_mass(const ExponentMeasure& measure, IndexSet subset, double n);

struct ReportOptions {
  std::optional<Grid> grid;           // defaults to default_grid
  std::optional<Grid> boundary_grid;  // defaults to default_boundary_grid
  std::uint64_t grid_seed = kDefaultGridSeed;
  double tol = kAdditivityTol;
  std::size_t enum_cap = kSubsetEnumerationCap;
};

struct IndependenceReport {
  ConditionI cond_i;
  ConditionII cond_ii;
  ConditionIII cond_iii;
  DfFactorization df;
  FactorizationVerdict new_notion;
  bool agree;

  bool independent() const { return agree && cond_i.holds; }
};

/// Runs every criterion. Disagreement is recorded in `agree`, never thrown.
IndependenceReport full_report(const ExponentMeasure& measure, const Bipartition& part,
                               const ReportOptions& options = {});

/// Report JSON; coordinates and subsets in witnesses are 1-based, atoms 0-based.
nlohmann::json to_json(const IndependenceReport& report);

}  // namespace exind
