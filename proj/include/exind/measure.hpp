#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "exind/bipartition.hpp"
#include "exind/index_set.hpp"

namespace exind {

/// Direction entries with magnitude at or below this are snapped to exactly 0.
inline constexpr double kZeroSnap = 1e-12;
/// Sup-norm tolerance under which two directions on one face are the same ray.
inline constexpr double kRayMergeTol = 1e-9;
/// Margins within this distance of 1 count as standardized.
inline constexpr double kMarginTol = 1e-9;

/// One ray of the exponent measure: angular mass `mass` on direction `omega`.
/// Only the product mass * omega is meaningful; (c * omega, mass / c)
/// describes the same ray for every c > 0.
struct SpectralAtom {
  std::vector<double> omega;
  double mass = 0.0;

  /// Coordinates where omega is strictly positive.
  IndexSet face() const;
  bool operator==(const SpectralAtom&) const = default;
};

/// Finite atomic exponent measure on [0, inf)^d \ {0}:
///   Lambda = sum_j mass_j * (image of r^-2 dr on the ray r * omega_j).
///
/// Construction canonicalizes (snaps near-zero entries, merges atoms on the
/// same ray) but never rejects content; call `validate` for invariants.
/// Immutable after construction.
class ExponentMeasure {
 public:
  /// Throws std::invalid_argument if d == 0 or d > 64.
  ExponentMeasure(std::size_t d, std::vector<SpectralAtom> atoms);

  std::size_t dim() const { return d_; }
  std::size_t size() const { return atoms_.size(); }
  std::span<const SpectralAtom> atoms() const { return atoms_; }
  const SpectralAtom& atom(std::size_t j) const { return atoms_.at(j); }
  /// Cached faces, parallel to atoms().
  std::span<const IndexSet> faces() const { return faces_; }
  IndexSet face(std::size_t j) const { return faces_.at(j); }

  bool operator==(const ExponentMeasure& other) const { return d_ == other.d_ && atoms_ == other.atoms_; }

 private:
  std::size_t d_;
  std::vector<SpectralAtom> atoms_;
  std::vector<IndexSet> faces_;
};

enum class ViolationCode {
  kDimensionMismatch,
  kNonFiniteEntry,
  kNegativeEntry,
  kNonPositiveMass,
  kAllZeroDirection,
  kDeadCoordinate,
};

/// `index` is the atom index (0-based) for atom-level codes and the
/// coordinate index (0-based) for kDeadCoordinate.
struct Violation {
  ViolationCode code;
  std::size_t index;

  /// e.g. "AllZeroDirection(atom 0)", "DeadCoordinate(2)" (coordinates 1-based).
  std::string to_string() const;
  bool operator==(const Violation&) const = default;
};

std::string_view code_name(ViolationCode code);

class InvalidMeasure : public std::invalid_argument {
 public:
  explicit InvalidMeasure(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Atom-level violations in atom order. Only when every atom is well formed
/// are uncharged (dead) coordinates reported.
std::vector<Violation> validate(const ExponentMeasure& measure);
/// Throws InvalidMeasure when `validate` is nonempty.
void require_valid(const ExponentMeasure& measure);

/// Lambda(E \ [0, x]) = sum_j mass_j * max_i omega_ji / x_i for x > 0.
/// Throws std::domain_error on a nonpositive or non-finite entry.
double exponent_function(const ExponentMeasure& measure, std::span<const double> x);

/// Same quantity for x >= 0. Returns +inf when some atom charges a coordinate
/// where x is 0.
double exponent_function_nonneg(const ExponentMeasure& measure, std::span<const double> x);

/// Projection onto the coordinates in `subset` (in increasing order). Atoms
/// whose restriction vanishes are dropped.
ExponentMeasure marginalize(const ExponentMeasure& measure, IndexSet subset);

/// m_k = sum_j mass_j * omega_jk = Lambda({y : y_k > 1}).
std::vector<double> margins(const ExponentMeasure& measure);

bool is_standardized(const ExponentMeasure& measure, double tol = kMarginTol);

/// Rescales coordinate i by 1 / m_i so every margin becomes 1. Faces and
/// masses are unchanged.
ExponentMeasure standardize(const ExponentMeasure& measure);

/// Random valid standardized measure for property testing. Each atom's face
/// is uniform over nonempty subsets (of A or of C when `block` is given),
/// redrawn until every coordinate is charged. Deterministic in `seed`.
/// Requires d >= 2 and n_atoms >= d.
ExponentMeasure generate_random_measure(std::size_t d, std::size_t n_atoms, const std::optional<Bipartition>& block,
                                        std::uint64_t seed);

}  // namespace exind
