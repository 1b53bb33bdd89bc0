#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "exind/bipartition.hpp"
#include "exind/measure.hpp"

namespace exind {

/// One atom's share of Y^k: its ray, selection probability and the radius at
/// which the ray enters {y_k > 1}.
struct ConditionalComponent {
  std::size_t atom;  // index into the source measure
  std::vector<double> omega;
  IndexSet face;
  double weight;  // mass * omega_k / m_k
  double r_min;   // 1 / omega_k
};

/// Law of Y^k: Lambda restricted to {y : y_k > 1}, divided by m_k.
/// Pick component j with probability weight_j, draw R with P(R > r) = r_min_j / r
/// for r >= r_min_j, emit R * omega_j.
class ConditionalLaw {
 public:
  ConditionalLaw(std::size_t dim, std::size_t k, double normalizer, std::vector<ConditionalComponent> components);

  std::size_t dim() const { return d_; }
  std::size_t k() const { return k_; }
  /// m_k = Lambda({y_k > 1}).
  double normalizer() const { return normalizer_; }
  std::span<const ConditionalComponent> components() const { return components_; }

 private:
  std::size_t d_;
  std::size_t k_;
  double normalizer_;
  std::vector<ConditionalComponent> components_;
};

/// Throws std::out_of_range for k >= dim, InvalidMeasure for invalid input.
ConditionalLaw build_conditional(const ExponentMeasure& measure, std::size_t k);

/// P(Y >= x) for x > 0 componentwise (std::domain_error otherwise).
double rectangle_probability(const ConditionalLaw& law, std::span<const double> x);

/// P(Y >= x) for x >= 0. A zero lower bound places no constraint, which is how
/// the point mass of a block at 0 is reached.
double orthant_probability(const ConditionalLaw& law, std::span<const double> x);

/// Lambda([x, inf)) evaluated directly from atoms, x >= 0 and not all zero.
double upper_orthant_measure(const ExponentMeasure& measure, std::span<const double> x);

struct CoordinateVerdict {
  std::size_t k;
  bool holds;
  std::optional<std::size_t> atom;  // first atom of Y^k whose face straddles the blocks
};

struct FactorizationVerdict {
  bool holds;
  std::vector<CoordinateVerdict> per_k;
};

/// Decides Y^k_A independent of Y^k_C for every k from the supports of the
/// Y^k: a straddling atom couples both blocks through its shared radius.
FactorizationVerdict structural_new_notion(const ExponentMeasure& measure, const Bipartition& part);

}  // namespace exind
