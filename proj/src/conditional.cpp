#include "exind/conditional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace exind {

ConditionalLaw::ConditionalLaw(std::size_t dim, std::size_t k, double normalizer,
                               std::vector<ConditionalComponent> components)
    : d_(dim), k_(k), normalizer_(normalizer), components_(std::move(components)) {}

ConditionalLaw build_conditional(const ExponentMeasure& measure, std::size_t k) {
  if (k >= measure.dim()) {
    throw std::out_of_range("conditioning coordinate " + std::to_string(k + 1) + " outside 1.." +
                            std::to_string(measure.dim()));
  }
  const double m_k = margins(measure)[k];
  std::vector<ConditionalComponent> components;
  for (std::size_t j = 0; j < measure.size(); ++j) {
    const auto& atom = measure.atom(j);
    const double w = atom.omega[k];
    if (w <= 0.0) continue;
    components.push_back({j, atom.omega, measure.face(j), atom.mass * w / m_k, 1.0 / w});
  }
  return ConditionalLaw(measure.dim(), k, m_k, std::move(components));
}

double orthant_probability(const ConditionalLaw& law, std::span<const double> x) {
  if (x.size() != law.dim()) throw std::invalid_argument("point dimension does not match the law");
  IndexSet constrained;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0) || !std::isfinite(x[i])) throw std::domain_error("orthant_probability requires finite x >= 0");
    if (x[i] > 0.0) constrained = constrained | IndexSet({i});
  }
  double p = 0.0;
  for (const auto& comp : law.components()) {
    if (!constrained.subset_of(comp.face)) continue;
    double radius = 0.0;  // smallest R with R * omega >= x
    for (std::size_t i : constrained.members()) radius = std::max(radius, x[i] / comp.omega[i]);
    p += comp.weight * std::min(1.0, comp.r_min / std::max(radius, comp.r_min));
  }
  return std::clamp(p, 0.0, 1.0);
}

double rectangle_probability(const ConditionalLaw& law, std::span<const double> x) {
  for (double v : x) {
    if (!(v > 0.0)) throw std::domain_error("rectangle_probability requires x > 0");
  }
  return orthant_probability(law, x);
}

double upper_orthant_measure(const ExponentMeasure& measure, std::span<const double> x) {
  if (x.size() != measure.dim()) throw std::invalid_argument("point dimension does not match the measure");
  bool any_positive = false;
  for (double v : x) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw std::domain_error("upper_orthant_measure requires finite x >= 0");
    any_positive = any_positive || v > 0.0;
  }
  if (!any_positive) throw std::domain_error("[0, inf) is not bounded away from the origin");
  double total = 0.0;
  for (const auto& atom : measure.atoms()) {
    // Ray r * omega lies in [x, inf) for r >= max_i x_i / omega_i; radial mass 1 / that.
    double mass_fraction = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == 0.0) continue;
      mass_fraction = std::min(mass_fraction, atom.omega[i] / x[i]);
    }
    total += atom.mass * mass_fraction;
  }
  return total;
}

FactorizationVerdict structural_new_notion(const ExponentMeasure& measure, const Bipartition& part) {
  if (part.dim() != measure.dim()) throw std::invalid_argument("bipartition dimension does not match the measure");
  FactorizationVerdict verdict{true, {}};
  verdict.per_k.reserve(measure.dim());
  for (std::size_t k = 0; k < measure.dim(); ++k) {
    CoordinateVerdict cv{k, true, std::nullopt};
    for (std::size_t j = 0; j < measure.size(); ++j) {
      if (!measure.face(j).contains(k)) continue;
      if (!part.separates(measure.face(j))) {
        cv.holds = false;
        cv.atom = j;
        break;
      }
    }
    verdict.holds = verdict.holds && cv.holds;
    verdict.per_k.push_back(cv);
  }
  return verdict;
}

}  // namespace exind
