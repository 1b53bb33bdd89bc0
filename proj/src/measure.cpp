#include "exind/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "exind/rng.hpp"

namespace exind {
namespace {

bool is_clean(const SpectralAtom& atom, std::size_t d) {
  if (atom.omega.size() != d || !std::isfinite(atom.mass) || atom.mass <= 0.0) return false;
  bool any_positive = false;
  for (double v : atom.omega) {
    if (!std::isfinite(v) || v < 0.0) return false;
    any_positive = any_positive || v > 0.0;
  }
  return any_positive;
}

double sup_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s = std::max(s, std::abs(x));
  return s;
}

bool same_ray(const SpectralAtom& lhs, const SpectralAtom& rhs) {
  const double nl = sup_norm(lhs.omega);
  const double nr = sup_norm(rhs.omega);
  for (std::size_t i = 0; i < lhs.omega.size(); ++i) {
    if (std::abs(lhs.omega[i] / nl - rhs.omega[i] / nr) > kRayMergeTol) return false;
  }
  return true;
}

void check_point(const ExponentMeasure& measure, std::span<const double> x) {
  if (x.size() != measure.dim()) {
    throw std::invalid_argument("point has " + std::to_string(x.size()) + " coordinates, measure has " +
                                std::to_string(measure.dim()));
  }
}

// Picks the idx-th element (bit order) of the nonempty subsets of `within`.
IndexSet nth_subset(IndexSet within, std::uint64_t idx_plus_one) {
  const auto members = within.members();
  IndexSet::Mask mask = 0;
  for (std::size_t b = 0; b < members.size(); ++b) {
    if ((idx_plus_one >> b) & 1U) mask |= IndexSet::Mask{1} << members[b];
  }
  return IndexSet(mask);
}

}  // namespace

IndexSet SpectralAtom::face() const {
  IndexSet::Mask mask = 0;
  const std::size_t n = std::min(omega.size(), IndexSet::kMaxDim);
  for (std::size_t i = 0; i < n; ++i) {
    if (omega[i] > 0.0) mask |= IndexSet::Mask{1} << i;
  }
  return IndexSet(mask);
}

ExponentMeasure::ExponentMeasure(std::size_t d, std::vector<SpectralAtom> atoms) : d_(d) {
  if (d == 0) throw std::invalid_argument("dimension must be positive");
  if (d > IndexSet::kMaxDim) throw std::invalid_argument("dimension exceeds 64");
  for (auto& atom : atoms) {
    for (double& v : atom.omega) {
      if (std::isfinite(v) && std::abs(v) <= kZeroSnap) v = 0.0;
    }
  }
  atoms_.reserve(atoms.size());
  for (auto& atom : atoms) {
    if (is_clean(atom, d)) {
      const IndexSet face = atom.face();
      auto it = std::find_if(atoms_.begin(), atoms_.end(), [&](const SpectralAtom& kept) {
        return is_clean(kept, d) && kept.face() == face && same_ray(kept, atom);
      });
      if (it != atoms_.end()) {
        // Same ray: fold mass so that mass * omega is preserved along it.
        it->mass += atom.mass * sup_norm(atom.omega) / sup_norm(it->omega);
        continue;
      }
    }
    atoms_.push_back(std::move(atom));
  }
  faces_.reserve(atoms_.size());
  for (const auto& atom : atoms_) faces_.push_back(atom.face());
}

std::string_view code_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::kDimensionMismatch: return "DimensionMismatch";
    case ViolationCode::kNonFiniteEntry: return "NonFiniteEntry";
    case ViolationCode::kNegativeEntry: return "NegativeEntry";
    case ViolationCode::kNonPositiveMass: return "NonPositiveMass";
    case ViolationCode::kAllZeroDirection: return "AllZeroDirection";
    case ViolationCode::kDeadCoordinate: return "DeadCoordinate";
  }
  return "Unknown";
}

std::string Violation::to_string() const {
  std::string s(code_name(code));
  if (code == ViolationCode::kDeadCoordinate) return s + "(" + std::to_string(index + 1) + ")";
  return s + "(atom " + std::to_string(index) + ")";
}

namespace {
std::string join_violations(const std::vector<Violation>& violations) {
  std::string s = "invalid measure:";
  for (const auto& v : violations) s += " " + v.to_string();
  return s;
}
}  // namespace

InvalidMeasure::InvalidMeasure(std::vector<Violation> violations)
    : std::invalid_argument(join_violations(violations)), violations_(std::move(violations)) {}

std::vector<Violation> validate(const ExponentMeasure& measure) {
  std::vector<Violation> out;
  const std::size_t d = measure.dim();
  IndexSet charged;
  for (std::size_t j = 0; j < measure.size(); ++j) {
    const auto& atom = measure.atom(j);
    if (atom.omega.size() != d) {
      out.push_back({ViolationCode::kDimensionMismatch, j});
      continue;
    }
    if (!std::isfinite(atom.mass) || atom.mass <= 0.0) out.push_back({ViolationCode::kNonPositiveMass, j});
    bool finite = std::isfinite(atom.mass);
    bool negative = false;
    for (double v : atom.omega) {
      finite = finite && std::isfinite(v);
      negative = negative || v < 0.0;
    }
    if (!finite) out.push_back({ViolationCode::kNonFiniteEntry, j});
    if (negative) out.push_back({ViolationCode::kNegativeEntry, j});
    if (measure.face(j).empty()) out.push_back({ViolationCode::kAllZeroDirection, j});
    if (atom.mass > 0.0) charged = charged | measure.face(j);
  }
  // Coverage is only meaningful once every atom is well formed.
  if (!out.empty()) return out;
  for (std::size_t k = 0; k < d; ++k) {
    if (!charged.contains(k)) out.push_back({ViolationCode::kDeadCoordinate, k});
  }
  return out;
}

void require_valid(const ExponentMeasure& measure) {
  auto violations = validate(measure);
  if (!violations.empty()) throw InvalidMeasure(std::move(violations));
}

double exponent_function(const ExponentMeasure& measure, std::span<const double> x) {
  check_point(measure, x);
  for (double v : x) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::domain_error("exponent_function requires x > 0 and finite");
  }
  double total = 0.0;
  for (const auto& atom : measure.atoms()) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, atom.omega[i] / x[i]);
    total += atom.mass * worst;
  }
  return total;
}

double exponent_function_nonneg(const ExponentMeasure& measure, std::span<const double> x) {
  check_point(measure, x);
  for (double v : x) {
    if (!(v >= 0.0) || std::isnan(v)) throw std::domain_error("exponent_function_nonneg requires x >= 0");
  }
  double total = 0.0;
  for (const auto& atom : measure.atoms()) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (atom.omega[i] <= 0.0) continue;
      if (x[i] == 0.0) return std::numeric_limits<double>::infinity();
      worst = std::max(worst, atom.omega[i] / x[i]);
    }
    total += atom.mass * worst;
  }
  return total;
}

ExponentMeasure marginalize(const ExponentMeasure& measure, IndexSet subset) {
  if (subset.empty()) throw std::invalid_argument("cannot marginalize onto the empty set");
  if (!subset.subset_of(IndexSet::full(measure.dim()))) {
    throw std::invalid_argument("subset " + subset.to_string() + " exceeds dimension " + std::to_string(measure.dim()));
  }
  const auto keep = subset.members();
  std::vector<SpectralAtom> atoms;
  for (std::size_t j = 0; j < measure.size(); ++j) {
    if (!measure.face(j).intersects(subset)) continue;
    const auto& atom = measure.atom(j);
    SpectralAtom projected{std::vector<double>(keep.size()), atom.mass};
    for (std::size_t t = 0; t < keep.size(); ++t) projected.omega[t] = atom.omega[keep[t]];
    atoms.push_back(std::move(projected));
  }
  return ExponentMeasure(keep.size(), std::move(atoms));
}

std::vector<double> margins(const ExponentMeasure& measure) {
  require_valid(measure);
  std::vector<double> m(measure.dim(), 0.0);
  for (const auto& atom : measure.atoms()) {
    for (std::size_t i = 0; i < m.size(); ++i) m[i] += atom.mass * atom.omega[i];
  }
  return m;
}

bool is_standardized(const ExponentMeasure& measure, double tol) {
  return std::ranges::all_of(margins(measure), [tol](double v) { return std::abs(v - 1.0) <= tol; });
}

ExponentMeasure standardize(const ExponentMeasure& measure) {
  const auto m = margins(measure);
  std::vector<SpectralAtom> atoms(measure.atoms().begin(), measure.atoms().end());
  for (auto& atom : atoms) {
    for (std::size_t i = 0; i < m.size(); ++i) atom.omega[i] /= m[i];
  }
  return ExponentMeasure(measure.dim(), std::move(atoms));
}

ExponentMeasure generate_random_measure(std::size_t d, std::size_t n_atoms, const std::optional<Bipartition>& block,
                                        std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("generate_random_measure requires d >= 2");
  if (d > 62) throw std::invalid_argument("generate_random_measure supports d <= 62");
  if (n_atoms < d) throw std::invalid_argument("generate_random_measure requires n_atoms >= d");
  if (block && block->dim() != d) throw std::invalid_argument("block structure has the wrong dimension");

  auto gen = substream(seed, Stream::kMeasure, 0);
  const IndexSet all = IndexSet::full(d);
  auto draw_face = [&]() -> IndexSet {
    if (!block) return IndexSet(1 + uniform_index(gen, all.mask()));
    const std::uint64_t n_a = (std::uint64_t{1} << block->a().size()) - 1;
    const std::uint64_t n_c = (std::uint64_t{1} << block->c().size()) - 1;
    const std::uint64_t pick = uniform_index(gen, n_a + n_c);
    return pick < n_a ? nth_subset(block->a(), pick + 1) : nth_subset(block->c(), pick - n_a + 1);
  };

  constexpr int kMaxAttempts = 10000;
  std::vector<IndexSet> faces(n_atoms);
  bool covered = false;
  for (int attempt = 0; attempt < kMaxAttempts && !covered; ++attempt) {
    IndexSet seen;
    for (auto& f : faces) {
      f = draw_face();
      seen = seen | f;
    }
    covered = seen == all;
  }
  if (!covered) throw std::runtime_error("could not draw faces charging every coordinate");

  std::vector<SpectralAtom> atoms;
  atoms.reserve(n_atoms);
  for (IndexSet f : faces) {
    SpectralAtom atom{std::vector<double>(d, 0.0), uniform_positive(gen)};
    for (std::size_t i : f.members()) atom.omega[i] = uniform_positive(gen);
    atoms.push_back(std::move(atom));
  }
  return standardize(ExponentMeasure(d, std::move(atoms)));
}

}  // namespace exind
