#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "exind/index_set.hpp"

namespace exind {

/// Ordered pair (A, C) of nonempty, disjoint index sets covering {0..d-1}.
class Bipartition {
 public:
  /// Throws std::invalid_argument unless (a, c) partitions {0..d-1} into two
  /// nonempty blocks.
  Bipartition(std::size_t d, IndexSet a, IndexSet c);

  /// Builds from 1-based coordinate lists, as written on the command line.
  static Bipartition from_one_based(std::size_t d, std::span<const int> a, std::span<const int> c);

  std::size_t dim() const { return d_; }
  IndexSet a() const { return a_; }
  IndexSet c() const { return c_; }
  Bipartition swapped() const { return Bipartition(d_, c_, a_); }

  /// True iff `face` lies inside one block.
  bool separates(IndexSet face) const { return face.subset_of(a_) || face.subset_of(c_); }

  bool operator==(const Bipartition&) const = default;

 private:
  std::size_t d_;
  IndexSet a_;
  IndexSet c_;
};

/// All 2^(d-1) - 1 unordered bipartitions of {0..d-1}, each listed once with
/// coordinate 0 in block A.
std::vector<Bipartition> all_bipartitions(std::size_t d);

}  // namespace exind
