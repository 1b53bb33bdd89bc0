#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace exind {

/// Set of coordinate indices, stored as a bitmask. Indices are 0-based
/// internally; `to_string` renders them 1-based for user-facing output.
class IndexSet {
 public:
  using Mask = std::uint64_t;
  static constexpr std::size_t kMaxDim = 64;

  constexpr IndexSet() = default;
  constexpr explicit IndexSet(Mask mask) : mask_(mask) {}
  IndexSet(std::initializer_list<std::size_t> indices);

  static IndexSet from_indices(std::span<const std::size_t> indices);
  /// {0, ..., d-1}
  static IndexSet full(std::size_t d);

  constexpr Mask mask() const { return mask_; }
  constexpr bool empty() const { return mask_ == 0; }
  std::size_t size() const;
  bool contains(std::size_t i) const { return i < kMaxDim && ((mask_ >> i) & 1U) != 0; }

  constexpr bool subset_of(IndexSet other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool intersects(IndexSet other) const { return (mask_ & other.mask_) != 0; }

  constexpr IndexSet operator|(IndexSet o) const { return IndexSet(mask_ | o.mask_); }
  constexpr IndexSet operator&(IndexSet o) const { return IndexSet(mask_ & o.mask_); }
  constexpr IndexSet minus(IndexSet o) const { return IndexSet(mask_ & ~o.mask_); }

  /// Sorted 0-based members.
  std::vector<std::size_t> members() const;
  /// "{1,3}" in 1-based notation.
  std::string to_string() const;

  constexpr bool operator==(const IndexSet&) const = default;

 private:
  Mask mask_ = 0;
};

/// Orders by cardinality, then lexicographically by sorted members; this is
/// the order in which "smallest" witnesses are reported.
bool smaller_subset(IndexSet lhs, IndexSet rhs);

}  // namespace exind
