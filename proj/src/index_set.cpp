#include "exind/index_set.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace exind {

IndexSet::IndexSet(std::initializer_list<std::size_t> indices)
    : IndexSet(from_indices(std::span<const std::size_t>(indices.begin(), indices.size()))) {}

IndexSet IndexSet::from_indices(std::span<const std::size_t> indices) {
  Mask mask = 0;
  for (std::size_t i : indices) {
    if (i >= kMaxDim) {
      throw std::out_of_range("coordinate index " + std::to_string(i) + " exceeds supported dimension");
    }
    mask |= Mask{1} << i;
  }
  return IndexSet(mask);
}

IndexSet IndexSet::full(std::size_t d) {
  if (d > kMaxDim) throw std::out_of_range("dimension exceeds 64");
  return IndexSet(d == kMaxDim ? ~Mask{0} : (Mask{1} << d) - 1);
}

std::size_t IndexSet::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

std::vector<std::size_t> IndexSet::members() const {
  std::vector<std::size_t> out;
  out.reserve(size());
  for (Mask m = mask_; m != 0; m &= m - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  }
  return out;
}

std::string IndexSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (std::size_t i : members()) {
    if (!first) s += ',';
    s += std::to_string(i + 1);
    first = false;
  }
  return s + "}";
}

bool smaller_subset(IndexSet lhs, IndexSet rhs) {
  if (lhs.size() != rhs.size()) return lhs.size() < rhs.size();
  const auto a = lhs.members();
  const auto b = rhs.members();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace exind
