#include "exind/bipartition.hpp"

#include <stdexcept>
#include <string>

namespace exind {

Bipartition::Bipartition(std::size_t d, IndexSet a, IndexSet c) : d_(d), a_(a), c_(c) {
  if (d < 2) throw std::invalid_argument("a bipartition needs dimension >= 2");
  if (d > IndexSet::kMaxDim) throw std::invalid_argument("dimension exceeds 64");
  if (a.empty() || c.empty()) throw std::invalid_argument("both blocks of a bipartition must be nonempty");
  if (a.intersects(c)) throw std::invalid_argument("blocks " + a.to_string() + " and " + c.to_string() + " overlap");
  if ((a | c) != IndexSet::full(d)) {
    throw std::invalid_argument("blocks " + a.to_string() + " and " + c.to_string() + " do not cover {1.." +
                                std::to_string(d) + "}");
  }
}

Bipartition Bipartition::from_one_based(std::size_t d, std::span<const int> a, std::span<const int> c) {
  auto convert = [d](std::span<const int> coords) {
    IndexSet::Mask mask = 0;
    for (int v : coords) {
      if (v < 1 || static_cast<std::size_t>(v) > d) {
        throw std::invalid_argument("coordinate " + std::to_string(v) + " outside 1.." + std::to_string(d));
      }
      const IndexSet::Mask bit = IndexSet::Mask{1} << (v - 1);
      if ((mask & bit) != 0) throw std::invalid_argument("coordinate " + std::to_string(v) + " listed twice");
      mask |= bit;
    }
    return IndexSet(mask);
  };
  return Bipartition(d, convert(a), convert(c));
}

std::vector<Bipartition> all_bipartitions(std::size_t d) {
  if (d < 2) throw std::invalid_argument("a bipartition needs dimension >= 2");
  if (d > 31) throw std::invalid_argument("too many bipartitions to enumerate");
  const IndexSet all = IndexSet::full(d);
  std::vector<Bipartition> out;
  const IndexSet::Mask count = IndexSet::Mask{1} << (d - 1);
  out.reserve(count - 1);
  // Mask over coordinates 1..d-1 chooses C; coordinate 0 always in A.
  for (IndexSet::Mask m = 1; m < count; ++m) {
    const IndexSet c(m << 1);
    out.emplace_back(d, all.minus(c), c);
  }
  return out;
}

}  // namespace exind
