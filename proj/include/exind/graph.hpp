#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "exind/estimation.hpp"
#include "exind/index_set.hpp"
#include "exind/measure.hpp"

namespace exind {

inline constexpr double kDefaultEdgeThreshold = 0.1;
inline constexpr std::size_t kCertifyMaxDim = 12;

/// Coordinates as vertices; (i, j) is an edge when some atom charges both.
struct ExtremalGraph {
  std::size_t d = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j, sorted
  std::vector<IndexSet> components;                         // ordered by smallest member

  bool operator==(const ExtremalGraph&) const = default;
};

ExtremalGraph build_graph(const ExponentMeasure& measure);

/// Graph with edges where the estimated chi exceeds `threshold`.
ExtremalGraph graph_from_chi(const ChiMatrix& chi, double threshold = kDefaultEdgeThreshold);

/// Connected components of build_graph: the finest partition of the
/// coordinates into mutually extremally independent blocks.
std::vector<IndexSet> finest_partition(const ExponentMeasure& measure);

/// Runs full_report on every bipartition and checks that it is independent
/// exactly when no component is split. Requires d <= 12.
bool certify_partition_bruteforce(const ExponentMeasure& measure);

/// Graphviz with one cluster per component; vertices labelled 1..d.
std::string to_dot(const ExtremalGraph& graph);

/// `{"d":..,"edges":[[1,2],...],"components":[[1,2],[3]]}` (1-based).
nlohmann::json to_json(const ExtremalGraph& graph);

}  // namespace exind
