#include "exind/graph.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "exind/independence.hpp"

namespace exind {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

ExtremalGraph assemble(std::size_t d, std::vector<std::pair<std::size_t, std::size_t>> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  DisjointSets sets(d);
  for (auto [i, j] : edges) sets.unite(i, j);
  std::vector<IndexSet::Mask> masks(d, 0);
  for (std::size_t i = 0; i < d; ++i) masks[sets.find(i)] |= IndexSet::Mask{1} << i;
  ExtremalGraph graph{d, std::move(edges), {}};
  // Roots are the smallest member of their set, so this is ordered by smallest member.
  for (std::size_t i = 0; i < d; ++i) {
    if (masks[i] != 0) graph.components.emplace_back(masks[i]);
  }
  return graph;
}

}  // namespace

ExtremalGraph build_graph(const ExponentMeasure& measure) {
  require_valid(measure);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (IndexSet face : measure.faces()) {
    const auto members = face.members();
    for (std::size_t a = 0; a < members.size(); ++a) {
      for (std::size_t b = a + 1; b < members.size(); ++b) edges.emplace_back(members[a], members[b]);
    }
  }
  return assemble(measure.dim(), std::move(edges));
}

ExtremalGraph graph_from_chi(const ChiMatrix& chi, double threshold) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < chi.d; ++i) {
    for (std::size_t j = i + 1; j < chi.d; ++j) {
      if (chi.at(i, j) > threshold) edges.emplace_back(i, j);
    }
  }
  return assemble(chi.d, std::move(edges));
}

std::vector<IndexSet> finest_partition(const ExponentMeasure& measure) { return build_graph(measure).components; }

bool certify_partition_bruteforce(const ExponentMeasure& measure) {
  require_valid(measure);
  const std::size_t d = measure.dim();
  if (d > kCertifyMaxDim) {
    throw std::invalid_argument("certify_partition_bruteforce supports d <= " + std::to_string(kCertifyMaxDim));
  }
  if (d < 2) return true;
  const auto components = finest_partition(measure);
  ReportOptions options;
  options.grid = default_grid(d);
  options.boundary_grid = default_boundary_grid(d);
  for (const auto& part : all_bipartitions(d)) {
    const bool splits = std::ranges::any_of(components, [&](IndexSet comp) { return !part.separates(comp); });
    const auto report = full_report(measure, part, options);
    if (!report.agree || report.cond_i.holds == splits) return false;
  }
  return true;
}

std::string to_dot(const ExtremalGraph& graph) {
  std::ostringstream out;
  out << "graph extremal {\n";
  for (std::size_t c = 0; c < graph.components.size(); ++c) {
    out << "  subgraph cluster_" << c << " {\n    label=\"block " << (c + 1) << "\";\n";
    for (std::size_t i : graph.components[c].members()) out << "    " << (i + 1) << ";\n";
    out << "  }\n";
  }
  for (auto [i, j] : graph.edges) out << "  " << (i + 1) << " -- " << (j + 1) << ";\n";
  out << "}\n";
  return out.str();
}

nlohmann::json to_json(const ExtremalGraph& graph) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [i, j] : graph.edges) edges.push_back({i + 1, j + 1});
  nlohmann::json components = nlohmann::json::array();
  for (IndexSet comp : graph.components) {
    nlohmann::json block = nlohmann::json::array();
    for (std::size_t i : comp.members()) block.push_back(i + 1);
    components.push_back(std::move(block));
  }
  return {{"d", graph.d}, {"edges", std::move(edges)}, {"components", std::move(components)}};
}

}  // namespace exind
