#include <doctest.h>

#include "exind/graph.hpp"
#include "exind/independence.hpp"
#include "fixtures.hpp"

using namespace exind;
using namespace exind::testing;

namespace {

using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

}  // namespace

TEST_SUITE("graph") {
  TEST_CASE("examples") {
    const auto blk = build_graph(m_blk());
    CHECK(blk.edges == Edges{{0, 1}});
    CHECK(blk.components == std::vector<IndexSet>{IndexSet{0, 1}, IndexSet{2}});
    const auto dep = build_graph(m_dep());
    CHECK(dep.edges == Edges{{0, 1}});
    CHECK(dep.components.size() == 1);
    const auto ind = build_graph(m_ind());
    CHECK(ind.edges.empty());
    CHECK(ind.components == std::vector<IndexSet>{IndexSet{0}, IndexSet{1}});

    CHECK(finest_partition(m_blk()) == std::vector<IndexSet>{IndexSet{0, 1}, IndexSet{2}});
    CHECK(finest_partition(m_dep()) == std::vector<IndexSet>{IndexSet{0, 1}});
    CHECK(certify_partition_bruteforce(m_blk()));
    CHECK(certify_partition_bruteforce(m_dep()));
  }

  TEST_CASE("generated block measures split along their blocks") {
    const Bipartition blocks(4, IndexSet{0, 1}, IndexSet{2, 3});
    std::size_t connected = 0;
    for (std::uint64_t s = 0; s < 200; ++s) {
      const auto m = generate_random_measure(4, 6, blocks, s);
      const auto parts = finest_partition(m);
      for (IndexSet comp : parts) CHECK(blocks.separates(comp));
      const auto g = build_graph(m);
      const bool both_connected = std::find(g.edges.begin(), g.edges.end(), std::pair<std::size_t, std::size_t>{0, 1}) !=
                                      g.edges.end() &&
                                  std::find(g.edges.begin(), g.edges.end(), std::pair<std::size_t, std::size_t>{2, 3}) !=
                                      g.edges.end();
      if (both_connected) {
        ++connected;
        CHECK(parts == std::vector<IndexSet>{IndexSet{0, 1}, IndexSet{2, 3}});
      }
      CHECK(certify_partition_bruteforce(m));
    }
    CHECK(connected > 0);
  }

  TEST_CASE("edges are exactly the pairs with positive chi") {
    for (std::uint64_t s = 0; s < 200; ++s) {
      const auto m = random_measure(s);
      const auto g = build_graph(m);
      for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = i + 1; j < m.dim(); ++j) {
          const bool edge = std::find(g.edges.begin(), g.edges.end(), std::pair{i, j}) != g.edges.end();
          CHECK(edge == (chi_exact(m, i, j) > 0.0));
        }
      }
    }
  }

  TEST_CASE("components are maximal: merging keeps independence, splitting breaks it") {
    for (std::uint64_t s = 0; s < 100; ++s) {
      auto gen = Xoshiro256(s);
      const std::size_t d = 3 + uniform_index(gen, 4);
      const auto full = IndexSet::full(d);
      const IndexSet a(1 + uniform_index(gen, full.mask() - 1));
      const auto m = generate_random_measure(d, d + 2, Bipartition(d, a, full.minus(a)), s);
      const auto comps = finest_partition(m);
      CHECK(comps.size() >= 2);
      // Any union of components against the rest is independent.
      for (std::uint64_t pick = 1; pick + 1 < (std::uint64_t{1} << comps.size()); ++pick) {
        IndexSet left;
        for (std::size_t c = 0; c < comps.size(); ++c) {
          if ((pick >> c) & 1U) left = left | comps[c];
        }
        CHECK(check_condition_i(m, Bipartition(d, left, full.minus(left))).holds);
      }
      // Cutting a component in two is dependent, whatever the rest does.
      for (IndexSet comp : comps) {
        if (comp.size() < 2) continue;
        const auto members = comp.members();
        const IndexSet piece{members[0]};
        CHECK_FALSE(check_condition_i(m, Bipartition(d, piece, full.minus(piece))).holds);
      }
    }
  }

  TEST_CASE("brute-force certification on random measures") {
    for (std::uint64_t s = 0; s < 100; ++s) CHECK(certify_partition_bruteforce(random_measure(s)));
    CHECK(certify_partition_bruteforce(ExponentMeasure(1, {{{1.0}, 1.0}})));
  }

  TEST_CASE("graph from estimated chi") {
    ChiMatrix chi;
    chi.d = 3;
    chi.chi = {1.0, 0.5, 0.05, 0.5, 1.0, 0.1, 0.05, 0.1, 1.0};
    const auto g = graph_from_chi(chi, 0.1);
    CHECK(g.edges == Edges{{0, 1}});
    CHECK(g.components == std::vector<IndexSet>{IndexSet{0, 1}, IndexSet{2}});
    CHECK(graph_from_chi(chi, 0.01).components.size() == 1);
  }

  TEST_CASE("DOT and JSON output") {
    const auto g = build_graph(m_blk());
    const auto dot = to_dot(g);
    CHECK(dot.find("subgraph cluster_0") != std::string::npos);
    CHECK(dot.find("subgraph cluster_1") != std::string::npos);
    CHECK(dot.find("1 -- 2;") != std::string::npos);
    const auto doc = to_json(g);
    CHECK(doc["edges"] == nlohmann::json::parse("[[1,2]]"));
    CHECK(doc["components"] == nlohmann::json::parse("[[1,2],[3]]"));
  }
}
