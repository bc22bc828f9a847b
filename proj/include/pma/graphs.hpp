#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pma/allocation_problem.hpp"

namespace pma {

// Edge {a, b} (a < b, goods in [n]_0) labelled with a bidder index.
struct MarginalEdge {
  Good a;
  Good b;
  std::size_t bidder;
  bool operator==(const MarginalEdge&) const = default;
  auto operator<=>(const MarginalEdge&) const = default;
};

// Goods [n]_0 as vertices; one edge per (pair, bidder) with a bid marginal on
// both goods of the pair.
struct MarginalBidsGraph {
  std::size_t goods = 0;  // n, real goods
  std::size_t bidders = 0;
  std::vector<MarginalEdge> edges;  // sorted

  std::size_t edge_count() const { return edges.size(); }
  // Neighbours of good g in bidder j's subgraph.
  GoodSet neighbours(Good g, std::size_t bidder) const;
  // "edge a b bidder" per line.
  std::string dump() const;
};

struct DemandCluster {
  GoodSet goods;
  std::size_t bidder = 0;
  bool operator==(const DemandCluster&) const = default;
};

// Bipartite graph between link goods and demand clusters.
struct DerivedGraph {
  std::vector<DemandCluster> clusters;  // ordered by (bidder, smallest good)
  GoodSet link_goods;

  GoodSet links_of(std::size_t cluster) const { return clusters[cluster].goods & link_goods; }
  // Cluster indices containing good g, in cluster order.
  std::vector<std::size_t> clusters_of(Good g) const;
  // "link g", then "cluster {I} bidder j -> {links}" per line.
  std::string dump() const;
};

struct IsolatedCluster {
  DemandCluster cluster;
};
struct LeafCluster {
  DemandCluster cluster;
  Good link;
};
struct CycleEdge {
  Good good;
  std::size_t bidder;
};
using ParamsResult = std::variant<IsolatedCluster, LeafCluster, CycleEdge>;

// Permutation of [n]_0 x J, highest priority first.
using PriorityList = std::vector<std::pair<Good, std::size_t>>;

MarginalBidsGraph build_marginal_graph(const AllocationProblem& a);
DerivedGraph build_derived_graph(const MarginalBidsGraph& g);

// Throws NoMarginals when no bid is marginal.
ParamsResult find_params(const AllocationProblem& a);
ParamsResult find_params(const DerivedGraph& d);
ParamsResult priority_params(const AllocationProblem& a, const PriorityList& priority);
ParamsResult priority_params(const DerivedGraph& d, const PriorityList& priority);

// Goods-major list (0, j0), (0, j1), ..., (n, j_last).
PriorityList canonical_priority(std::size_t goods, std::size_t bidders);

std::string describe(const ParamsResult& r);

}  // namespace pma
