#include "pma/graphs.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace pma {
namespace {

// Union by rank with path compression.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<int> rank_;
};

// Vertices of the derived graph: link goods first (by good), then clusters.
struct Node {
  bool cluster;
  std::size_t id;  // good or cluster index
};

bool connected_without(const DerivedGraph& d, Good good, std::size_t cluster) {
  std::vector<bool> seen_cluster(d.clusters.size(), false);
  GoodSet seen_goods{good};
  std::deque<Node> queue{{false, good}};
  while (!queue.empty()) {
    Node v = queue.front();
    queue.pop_front();
    if (v.cluster) {
      for (auto g : d.links_of(v.id).elements()) {
        if (v.id == cluster && g == good) continue;
        if (!seen_goods.contains(g)) {
          seen_goods.insert(g);
          queue.push_back({false, g});
        }
      }
    } else {
      for (auto c : d.clusters_of(v.id)) {
        if (v.id == good && c == cluster) continue;
        if (c == cluster) return true;
        if (!seen_cluster[c]) {
          seen_cluster[c] = true;
          queue.push_back({true, c});
        }
      }
    }
  }
  return false;
}

std::optional<ParamsResult> isolated_or_leaf(const DerivedGraph& d) {
  for (const auto& c : d.clusters) {
    if (!c.goods.intersects(d.link_goods)) return IsolatedCluster{c};
  }
  for (std::size_t c = 0; c < d.clusters.size(); ++c) {
    GoodSet links = d.links_of(c);
    if (links.size() == 1) return LeafCluster{d.clusters[c], links.min()};
  }
  return std::nullopt;
}

}  // namespace

GoodSet MarginalBidsGraph::neighbours(Good g, std::size_t bidder) const {
  GoodSet out;
  for (const auto& e : edges) {
    if (e.bidder != bidder) continue;
    if (e.a == g) out.insert(e.b);
    if (e.b == g) out.insert(e.a);
  }
  return out;
}

std::string MarginalBidsGraph::dump() const {
  std::ostringstream os;
  for (const auto& e : edges) os << "edge " << e.a << " " << e.b << " " << e.bidder << "\n";
  return os.str();
}

std::vector<std::size_t> DerivedGraph::clusters_of(Good g) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (clusters[c].goods.contains(g)) out.push_back(c);
  }
  return out;
}

std::string DerivedGraph::dump() const {
  std::ostringstream os;
  for (auto g : link_goods.elements()) os << "link " << g << "\n";
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    os << "cluster " << clusters[c].goods.str() << " bidder " << clusters[c].bidder << " -> " << links_of(c).str()
       << "\n";
  }
  return os.str();
}

MarginalBidsGraph build_marginal_graph(const AllocationProblem& a) {
  MarginalBidsGraph g;
  g.goods = a.goods();
  g.bidders = a.bidders.size();
  if (g.goods + 1 > GoodSet::kCapacity) throw std::invalid_argument("too many goods");
  for (std::size_t j = 0; j < a.bidders.size(); ++j) {
    // adjacency[x] holds y > x already linked for bidder j
    std::vector<GoodSet> adjacency(g.goods + 1);
    for (const auto& bid : a.bidders[j].bids) {
      GoodSet d = demanded_goods(bid, a.price);
      if (d.size() < 2) continue;
      auto members = d.elements();
      for (std::size_t x = 0; x < members.size(); ++x) {
        for (std::size_t y = x + 1; y < members.size(); ++y) adjacency[members[x]].insert(members[y]);
      }
    }
    for (Good x = 0; x <= g.goods; ++x) {
      for (auto y : adjacency[x].elements()) g.edges.push_back({x, y, j});
    }
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const MarginalEdge& l, const MarginalEdge& r) {
    return std::tie(l.a, l.b, l.bidder) < std::tie(r.a, r.b, r.bidder);
  });
  return g;
}

DerivedGraph build_derived_graph(const MarginalBidsGraph& g) {
  DerivedGraph d;
  const std::size_t vertices = g.goods + 1;
  std::vector<DisjointSets> sets(g.bidders, DisjointSets(vertices));
  std::vector<GoodSet> touched(g.bidders);
  for (const auto& e : g.edges) {
    sets[e.bidder].unite(e.a, e.b);
    touched[e.bidder].insert(e.a);
    touched[e.bidder].insert(e.b);
  }
  std::vector<int> appearances(vertices, 0);
  for (std::size_t j = 0; j < g.bidders; ++j) {
    std::map<std::size_t, GoodSet> components;  // keyed by root
    for (auto v : touched[j].elements()) components[sets[j].find(v)].insert(v);
    std::vector<GoodSet> sorted;
    for (const auto& [root, members] : components) {
      if (members.size() >= 2) sorted.push_back(members);
    }
    std::sort(sorted.begin(), sorted.end(), [](GoodSet l, GoodSet r) { return l.min() < r.min(); });
    for (auto s : sorted) {
      d.clusters.push_back({s, j});
      for (auto v : s.elements()) ++appearances[v];
    }
  }
  for (Good v = 0; v < vertices; ++v) {
    if (appearances[v] >= 2) d.link_goods.insert(v);
  }
  return d;
}

ParamsResult find_params(const AllocationProblem& a) { return find_params(build_derived_graph(build_marginal_graph(a))); }

ParamsResult find_params(const DerivedGraph& d) {
  if (d.clusters.empty()) throw NoMarginals("no marginal bids at the current price");
  for (const auto& c : d.clusters) {
    if (!c.goods.intersects(d.link_goods)) return IsolatedCluster{c};
  }
  // Maximal alternating path from the lowest link good, always taking the
  // first unvisited neighbour.
  std::vector<bool> on_path(d.clusters.size(), false);
  GoodSet goods_on_path;
  Good good = d.link_goods.min();
  goods_on_path.insert(good);
  std::optional<std::size_t> cluster;  // last cluster on the path
  while (true) {
    // at link good `good`
    std::optional<std::size_t> next;
    for (auto c : d.clusters_of(good)) {
      if (!on_path[c]) {
        next = c;
        break;
      }
    }
    if (!next) {
      // Every cluster at `good` is on the path: the path closes here.
      return CycleEdge{good, d.clusters[*cluster].bidder};
    }
    cluster = *next;
    on_path[*cluster] = true;
    GoodSet links = d.links_of(*cluster);
    GoodSet fresh = links - goods_on_path;
    if (fresh.empty()) {
      if (links.size() == 1) return LeafCluster{d.clusters[*cluster], good};
      return CycleEdge{good, d.clusters[*cluster].bidder};
    }
    good = fresh.min();
    goods_on_path.insert(good);
  }
}

ParamsResult priority_params(const AllocationProblem& a, const PriorityList& priority) {
  return priority_params(build_derived_graph(build_marginal_graph(a)), priority);
}

ParamsResult priority_params(const DerivedGraph& d, const PriorityList& priority) {
  if (d.clusters.empty()) throw NoMarginals("no marginal bids at the current price");
  for (const auto& [good, bidder] : priority) {
    if (good >= GoodSet::kCapacity || !d.link_goods.contains(good)) continue;
    for (std::size_t c = 0; c < d.clusters.size(); ++c) {
      if (d.clusters[c].bidder != bidder || !d.clusters[c].goods.contains(good)) continue;
      if (connected_without(d, good, c)) return CycleEdge{good, bidder};
    }
  }
  if (auto r = isolated_or_leaf(d)) return *r;
  return find_params(d);
}

PriorityList canonical_priority(std::size_t goods, std::size_t bidders) {
  PriorityList out;
  for (Good g = 0; g <= goods; ++g) {
    for (std::size_t j = 0; j < bidders; ++j) out.emplace_back(g, j);
  }
  return out;
}

std::string describe(const ParamsResult& r) {
  struct Visitor {
    std::string operator()(const IsolatedCluster& c) const {
      return "isolated cluster " + c.cluster.goods.str() + " of bidder " + std::to_string(c.cluster.bidder);
    }
    std::string operator()(const LeafCluster& c) const {
      return "leaf cluster " + c.cluster.goods.str() + " of bidder " + std::to_string(c.cluster.bidder) +
             " with link good " + std::to_string(c.link);
    }
    std::string operator()(const CycleEdge& c) const {
      return "cycle-link good " + std::to_string(c.good) + " with edge label " + std::to_string(c.bidder);
    }
  };
  return std::visit(Visitor{}, r);
}

}  // namespace pma
