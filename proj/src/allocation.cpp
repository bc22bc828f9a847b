#include "pma/allocation.hpp"

#include <algorithm>

#include "pma/demand.hpp"
#include "pma/scaled.hpp"

namespace pma {
namespace {

const Rational kEpsilon{1, 10};

void require_integral(const Price& p) {
  if (!p.is_integral()) {
    throw std::invalid_argument("allocation needs an integral clearing price, got " + p.str());
  }
}

void require_integral_bids(const AllocationProblem& a) {
  for (const auto& l : a.bidders) {
    for (const auto& b : l.bids) {
      for (const auto& v : b.values) {
        if (!v.is_integer()) throw std::logic_error("bid " + to_string(b) + " left with a fractional value");
      }
    }
  }
}

}  // namespace

Bundle allocated_total(const AllocationProblem& a) {
  Bundle total = a.residual;
  for (const auto& m : a.partial) total += m;
  return total;
}

AllocationProblem initial_problem(std::vector<BidList> bidders, const std::vector<std::int64_t>& target,
                                  const Price& p, const SfmOptions& sfm) {
  require_integral(p);
  const std::size_t n = p.goods();
  if (target.size() != n) throw DimensionError("target and price dimensions differ");
  std::int64_t items = 0;
  for (auto t : target) {
    if (t < 0) throw std::invalid_argument("target quantities must be non-negative");
    items += t;
  }
  std::int64_t weight = 0;
  for (const auto& l : bidders) {
    check_dimensions(l.bids, n);
    weight += l.total_weight();
  }
  std::vector<Bid> all = aggregate(bidders);
  if (!is_demanded(all, Bundle(target), p, sfm)) {
    throw NotClearing("target is not demanded by the aggregate bids at " + p.str());
  }
  AllocationProblem a;
  a.price = p;
  a.partial.assign(bidders.size(), Bundle(n));
  a.bidders = std::move(bidders);
  a.residual = Bundle(target, weight - items);
  return a;
}

AllocationProblem non_marginals(AllocationProblem a) {
  for (std::size_t j = 0; j < a.bidders.size(); ++j) {
    auto& bids = a.bidders[j].bids;
    std::vector<Bid> kept;
    kept.reserve(bids.size());
    for (auto& b : bids) {
      GoodSet d = demanded_goods(b, a.price);
      if (d.size() == 1) {
        a.partial[j].at(d.min()) += b.weight;
        a.residual.at(d.min()) -= b.weight;
      } else {
        kept.push_back(std::move(b));
      }
    }
    bids = std::move(kept);
  }
  return a;
}

AllocationProblem unambiguous_marginals(AllocationProblem a, const DemandCluster& cluster, std::optional<Good> link) {
  const std::size_t j = cluster.bidder;
  if (j >= a.bidders.size()) throw BadCluster("unknown bidder " + std::to_string(j));
  DerivedGraph d = build_derived_graph(build_marginal_graph(a));
  auto it = std::find(d.clusters.begin(), d.clusters.end(), cluster);
  if (it == d.clusters.end()) {
    throw BadCluster(cluster.goods.str() + " is not a demand cluster of bidder " + std::to_string(j));
  }
  GoodSet links = d.links_of(static_cast<std::size_t>(it - d.clusters.begin()));
  if (link ? links != GoodSet{*link} : !links.empty()) {
    throw BadCluster("cluster " + cluster.goods.str() + " has link goods " + links.str());
  }
  const GoodSet I = cluster.goods;
  std::int64_t weight = 0;
  std::vector<Bid> kept;
  for (auto& b : a.bidders[j].bids) {
    GoodSet dem = demanded_goods(b, a.price);
    if (dem.size() < 2) throw BadCluster("bidder " + std::to_string(j) + " still has a non-marginal bid");
    if (dem.subset_of(I)) {
      weight += b.weight;
    } else {
      kept.push_back(std::move(b));
    }
  }
  a.bidders[j].bids = std::move(kept);

  auto transfer = [&](Good i, std::int64_t amount) {
    a.partial[j].at(i) += amount;
    a.residual.at(i) -= amount;
  };
  if (link) {
    std::int64_t rest = 0;
    for (auto i : (I - GoodSet{*link}).elements()) rest += a.residual[i];
    transfer(*link, weight - rest);
  }
  for (auto i : I.elements()) {
    if (link && i == *link) continue;
    transfer(i, a.residual[i]);
  }
  return a;
}

AllocationProblem shift_project_unshift(AllocationProblem a, Good i, std::size_t j, const SfmOptions& sfm) {
  require_integral(a.price);
  if (j >= a.bidders.size()) throw std::invalid_argument("unknown bidder " + std::to_string(j));
  if (i > a.goods()) throw std::invalid_argument("unknown good " + std::to_string(i));
  const std::size_t n = a.goods();

  a.bidders[j] = shift_bids(a.bidders[j], i, kEpsilon);

  // p^eps = p + e^S / 10 or p - e^S / 10, whichever gives the smaller g_r.
  std::vector<Bid> all = aggregate(a.bidders);
  ScaledLyapunov g(all, a.residual.items, ScaledLyapunov::scale_for(all, kEpsilon.den()));
  const std::int64_t unit = g.scale() / kEpsilon.den();
  const std::vector<std::int64_t> p = g.scaled(a.price);
  const std::int64_t here = g.value(p);
  std::int64_t best_value = 0;
  GoodSet best_set;
  int best_sign = 1;
  for (int sign : {1, -1}) {
    SetFunction h{n, [&](GoodSet s) {
                    GoodSet goods;
                    for (auto pos : s.elements()) goods.insert(pos + 1);
                    return g.value_moved(p, goods, sign * unit) - here;
                  }};
    SfmResult r = minimise(h, sfm);
    if (r.value < best_value) {
      best_value = r.value;
      best_sign = sign;
      best_set = GoodSet{};
      for (auto pos : r.set.elements()) best_set.insert(pos + 1);
    }
  }
  const Price p_eps = a.price.moved(best_set, kEpsilon * best_sign);

  for (auto& l : a.bidders) {
    for (auto& b : l.bids) b = project_bid(b, p_eps);
  }
  a.bidders[j] = shift_bids(a.bidders[j], i, -kEpsilon);
  require_integral_bids(a);
  return a;
}

Solution allocate(std::vector<BidList> bidders, const std::vector<std::int64_t>& target, const Price& p,
                  const AllocateOptions& opts) {
  AllocationProblem a = initial_problem(std::move(bidders), target, p, opts.sfm);
  const Bundle conserved = allocated_total(a);
  const std::size_t n = a.goods();
  Solution sol;
  AllocationStats& st = sol.stats;
  st.iteration_bound = a.bidders.size() * (n + 1) * n / 2;

  a = non_marginals(std::move(a));
  std::size_t edges = build_marginal_graph(a).edge_count();
  st.edge_counts.push_back(edges);

  while (!a.vacuous()) {
    if (++st.iterations > st.iteration_bound) {
      throw std::logic_error("allocation exceeded its iteration bound of " + std::to_string(st.iteration_bound));
    }
    ParamsResult params = opts.priority ? priority_params(a, *opts.priority) : find_params(a);
    if (auto* c = std::get_if<IsolatedCluster>(&params)) {
      a = unambiguous_marginals(std::move(a), c->cluster, std::nullopt);
      ++st.unambiguous_calls;
    } else if (auto* l = std::get_if<LeafCluster>(&params)) {
      a = unambiguous_marginals(std::move(a), l->cluster, l->link);
      ++st.unambiguous_calls;
    } else {
      const auto& e = std::get<CycleEdge>(params);
      a = shift_project_unshift(std::move(a), e.good, e.bidder, opts.sfm);
      ++st.shift_calls;
    }
    std::size_t after = build_marginal_graph(a).edge_count();
    if (after >= edges) {
      throw std::logic_error("marginal bids graph did not shrink (" + std::to_string(edges) + " -> " +
                             std::to_string(after) + ") after " + describe(params));
    }
    edges = after;
    st.edge_counts.push_back(edges);
    a = non_marginals(std::move(a));
    if (allocated_total(a) != conserved) throw std::logic_error("allocation lost or created items");
  }
  if (a.residual != Bundle(n)) throw std::logic_error("residual supply " + a.residual.str() + " left unallocated");
  sol.bundles = std::move(a.partial);
  return sol;
}

}  // namespace pma
