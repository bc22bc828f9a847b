#include "pma/pricing.hpp"

#include <algorithm>
#include <limits>

#include "pma/scaled.hpp"

namespace pma {
namespace {

using Vec = std::vector<std::int64_t>;

void check_problem(const PriceProblem& pp) {
  if (pp.target.size() != pp.goods) throw DimensionError("target dimension mismatch");
  check_dimensions(pp.bids, pp.goods);
  if (pp.max_price < 0) throw std::invalid_argument("max price must be non-negative");
}

// Integer view of a price problem. Prices are scaled numerators.
class Engine {
 public:
  Engine(const PriceProblem& pp, std::int64_t scale) : pp_(pp), g_(pp.bids, pp.target, scale) {}

  const ScaledLyapunov& g() const { return g_; }

  std::int64_t slope(const Vec& p, GoodSet s, std::int64_t unit) const {
    return g_.value_moved(p, s, unit) - g_.value(p);
  }

  DemandBounds bounds(const Vec& p) const {
    const std::size_t n = pp_.goods;
    DemandBounds b;
    b.min_x.assign(n, 0);
    b.max_x.assign(n, 0);
    for (std::size_t k = 0; k < g_.bid_count(); ++k) {
      std::int64_t best = 0;
      GoodSet demanded{0};
      for (Good i = 1; i <= n; ++i) {
        std::int64_t s = g_.bid_value(k, i) - p[i - 1];
        if (s > best) {
          best = s;
          demanded = GoodSet{i};
        } else if (s == best) {
          demanded.insert(i);
        }
      }
      const int w = g_.weight(k);
      for (Good i = 1; i <= n; ++i) {
        if (!demanded.contains(i)) continue;
        b.max_x[i - 1] += w;
        if (demanded.size() == 1) b.min_x[i - 1] += w;
      }
    }
    for (Good i = 1; i <= n; ++i) {
      if (b.min_x[i - 1] > pp_.target[i - 1]) b.increase.insert(i);
      if (b.max_x[i - 1] <= pp_.target[i - 1]) b.hold.insert(i);
    }
    return b;
  }

  // Goods whose price may still rise by one unit.
  GoodSet movable(const Vec& p) const {
    GoodSet allowed = GoodSet::range(1, pp_.goods + 1);
    if (pp_.box_limited) {
      const std::int64_t cap = pp_.max_price * g_.scale();
      for (Good i = 1; i <= pp_.goods; ++i) {
        if (p[i - 1] >= cap) allowed.erase(i);
      }
    }
    return allowed;
  }

  GoodSet steepest(const Vec& p) const {
    const std::int64_t unit = g_.scale();
    GoodSet allowed = movable(p);
    DemandBounds b = bounds(p);
    GoodSet forced = b.increase & allowed;
    GoodSet free = allowed - b.increase - b.hold;
    if (free.empty()) return forced;
    const std::vector<std::size_t> goods = free.elements();
    SetFunction h{goods.size(), [&](GoodSet t) {
                    GoodSet s = forced;
                    for (auto pos : t.elements()) s.insert(goods[pos]);
                    return slope(p, s, unit);
                  }};
    GoodSet t0 = minimal_minimiser(h, pp_.sfm);
    GoodSet s0 = forced;
    for (auto pos : t0.elements()) s0.insert(goods[pos]);
    return s0;
  }

  // Longest step worth testing along s. Past it the price leaves [0, M]
  // (box-limited) or exceeds M by one, which signals an infeasible target.
  std::int64_t step_cap(const Vec& p, GoodSet s) const {
    std::int64_t cap = std::numeric_limits<std::int64_t>::max();
    const std::int64_t unit = g_.scale();
    const std::int64_t limit = pp_.max_price * unit + (pp_.box_limited ? 0 : unit);
    for (auto i : s.elements()) cap = std::min(cap, (limit - p[i - 1]) / unit);
    return std::max<std::int64_t>(cap, 1);
  }

  std::int64_t step_binary(const Vec& p, GoodSet s) const {
    const std::int64_t unit = g_.scale();
    const std::int64_t base = slope(p, s, unit);
    auto same = [&](std::int64_t lambda) {
      Vec q = p;
      for (auto i : s.elements()) q[i - 1] += (lambda - 1) * unit;
      return slope(q, s, unit) == base;
    };
    std::int64_t lo = 1, hi = step_cap(p, s);
    if (same(hi)) return hi;
    // same(lo) holds, same(hi) fails.
    while (hi - lo > 1) {
      std::int64_t mid = lo + (hi - lo) / 2;
      if (same(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return lo;
  }

  std::int64_t step_demand_change(const Vec& p0, GoodSet s, std::size_t* rounds) const {
    const std::int64_t unit = g_.scale();
    const std::int64_t base = slope(p0, s, unit);
    const std::int64_t cap = step_cap(p0, s);
    const std::size_t n = pp_.goods;
    std::int64_t lambda = 0;
    std::size_t count = 0;
    Vec p = p0;
    while (true) {
      ++count;
      // mu: fewest unit steps until some bid demanding only goods of s
      // becomes marginal with a good outside s.
      std::int64_t mu = std::numeric_limits<std::int64_t>::max();
      bool any = false;
      for (std::size_t k = 0; k < g_.bid_count(); ++k) {
        std::int64_t best = 0;
        bool inside = false;
        std::int64_t best_outside = 0;  // reject good
        for (Good i = 1; i <= n; ++i) {
          std::int64_t v = g_.bid_value(k, i) - p[i - 1];
          if (s.contains(i)) {
            if (!inside || v > best) best = v;
            inside = true;
          } else {
            best_outside = std::max(best_outside, v);
          }
        }
        if (!inside || best <= best_outside) continue;  // demands something outside s
        any = true;
        mu = std::min(mu, (best - best_outside) / unit);
      }
      if (!any || mu >= cap - lambda) {
        lambda = cap;
        break;
      }
      lambda += mu;
      Vec q = p0;
      for (auto i : s.elements()) q[i - 1] += lambda * unit;
      if (slope(q, s, unit) != base) break;
      p = std::move(q);
    }
    if (rounds) *rounds = count;
    return lambda;
  }

 private:
  const PriceProblem& pp_;
  ScaledLyapunov g_;
};

std::int64_t price_denominator(const Price& p) {
  std::int64_t d = 1;
  for (const auto& v : p.values()) d = checked_lcm(d, v.den());
  return d;
}

void require_integral(const PriceProblem& pp) {
  for (const auto& b : pp.bids) {
    for (const auto& v : b.values) {
      if (!v.is_integer()) throw std::invalid_argument("price finding requires integer bid values, got " + v.str());
    }
  }
}

Vec integral(const Engine& e, const Price& p) {
  if (!p.is_integral()) throw std::invalid_argument("price " + p.str() + " is not integral");
  return e.g().scaled(p);
}

void advance(Vec& p, GoodSet s, std::int64_t amount) {
  for (auto i : s.elements()) p[i - 1] += amount;
}

void check_bound(const PriceProblem& pp, const Vec& p) {
  if (pp.box_limited) return;
  for (auto v : p) {
    if (v > pp.max_price) {
      throw InfeasibleTarget("price exceeds the bound M = " + std::to_string(pp.max_price) +
                             "; the target is not demanded at any price in the box");
    }
  }
}

}  // namespace

PriceProblem PriceProblem::with_reserves(std::vector<Bid> bids, std::vector<std::int64_t> target) {
  PriceProblem pp;
  pp.goods = target.size();
  std::int64_t total = 0;
  for (auto t : target) {
    if (t < 0) throw std::invalid_argument("target quantities must be non-negative");
    total += t;
  }
  pp.max_price = max_bid_value(bids).ceil();
  pp.bids = std::move(bids);
  for (std::int64_t k = 0; k <= total; ++k) pp.bids.emplace_back(std::vector<Rational>(pp.goods), 1);
  pp.target = std::move(target);
  check_problem(pp);
  return pp;
}

PriceProblem PriceProblem::without_reserves(std::size_t goods, std::vector<Bid> bids,
                                            std::vector<std::int64_t> target) {
  PriceProblem pp;
  pp.goods = goods;
  pp.max_price = max_bid_value(bids).ceil();
  pp.bids = std::move(bids);
  pp.target = std::move(target);
  check_problem(pp);
  return pp;
}

Rational lyapunov(const PriceProblem& pp, const Price& p) {
  check_problem(pp);
  Rational v = indirect_utility(pp.bids, p);
  for (std::size_t i = 0; i < pp.goods; ++i) v += p.values()[i] * pp.target[i];
  return v;
}

Rational slope(const PriceProblem& pp, const Price& p, GoodSet s) {
  return lyapunov(pp, p.moved(s, 1)) - lyapunov(pp, p);
}

DemandBounds demand_bounds(const PriceProblem& pp, const Price& p) {
  check_problem(pp);
  Engine e(pp, ScaledLyapunov::scale_for(pp.bids, price_denominator(p)));
  return e.bounds(e.g().scaled(p));
}

GoodSet steepest_direction(const PriceProblem& pp, const Price& p) {
  check_problem(pp);
  require_integral(pp);
  Engine e(pp, 1);
  return e.steepest(integral(e, p));
}

std::int64_t step_length_binary(const PriceProblem& pp, const Price& p, GoodSet s0) {
  check_problem(pp);
  require_integral(pp);
  if (s0.empty()) throw std::invalid_argument("step length needs a non-empty direction");
  Engine e(pp, 1);
  return e.step_binary(integral(e, p), s0);
}

std::int64_t step_length_demand_change(const PriceProblem& pp, const Price& p, GoodSet s0, std::size_t* rounds) {
  check_problem(pp);
  require_integral(pp);
  if (s0.empty()) throw std::invalid_argument("step length needs a non-empty direction");
  Engine e(pp, 1);
  return e.step_demand_change(integral(e, p), s0, rounds);
}

PriceResult min_up(const PriceProblem& pp) {
  check_problem(pp);
  require_integral(pp);
  Engine e(pp, 1);
  Vec p(pp.goods, 0);
  PriceResult r;
  while (true) {
    GoodSet s = e.steepest(p);
    if (s.empty()) break;
    r.trace.steps.push_back({e.g().unscaled(p), s, 1});
    advance(p, s, 1);
    check_bound(pp, p);
  }
  r.price = e.g().unscaled(p);
  return r;
}

PriceResult long_step_min_up(const PriceProblem& pp, StepRule rule) {
  check_problem(pp);
  require_integral(pp);
  Engine e(pp, 1);
  Vec p(pp.goods, 0);
  PriceResult r;
  while (true) {
    GoodSet s = e.steepest(p);
    if (s.empty()) break;
    std::int64_t lambda = rule == StepRule::binary ? e.step_binary(p, s) : e.step_demand_change(p, s, nullptr);
    r.trace.steps.push_back({e.g().unscaled(p), s, lambda});
    advance(p, s, lambda);
    check_bound(pp, p);
  }
  r.price = e.g().unscaled(p);
  return r;
}

}  // namespace pma
