#include "pma/demand.hpp"

#include "pma/pricing.hpp"
#include "pma/scaled.hpp"

namespace pma {

bool is_demanded(std::span<const Bid> bids, const Bundle& x, const Price& p, const SfmOptions& sfm) {
  const std::size_t n = p.goods();
  if (x.goods() != n) throw DimensionError("bundle and price dimensions differ");
  check_dimensions(bids, n);
  std::int64_t den = 1;
  for (const auto& v : p.values()) den = checked_lcm(den, v.den());
  ScaledLyapunov g(bids, x.items, ScaledLyapunov::scale_for(bids, den));
  const std::vector<std::int64_t> q = g.scaled(p);
  const std::int64_t here = g.value(q);
  for (std::int64_t delta : {1, -1}) {
    SetFunction h{n, [&](GoodSet s) {
                    GoodSet goods;
                    for (auto pos : s.elements()) goods.insert(pos + 1);
                    return g.value_moved(q, goods, delta) - here;
                  }};
    if (minimise(h, sfm).value < 0) return false;
  }
  return true;
}

Rational valuation(std::span<const Bid> bids, const Bundle& x, const SfmOptions& sfm) {
  const std::size_t n = x.goods();
  check_dimensions(bids, n);
  const std::int64_t scale = ScaledLyapunov::scale_for(bids);
  std::vector<Bid> scaled;
  scaled.reserve(bids.size());
  for (const auto& b : bids) {
    Bid s = b;
    for (auto& v : s.values) v *= scale;
    scaled.push_back(std::move(s));
  }
  PriceProblem pp = PriceProblem::without_reserves(n, std::move(scaled), x.items);
  pp.box_limited = true;
  pp.sfm = sfm;
  Price q = long_step_min_up(pp, StepRule::binary).price;
  for (std::size_t i = 1; i <= n; ++i) q.at(i) /= scale;
  if (!is_demanded(bids, x, q, sfm)) {
    throw InfeasibleBundle("bundle " + x.str() + " is not demanded at any price in [0, M]^n");
  }
  return indirect_utility(bids, q) + dot(q, x);
}

}  // namespace pma
