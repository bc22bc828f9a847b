#include "pma/core.hpp"

#include <sstream>

namespace pma {

std::string to_string(const Bid& b) {
  std::string s = "(";
  for (std::size_t i = 0; i < b.values.size(); ++i) {
    if (i) s += ",";
    s += b.values[i].decimal();
  }
  return s + ";" + (b.weight > 0 ? "+" : "") + std::to_string(b.weight) + ")";
}

bool Price::is_integral() const {
  for (const auto& v : values_) {
    if (!v.is_integer()) return false;
  }
  return true;
}

Price Price::moved(GoodSet s, const Rational& delta) const {
  Price out = *this;
  for (std::size_t g = 1; g <= values_.size(); ++g) {
    if (s.contains(g)) out.values_[g - 1] += delta;
  }
  return out;
}

std::string Price::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) s += ",";
    s += values_[i].decimal();
  }
  return s + ")";
}

std::int64_t Bundle::total_items() const {
  std::int64_t s = 0;
  for (auto v : items) s += v;
  return s;
}

Bundle& Bundle::operator+=(const Bundle& o) {
  if (o.items.size() != items.size()) throw DimensionError("bundle dimension mismatch");
  for (std::size_t i = 0; i < items.size(); ++i) items[i] += o.items[i];
  rejects += o.rejects;
  return *this;
}

Bundle& Bundle::operator-=(const Bundle& o) {
  if (o.items.size() != items.size()) throw DimensionError("bundle dimension mismatch");
  for (std::size_t i = 0; i < items.size(); ++i) items[i] -= o.items[i];
  rejects -= o.rejects;
  return *this;
}

std::string Bundle::str() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < items.size(); ++i) os << (i ? "," : "") << items[i];
  os << "; rejects " << rejects << ")";
  return os.str();
}

BidList BidList::from_weighted(std::string owner,
                               const std::vector<std::pair<std::vector<Rational>, std::int64_t>>& weighted) {
  BidList out;
  out.owner = std::move(owner);
  for (const auto& [values, w] : weighted) {
    if (w == 0) throw std::invalid_argument("bid weight must be non-zero");
    int sign = w > 0 ? 1 : -1;
    for (std::int64_t k = 0; k < (w > 0 ? w : -w); ++k) out.bids.emplace_back(values, sign);
  }
  return out;
}

std::int64_t BidList::total_weight() const {
  std::int64_t s = 0;
  for (const auto& b : bids) s += b.weight;
  return s;
}

std::int64_t BidList::negative_count() const {
  std::int64_t s = 0;
  for (const auto& b : bids) s += b.weight < 0;
  return s;
}

Rational max_bid_value(std::span<const Bid> bids) {
  Rational m;
  for (const auto& b : bids) {
    for (const auto& v : b.values) m = std::max(m, v);
  }
  return m;
}

GoodSet demanded_goods(const Bid& bid, const Price& p) {
  if (bid.goods() != p.goods()) throw DimensionError("bid and price dimensions differ");
  GoodSet best{0};
  Rational best_surplus;
  for (Good g = 1; g <= bid.goods(); ++g) {
    Rational s = bid.values[g - 1] - p.values()[g - 1];
    if (s > best_surplus) {
      best_surplus = s;
      best = GoodSet{g};
    } else if (s == best_surplus) {
      best.insert(g);
    }
  }
  return best;
}

bool is_marginal(const Bid& bid, const Price& p) { return demanded_goods(bid, p).size() > 1; }

std::optional<Rational> surplus_gap(const Bid& bid, const Price& p) {
  GoodSet demanded = demanded_goods(bid, p);
  if (demanded.size() == bid.goods() + 1) return std::nullopt;
  Rational best = surplus(bid, p, demanded.min());
  std::optional<Rational> runner_up;
  for (Good g = 0; g <= bid.goods(); ++g) {
    if (demanded.contains(g)) continue;
    Rational s = surplus(bid, p, g);
    if (!runner_up || s > *runner_up) runner_up = s;
  }
  return best - *runner_up;
}

Rational indirect_utility(std::span<const Bid> bids, const Price& p) {
  Rational total;
  for (const auto& b : bids) {
    if (b.goods() != p.goods()) throw DimensionError("bid and price dimensions differ");
    Rational best;
    for (Good g = 1; g <= b.goods(); ++g) best = std::max(best, b.values[g - 1] - p.values()[g - 1]);
    if (b.weight > 0) {
      total += best;
    } else {
      total -= best;
    }
  }
  return total;
}

Bundle demanded_bundle(std::span<const Bid> bids, const Price& p) {
  Bundle x(p.goods());
  for (const auto& b : bids) {
    GoodSet d = demanded_goods(b, p);
    if (d.size() != 1) throw MarginalPrice("bid " + to_string(b) + " is marginal at " + p.str());
    x.at(d.min()) += b.weight;
  }
  return x;
}

Bid project_bid(const Bid& bid, const Price& p) {
  GoodSet demanded = demanded_goods(bid, p);
  Bid out = bid;
  if (demanded.size() == bid.goods() + 1) return out;
  if (demanded.contains(0)) {
    for (Good g = 1; g <= bid.goods(); ++g) {
      if (!demanded.contains(g)) out.values[g - 1] -= 1;
    }
  } else {
    for (Good g = 1; g <= bid.goods(); ++g) {
      if (demanded.contains(g)) out.values[g - 1] += 1;
    }
  }
  return out;
}

BidList shift_bids(const BidList& list, Good i, const Rational& delta) {
  BidList out = list;
  for (auto& b : out.bids) {
    if (i == 0) {
      for (auto& v : b.values) v -= delta;
    } else {
      b.values.at(i - 1) += delta;
    }
  }
  return out;
}

Rational dot(const Price& p, const Bundle& x) {
  if (p.goods() != x.goods()) throw DimensionError("price and bundle dimensions differ");
  Rational s;
  for (std::size_t i = 0; i < x.items.size(); ++i) s += p.values()[i] * x.items[i];
  return s;
}

void check_dimensions(std::span<const Bid> bids, std::size_t goods) {
  for (const auto& b : bids) {
    if (b.goods() != goods) {
      throw DimensionError("bid " + to_string(b) + " has " + std::to_string(b.goods()) + " values, expected " +
                           std::to_string(goods));
    }
    if (b.weight != 1 && b.weight != -1) throw std::invalid_argument("unit bids must have weight +1 or -1");
  }
}

std::vector<Bid> aggregate(std::span<const BidList> bidders) {
  std::vector<Bid> out;
  for (const auto& l : bidders) out.insert(out.end(), l.bids.begin(), l.bids.end());
  return out;
}

}  // namespace pma
