#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pma/errors.hpp"
#include "pma/good_set.hpp"
#include "pma/rational.hpp"

namespace pma {

// A unit bid: one value per real good (goods 1..n) and a weight of +1 or -1.
// The reject good 0 has value 0 and is not stored.
struct Bid {
  std::vector<Rational> values;
  int weight = 1;

  Bid() = default;
  Bid(std::vector<Rational> v, int w) : values(std::move(v)), weight(w) {}

  std::size_t goods() const { return values.size(); }
  Rational operator[](Good g) const { return g == 0 ? Rational{} : values[g - 1]; }
  bool operator==(const Bid&) const = default;
};

std::string to_string(const Bid& b);

// Price vector over goods 1..n. p_0 is always 0.
class Price {
 public:
  Price() = default;
  explicit Price(std::size_t goods) : values_(goods) {}
  explicit Price(std::vector<Rational> values) : values_(std::move(values)) {}
  static Price uniform(std::size_t goods, Rational value) {
    return Price(std::vector<Rational>(goods, value));
  }

  std::size_t goods() const { return values_.size(); }
  Rational operator[](Good g) const { return g == 0 ? Rational{} : values_[g - 1]; }
  // Mutable access to a real good (g >= 1).
  Rational& at(Good g) { return values_.at(g - 1); }
  const std::vector<Rational>& values() const { return values_; }

  bool is_integral() const;
  // p + delta * e^S. Good 0 in S is ignored.
  Price moved(GoodSet s, const Rational& delta) const;
  std::string str() const;

  bool operator==(const Price&) const = default;

 private:
  std::vector<Rational> values_;
};

// Integer bundle over goods 1..n plus a count for the reject good.
struct Bundle {
  std::vector<std::int64_t> items;
  std::int64_t rejects = 0;

  Bundle() = default;
  explicit Bundle(std::size_t goods) : items(goods, 0) {}
  Bundle(std::vector<std::int64_t> it, std::int64_t rej = 0) : items(std::move(it)), rejects(rej) {}

  std::size_t goods() const { return items.size(); }
  std::int64_t operator[](Good g) const { return g == 0 ? rejects : items[g - 1]; }
  std::int64_t& at(Good g) { return g == 0 ? rejects : items.at(g - 1); }
  // Sum of real-good quantities.
  std::int64_t total_items() const;
  Bundle& operator+=(const Bundle& o);
  Bundle& operator-=(const Bundle& o);
  friend Bundle operator+(Bundle a, const Bundle& b) { return a += b; }
  friend Bundle operator-(Bundle a, const Bundle& b) { return a -= b; }
  bool operator==(const Bundle&) const = default;
  std::string str() const;
};

// Bids of one bidder. Weighted input is expanded into unit bids.
struct BidList {
  std::string owner;
  std::vector<Bid> bids;

  BidList() = default;
  BidList(std::string name, std::vector<Bid> b) : owner(std::move(name)), bids(std::move(b)) {}

  // Expands (values, w) into |w| copies of a unit bid with sign(w). Zero weights
  // are rejected with std::invalid_argument.
  static BidList from_weighted(std::string owner,
                               const std::vector<std::pair<std::vector<Rational>, std::int64_t>>& weighted);

  std::size_t goods() const { return bids.empty() ? 0 : bids.front().goods(); }
  std::int64_t total_weight() const;
  std::int64_t negative_count() const;
};

// Largest value entry over all bids (0 for an empty list). Upper bound on the
// minimal clearing price.
Rational max_bid_value(std::span<const Bid> bids);

// Surplus b_g - p_g.
inline Rational surplus(const Bid& b, const Price& p, Good g) { return b[g] - p[g]; }

// argmax of b_i - p_i over [n]_0.
GoodSet demanded_goods(const Bid& bid, const Price& p);
bool is_marginal(const Bid& bid, const Price& p);

// Best surplus minus the best surplus over non-demanded goods. nullopt when
// the bid demands every good in [n]_0.
std::optional<Rational> surplus_gap(const Bid& bid, const Price& p);

// f_B(p) = sum of w(b) * max_i (b_i - p_i).
Rational indirect_utility(std::span<const Bid> bids, const Price& p);

// Unique demanded bundle at a price where no bid is marginal. The reject
// coordinate holds the weight of rejecting bids. Throws MarginalPrice.
Bundle demanded_bundle(std::span<const Bid> bids, const Price& p);

// Projection w.r.t. p: b - e^{[n]_0 \ I} if 0 in I, b + e^I otherwise, where
// I are the demanded goods. Bids demanding all goods are returned unchanged.
Bid project_bid(const Bid& bid, const Price& p);

// Adds delta to the value of good i in every bid. For i = 0 the reject value
// stays pinned at 0, so every real-good value moves by -delta instead, which
// is the same change of relative surplus.
BidList shift_bids(const BidList& list, Good i, const Rational& delta);

// p . x over the real goods.
Rational dot(const Price& p, const Bundle& x);

// Throws DimensionError when a bid or price does not have `goods` entries.
void check_dimensions(std::span<const Bid> bids, std::size_t goods);

// Concatenation of all bidders' bids.
std::vector<Bid> aggregate(std::span<const BidList> bidders);

}  // namespace pma
