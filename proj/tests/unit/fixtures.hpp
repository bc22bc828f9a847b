#pragma once

#include <vector>

#include "pma/core.hpp"

namespace pma::test {

inline BidList alice() { return BidList::from_weighted("alice", {{{6, 6}, 1}, {{0, 4}, 1}}); }

inline BidList bob() {
  return BidList::from_weighted("bob", {{{2, 4}, 1}, {{4, 2}, 1}, {{4, 4}, -1}, {{6, 6}, 1}});
}

inline std::vector<BidList> alice_and_bob() { return {alice(), bob()}; }

inline Price price(std::initializer_list<std::int64_t> v) {
  std::vector<Rational> r;
  for (auto x : v) r.emplace_back(x);
  return Price(std::move(r));
}

inline Bid bid(std::initializer_list<std::int64_t> v, int w = 1) {
  std::vector<Rational> r;
  for (auto x : v) r.emplace_back(x);
  return Bid(std::move(r), w);
}

}  // namespace pma::test
