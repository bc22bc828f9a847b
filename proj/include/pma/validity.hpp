#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pma/core.hpp"

namespace pma {

// H^y_i = {x >= 0 : x <= y, x_i = y_i} or
// F^y_ij = {x + beta 1 : beta >= 0, x <= y, x_i = y_i, x_j = y_j}.
struct RegionQuery {
  enum class Kind { H, F };
  Kind kind = Kind::H;
  Good i = 1;
  Good j = 0;  // F only
  std::vector<Rational> anchor;

  std::string str() const;
};

bool contains(const RegionQuery& q, const Bid& bid);
// Sum of weights of the bids inside the region.
std::int64_t region_weight(const RegionQuery& q, std::span<const Bid> bids);

// Componentwise maximum. Throws EmptySet.
std::vector<Rational> md(std::span<const Bid> u);
// min_b b_i * 1 + md({b - b_i 1}). Throws EmptySet.
std::vector<Rational> mdF(Good i, std::span<const Bid> u);

enum class Verdict { valid, invalid, undecided };
std::string to_string(Verdict v);

struct ValidityReport {
  Verdict verdict = Verdict::valid;
  std::optional<RegionQuery> witness;  // a negative region when invalid
  std::size_t subsets_checked = 0;
};

struct ValidityOptions {
  std::size_t max_subsets = 2'000'000;
};

// Enumerates sets U of negative bids with |U| <= n + 1 by increasing size and
// checks the H and F regions they generate. Undecided once the subset budget
// runs out.
ValidityReport check_validity(std::span<const Bid> bids, const ValidityOptions& opts = {});
inline ValidityReport check_validity(const BidList& list, const ValidityOptions& opts = {}) {
  return check_validity(list.bids, opts);
}

// Test oracle: sums the weights of bids marginal on every pair of goods at
// every point of a fine grid over [-1, M + 1]^n. Requires n <= 3, integer
// values in [0, 20]; throws ScaleExceeded otherwise.
bool brute_force_valid(std::span<const Bid> bids);

// Local validity near an integral price with integral bids: no price within
// L-infinity distance 1/4 of p has a pair of goods whose marginal bids weigh
// less than zero. Exhaustive over one point per face of the local
// arrangement; n <= 5.
bool locally_valid(std::span<const Bid> bids, const Price& p);

}  // namespace pma
