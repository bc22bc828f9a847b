#pragma once

#include <span>

#include "pma/core.hpp"
#include "pma/sfm.hpp"

namespace pma {

// Membership x in D_B(p) for a valid list. The reject coordinate of x is
// implied by the list and ignored. Exact: p must minimise g_x = f_B + x.p,
// which is certified by local optimality on the lattice generated by the
// denominators of the bids and p (two SFM calls).
bool is_demanded(std::span<const Bid> bids, const Bundle& x, const Price& p, const SfmOptions& sfm = {});
inline bool is_demanded(const BidList& list, const Bundle& x, const Price& p, const SfmOptions& sfm = {}) {
  return is_demanded(list.bids, x, p, sfm);
}

// u(x) = f_B(q) + q.x at a price q in [0, M]^n where x is demanded. Throws
// InfeasibleBundle when no such price exists.
Rational valuation(std::span<const Bid> bids, const Bundle& x, const SfmOptions& sfm = {});
inline Rational valuation(const BidList& list, const Bundle& x, const SfmOptions& sfm = {}) {
  return valuation(list.bids, x, sfm);
}

}  // namespace pma
