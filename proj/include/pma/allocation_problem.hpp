#pragma once

#include <vector>

#include "pma/core.hpp"

namespace pma {

// State of the allocation pipeline: price, remaining bid lists, what each
// bidder has been given so far (m^j) and what is left to hand out (r). Both
// bundles carry the reject good in their reject coordinate.
struct AllocationProblem {
  Price price;
  std::vector<BidList> bidders;
  std::vector<Bundle> partial;
  Bundle residual;

  std::size_t goods() const { return price.goods(); }
  bool vacuous() const {
    for (const auto& l : bidders) {
      if (!l.bids.empty()) return false;
    }
    return true;
  }
};

}  // namespace pma
