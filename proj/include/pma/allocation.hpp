#pragma once

#include <optional>
#include <vector>

#include "pma/allocation_problem.hpp"
#include "pma/graphs.hpp"
#include "pma/sfm.hpp"

namespace pma {

struct AllocationStats {
  std::size_t iterations = 0;
  std::size_t unambiguous_calls = 0;
  std::size_t shift_calls = 0;
  std::size_t iteration_bound = 0;  // |J| * C(n+1, 2)
  std::vector<std::size_t> edge_counts;  // after the initial pass and each reduction
};

// One bundle per bidder, reject coordinate included.
struct Solution {
  std::vector<Bundle> bundles;
  AllocationStats stats;
};

struct AllocateOptions {
  std::optional<PriorityList> priority;  // PriorityParams instead of FindParams
  SfmOptions sfm;
};

// Residual supply = target, with the reject coordinate set to the total
// weight minus the number of items. Throws NotClearing if the aggregate list
// does not demand the target at p, std::invalid_argument if p is not integral.
AllocationProblem initial_problem(std::vector<BidList> bidders, const std::vector<std::int64_t>& target,
                                  const Price& p, const SfmOptions& sfm = {});

AllocationProblem non_marginals(AllocationProblem a);

// Hands the residual of cluster I to its bidder. With a link good, only
// d = w(B^j_I) - sum of r_i over I \ {link} items of the link good go along.
// Throws BadCluster when (I, j) is not a cluster with that link structure.
AllocationProblem unambiguous_marginals(AllocationProblem a, const DemandCluster& cluster, std::optional<Good> link);

// Shifts bidder j's bids by e^i / 10, moves to the best price p +- e^S / 10,
// projects every bid there and undoes the shift. The price stays p.
AllocationProblem shift_project_unshift(AllocationProblem a, Good i, std::size_t j, const SfmOptions& sfm = {});

// Partition of the target among bidders at an integral clearing price p.
// Internal invariant failures (edge count not decreasing, iteration bound,
// residual left over) raise std::logic_error.
Solution allocate(std::vector<BidList> bidders, const std::vector<std::int64_t>& target, const Price& p,
                  const AllocateOptions& opts = {});

// r + sum of m^j per good, reject good included.
Bundle allocated_total(const AllocationProblem& a);

}  // namespace pma
