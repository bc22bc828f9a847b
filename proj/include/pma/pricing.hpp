#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pma/core.hpp"
#include "pma/sfm.hpp"

namespace pma {

// Aggregate bids and target for price finding. Bids must have integer values.
struct PriceProblem {
  std::size_t goods = 0;
  std::vector<Bid> bids;
  std::vector<std::int64_t> target;
  std::int64_t max_price = 0;  // M: no clearing price coordinate exceeds it
  // When set, prices are confined to [0, M]^n and coordinates at M are frozen
  // instead of raising InfeasibleTarget.
  bool box_limited = false;
  SfmOptions sfm;

  // Appends the ||t||_1 + 1 reserve bids at the origin.
  static PriceProblem with_reserves(std::vector<Bid> bids, std::vector<std::int64_t> target);
  static PriceProblem without_reserves(std::size_t goods, std::vector<Bid> bids, std::vector<std::int64_t> target);
};

struct DescentStep {
  Price price;  // before the step
  GoodSet direction;
  std::int64_t length = 1;
};

struct DescentTrace {
  std::vector<DescentStep> steps;
  std::size_t iterations() const { return steps.size(); }
};

struct PriceResult {
  Price price;
  DescentTrace trace;
};

struct DemandBounds {
  GoodSet increase;  // I_p: every demanded bundle exceeds t_i
  GoodSet hold;      // J_p: no demanded bundle exceeds t_i
  std::vector<std::int64_t> min_x;
  std::vector<std::int64_t> max_x;
};

enum class StepRule { binary, demand_change };

// g_t(p) = f_B(p) + t.p
Rational lyapunov(const PriceProblem& pp, const Price& p);
// g(p + e^S) - g(p); S holds goods 1..n.
Rational slope(const PriceProblem& pp, const Price& p, GoodSet s);
DemandBounds demand_bounds(const PriceProblem& pp, const Price& p);
// Inclusion-wise minimal minimiser of S -> slope(pp, p, S); empty at the
// minimal minimiser of g.
GoodSet steepest_direction(const PriceProblem& pp, const Price& p);

PriceResult min_up(const PriceProblem& pp);
std::int64_t step_length_binary(const PriceProblem& pp, const Price& p, GoodSet s0);
// `rounds`, when given, receives the number of demand-change rounds.
std::int64_t step_length_demand_change(const PriceProblem& pp, const Price& p, GoodSet s0,
                                       std::size_t* rounds = nullptr);
PriceResult long_step_min_up(const PriceProblem& pp, StepRule rule);

}  // namespace pma
