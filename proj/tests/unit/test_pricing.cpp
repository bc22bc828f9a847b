#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "pma/demand.hpp"
#include "pma/pricing.hpp"
#include "pma/testgen.hpp"

using namespace pma;
using pma::test::price;

namespace {

PriceProblem worked(std::vector<std::int64_t> t = {1, 1}) {
  return PriceProblem::with_reserves(aggregate(test::alice_and_bob()), std::move(t));
}

}  // namespace

TEST(Lyapunov, WorkedExample) {
  PriceProblem pp = PriceProblem::without_reserves(2, aggregate(test::alice_and_bob()), {1, 1});
  EXPECT_EQ(lyapunov(pp, price({4, 4})), Rational(12));
  EXPECT_EQ(lyapunov(pp, price({0, 0})), Rational(20));
  PriceProblem empty = PriceProblem::without_reserves(2, {}, {0, 0});
  EXPECT_EQ(lyapunov(empty, price({3, 7})), Rational(0));
}

TEST(Slope, Examples) {
  PriceProblem pp = worked();
  EXPECT_EQ(slope(pp, price({0, 0}), GoodSet{}), Rational(0));
  EXPECT_LT(slope(pp, price({0, 0}), GoodSet{1, 2}), Rational(0));
  for (auto s : {GoodSet{1}, GoodSet{2}, GoodSet{1, 2}}) EXPECT_GE(slope(pp, price({4, 4}), s), Rational(0));
}

TEST(DemandBounds, Examples) {
  PriceProblem pp = worked();
  DemandBounds d = demand_bounds(pp, price({4, 4}));
  EXPECT_EQ(d.max_x[0], 2);
  EXPECT_EQ(d.min_x[0], 0);
  EXPECT_FALSE(d.increase.intersects(d.hold));

  DemandBounds u = demand_bounds(pp, price({1, 2}));
  EXPECT_EQ(u.increase | u.hold, (GoodSet{1, 2}));

  DemandBounds high = demand_bounds(pp, price({20, 20}));
  EXPECT_EQ(high.hold, (GoodSet{1, 2}));
}

TEST(SteepestDirection, Examples) {
  PriceProblem pp = worked();
  EXPECT_EQ(steepest_direction(pp, price({0, 0})), (GoodSet{1, 2}));
  EXPECT_EQ(steepest_direction(pp, price({4, 4})), GoodSet{});
  // (1, 2) demands exactly t = (1, 1) for Alice alone.
  PriceProblem a = PriceProblem::with_reserves(test::alice().bids, {1, 1});
  EXPECT_EQ(steepest_direction(a, price({1, 2})), GoodSet{});
}

TEST(MinUp, WorkedExample) {
  PriceResult r = min_up(worked());
  EXPECT_EQ(r.price, price({4, 4}));
  ASSERT_EQ(r.trace.iterations(), 4u);
  for (const auto& s : r.trace.steps) {
    EXPECT_EQ(s.direction, (GoodSet{1, 2}));
    EXPECT_EQ(s.length, 1);
  }
}

TEST(MinUp, TargetDemandedAtOrigin) {
  PriceProblem pp = PriceProblem::with_reserves({test::bid({5, 0})}, {1, 0});
  EXPECT_EQ(min_up(pp).price, price({0, 0}));
  PriceResult zero = min_up(PriceProblem::with_reserves({}, {0, 0}));
  EXPECT_EQ(zero.price, price({0, 0}));
  EXPECT_EQ(zero.trace.iterations(), 0u);
}

TEST(MinUp, ZeroTargetPricesEveryBidOut) {
  PriceResult r = min_up(worked({0, 0}));
  EXPECT_EQ(r.price, price({6, 6}));
  EXPECT_EQ(r.trace.iterations(), 6u);
}

TEST(StepLength, WorkedExample) {
  PriceProblem pp = worked();
  EXPECT_EQ(step_length_binary(pp, price({0, 0}), GoodSet{1, 2}), 4);
  std::size_t rounds = 0;
  EXPECT_EQ(step_length_demand_change(pp, price({0, 0}), GoodSet{1, 2}, &rounds), 4);
  EXPECT_GE(rounds, 1u);
  EXPECT_EQ(step_length_binary(pp, price({3, 3}), GoodSet{1, 2}), 1);
  EXPECT_EQ(step_length_demand_change(pp, price({3, 3}), GoodSet{1, 2}), 1);
}

TEST(StepLength, DemandChangeRoundsMatchLeavingBids) {
  // Each cancelling pair leaves at its own level without changing the slope,
  // so every level costs one round; the last bid then changes the slope.
  std::vector<Bid> bids{test::bid({2, 0}), test::bid({2, 0}, -1), test::bid({4, 0}), test::bid({4, 0}, -1),
                        test::bid({6, 0})};
  PriceProblem pp = PriceProblem::with_reserves(bids, {0, 0});
  std::size_t rounds = 0;
  const std::int64_t lambda = step_length_demand_change(pp, price({0, 0}), GoodSet{1}, &rounds);
  EXPECT_EQ(lambda, 6);
  EXPECT_EQ(lambda, step_length_binary(pp, price({0, 0}), GoodSet{1}));
  EXPECT_EQ(rounds, 3u);
}

TEST(StepLength, NoBidInsideDirectionTakesOneRound) {
  std::vector<Bid> bids{test::bid({0, 5})};
  PriceProblem pp = PriceProblem::with_reserves(bids, {0, 0});
  std::size_t rounds = 0;
  EXPECT_EQ(step_length_demand_change(pp, price({0, 0}), GoodSet{1}, &rounds),
            step_length_binary(pp, price({0, 0}), GoodSet{1}));
  EXPECT_EQ(rounds, 1u);
}

TEST(LongStepMinUp, WorkedExampleTakesOneStep) {
  for (auto rule : {StepRule::binary, StepRule::demand_change}) {
    PriceResult r = long_step_min_up(worked(), rule);
    EXPECT_EQ(r.price, price({4, 4}));
    ASSERT_EQ(r.trace.iterations(), 1u);
    EXPECT_EQ(r.trace.steps[0].length, 4);
    EXPECT_EQ(r.trace.steps[0].price, price({0, 0}));
    EXPECT_EQ(long_step_min_up(PriceProblem::with_reserves({}, {0, 0}), rule).trace.iterations(), 0u);
  }
}

TEST(Pricing, RejectsFractionalBids) {
  std::vector<Bid> bids{Bid({Rational(1, 2), Rational(1)}, 1)};
  EXPECT_THROW(min_up(PriceProblem::with_reserves(bids, {1, 0})), std::invalid_argument);
}

TEST(Pricing, InfeasibleTargetWithoutReserves) {
  // Clearing needs p = 3, above the cap.
  PriceProblem pp = PriceProblem::without_reserves(1, {test::bid({3})}, {0});
  pp.max_price = 2;
  EXPECT_THROW(min_up(pp), InfeasibleTarget);
  EXPECT_THROW(long_step_min_up(pp, StepRule::binary), InfeasibleTarget);
}

TEST(PricingProperties, GeneratedInstances) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 40; ++k) {
    GenConfig cfg;
    cfg.goods = 2 + rng() % 3;
    cfg.rounds = 2 + rng() % 8;
    cfg.max_value = 20;
    GeneratedAuction a = generate_auction(cfg, 1 + rng() % 3, rng());
    std::vector<Bid> bids = aggregate(a.bidders);
    PriceProblem pp = PriceProblem::with_reserves(bids, a.target);
    PriceResult unit = min_up(pp);
    ASSERT_EQ(unit.price, a.price);
    ASSERT_TRUE(unit.price.is_integral());

    // Optimality: no direction decreases g at p*.
    const std::size_t n = cfg.goods;
    for (std::uint64_t bits = 1; bits < (std::uint64_t{1} << n); ++bits) {
      EXPECT_GE(slope(pp, unit.price, GoodSet::from_bits(bits << 1)), Rational(0));
    }
    // Minimality: one step down on any positive coordinate loses the target.
    Bundle t(a.target);
    std::int64_t weight = 0;
    for (const auto& b : pp.bids) weight += b.weight;
    t.rejects = weight - t.total_items();
    EXPECT_TRUE(is_demanded(pp.bids, t, unit.price));
    for (Good i = 1; i <= n; ++i) {
      if (unit.price[i] > Rational(0)) {
        EXPECT_FALSE(is_demanded(pp.bids, t, unit.price.moved(GoodSet{i}, Rational(-1))));
      }
    }
    // Slope is submodular at every visited price.
    for (const auto& s : unit.trace.steps) {
      SetFunction f{n, [&](GoodSet x) { return slope(pp, s.price, GoodSet::from_bits(x.bits() << 1)).to_integer(); }};
      EXPECT_TRUE(is_submodular(f));
    }
  }
}
