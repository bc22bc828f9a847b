#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "pma/allocation.hpp"
#include "pma/demand.hpp"
#include "pma/testgen.hpp"
#include "pma/validity.hpp"

using namespace pma;
using pma::test::bid;
using pma::test::price;

namespace {

Bid marginal_12(int w = 1) { return bid({5, 5}, w); }

AllocationProblem manual(std::size_t n, Price p, std::vector<std::vector<Bid>> lists, Bundle residual) {
  AllocationProblem a;
  a.price = std::move(p);
  char name = 'A';
  for (auto& l : lists) {
    a.bidders.emplace_back(std::string(1, name++), std::move(l));
    a.partial.emplace_back(n);
  }
  a.residual = std::move(residual);
  return a;
}

bool all_integral(const AllocationProblem& a) {
  for (const auto& l : a.bidders) {
    for (const auto& b : l.bids) {
      for (const auto& v : b.values) {
        if (!v.is_integer()) return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST(InitialProblem, WorkedExample) {
  AllocationProblem a = initial_problem(test::alice_and_bob(), {1, 1}, price({4, 4}));
  EXPECT_EQ(a.residual, Bundle({1, 1}, 2));
  for (const auto& m : a.partial) EXPECT_EQ(m, Bundle(2));
}

TEST(InitialProblem, ZeroTarget) {
  AllocationProblem a = initial_problem(test::alice_and_bob(), {0, 0}, price({7, 7}));
  EXPECT_EQ(a.residual, Bundle({0, 0}, 4));
  AllocationProblem e = initial_problem({}, {0, 0}, price({0, 0}));
  EXPECT_TRUE(e.vacuous());
}

TEST(InitialProblem, Errors) {
  EXPECT_THROW(initial_problem(test::alice_and_bob(), {1, 1}, price({0, 0})), NotClearing);
  Price half({Rational(7, 2), Rational(4)});
  EXPECT_THROW(initial_problem(test::alice_and_bob(), {1, 1}, half), std::invalid_argument);
}

TEST(NonMarginals, OnlyMarginalBidsRemain) {
  AllocationProblem a = initial_problem(test::alice_and_bob(), {0, 2}, price({6, 4}));
  const Bundle total = allocated_total(a);
  AllocationProblem b = non_marginals(a);
  for (const auto& l : b.bidders) {
    for (const auto& x : l.bids) EXPECT_TRUE(is_marginal(x, b.price));
  }
  EXPECT_EQ(allocated_total(b), total);
  // Alice's (6,6) bid demands good 2 uniquely at (6,4); her (0,4) bid is marginal on {0,2}.
  EXPECT_EQ(b.bidders[0].bids, std::vector<Bid>{bid({0, 4})});
  EXPECT_EQ(b.partial[0], Bundle({0, 1}, 0));
}

TEST(NonMarginals, NoMarginalBidsEmptiesTheProblem) {
  AllocationProblem a = initial_problem(test::alice_and_bob(), {2, 2}, price({1, 2}));
  AllocationProblem b = non_marginals(a);
  EXPECT_TRUE(b.vacuous());
  EXPECT_EQ(b.residual, Bundle(2));
}

TEST(NonMarginals, NegativeBidIsSignedBookkeeping) {
  // Bob at (3, 5): (4,2) and (6,6) demand good 1, (4,4;-1) demands good 1, (2,4) rejects.
  const Price p = price({3, 5});
  Bundle x = demanded_bundle(test::bob().bids, p);
  AllocationProblem a = manual(2, p, {test::bob().bids}, x);
  AllocationProblem b = non_marginals(a);
  EXPECT_EQ(b.partial[0], Bundle({1, 0}, 1));
  EXPECT_EQ(b.residual, Bundle(2));
}

TEST(UnambiguousMarginals, IsolatedClusterTakesResidual) {
  AllocationProblem a = manual(2, price({0, 0}), {{marginal_12()}}, Bundle({1, 0}, 0));
  AllocationProblem b = unambiguous_marginals(a, DemandCluster{GoodSet{1, 2}, 0}, std::nullopt);
  EXPECT_TRUE(b.vacuous());
  EXPECT_EQ(b.partial[0], Bundle({1, 0}, 0));
  EXPECT_EQ(b.residual, Bundle(2));
}

TEST(UnambiguousMarginals, LinkGoodGetsTheRemainder) {
  // A: two bids on {1,2}; B: one bid on {2,3}. Link good 2. r = (1, 1, 1).
  AllocationProblem a =
      manual(3, price({0, 0, 0}), {{bid({5, 5, 0}), bid({5, 5, 0})}, {bid({0, 5, 5})}}, Bundle({1, 1, 1}, 0));
  AllocationProblem b = unambiguous_marginals(a, DemandCluster{GoodSet{1, 2}, 0}, Good{2});
  // d = 2 - r_1 = 1 item of good 2 goes to A.
  EXPECT_EQ(b.partial[0], Bundle({1, 1, 0}, 0));
  EXPECT_EQ(b.residual, Bundle({0, 0, 1}, 0));
  EXPECT_TRUE(b.bidders[0].bids.empty());
  EXPECT_EQ(b.bidders[1].bids.size(), 1u);
}

TEST(UnambiguousMarginals, ZeroRemainderMovesOnlyTheOtherGoods) {
  AllocationProblem a = manual(3, price({0, 0, 0}), {{bid({5, 5, 0})}, {bid({0, 5, 5})}}, Bundle({1, 0, 1}, 0));
  AllocationProblem b = unambiguous_marginals(a, DemandCluster{GoodSet{1, 2}, 0}, Good{2});
  EXPECT_EQ(b.partial[0], Bundle({1, 0, 0}, 0));
  EXPECT_EQ(b.residual, Bundle({0, 0, 1}, 0));
}

TEST(UnambiguousMarginals, BadClusterIsRejected) {
  AllocationProblem a = manual(3, price({0, 0, 0}), {{bid({5, 5, 0})}, {bid({0, 5, 5})}}, Bundle({1, 0, 1}, 0));
  EXPECT_THROW(unambiguous_marginals(a, DemandCluster{GoodSet{1, 3}, 0}, std::nullopt), BadCluster);
  EXPECT_THROW(unambiguous_marginals(a, DemandCluster{GoodSet{1, 2}, 0}, std::nullopt), BadCluster);
  EXPECT_THROW(unambiguous_marginals(a, DemandCluster{GoodSet{1, 2}, 0}, Good{1}), BadCluster);
}

TEST(ShiftProjectUnshift, SmallestCycleLosesAnEdge) {
  AllocationProblem a = manual(2, price({0, 0}), {{marginal_12()}, {marginal_12()}}, Bundle({1, 1}, 0));
  const std::size_t before = build_marginal_graph(a).edge_count();
  AllocationProblem b = shift_project_unshift(a, 1, 0);
  EXPECT_LT(build_marginal_graph(b).edge_count(), before);
  bool some_non_marginal = false;
  for (const auto& l : b.bidders) some_non_marginal = some_non_marginal || !is_marginal(l.bids[0], b.price);
  EXPECT_TRUE(some_non_marginal);
  EXPECT_TRUE(all_integral(b));
  EXPECT_EQ(b.price, a.price);
  EXPECT_EQ(b.partial, a.partial);
  EXPECT_EQ(b.residual, a.residual);
}

TEST(ShiftProjectUnshift, ProjectionKeepsOnlyTheAllGoodsBid) {
  // Projecting at (4, 4): only Bob's negative bid demands every good.
  std::size_t unchanged = 0;
  for (const auto& l : test::alice_and_bob()) {
    for (const auto& b : l.bids) {
      if (project_bid(b, price({4, 4})) == b) {
        ++unchanged;
        EXPECT_EQ(b, bid({4, 4}, -1));
      }
    }
  }
  EXPECT_EQ(unchanged, 1u);
}

TEST(ShiftProjectUnshift, WorkedExampleCycle) {
  AllocationProblem a = non_marginals(initial_problem(test::alice_and_bob(), {1, 1}, price({4, 4})));
  ParamsResult r = find_params(a);
  ASSERT_TRUE(std::holds_alternative<CycleEdge>(r)) << describe(r);
  auto e = std::get<CycleEdge>(r);
  AllocationProblem b = shift_project_unshift(a, e.good, e.bidder);
  EXPECT_TRUE(all_integral(b));
  EXPECT_LT(build_marginal_graph(b).edge_count(), build_marginal_graph(a).edge_count());
  EXPECT_EQ(b.residual, a.residual);
  for (const auto& l : b.bidders) EXPECT_TRUE(locally_valid(l.bids, b.price));
}

TEST(Allocate, WorkedExample) {
  Solution s = allocate(test::alice_and_bob(), {1, 1}, price({4, 4}));
  ASSERT_EQ(s.bundles.size(), 2u);
  const auto& ta = s.bundles[0].items;
  const auto& tb = s.bundles[1].items;
  EXPECT_TRUE((ta == std::vector<std::int64_t>{1, 0}) || (ta == std::vector<std::int64_t>{0, 1}));
  EXPECT_EQ(ta[0] + tb[0], 1);
  EXPECT_EQ(ta[1] + tb[1], 1);
  EXPECT_TRUE(is_demanded(test::alice(), s.bundles[0], price({4, 4})));
  EXPECT_TRUE(is_demanded(test::bob(), s.bundles[1], price({4, 4})));
}

TEST(Allocate, PriorityDecidesBetweenFeasibleSplits) {
  AllocateOptions bob_first;
  bob_first.priority = PriorityList{{1, 1}, {2, 0}};
  AllocateOptions alice_first;
  alice_first.priority = PriorityList{{1, 0}, {2, 1}};
  Solution b = allocate(test::alice_and_bob(), {1, 1}, price({4, 4}), bob_first);
  Solution a = allocate(test::alice_and_bob(), {1, 1}, price({4, 4}), alice_first);
  EXPECT_EQ(b.bundles[1].items, (std::vector<std::int64_t>{1, 0}));
  EXPECT_EQ(a.bundles[0].items, (std::vector<std::int64_t>{1, 0}));
}

TEST(Allocate, SingleBidderGetsEverything) {
  Solution s = allocate({test::bob()}, {1, 1}, price({4, 4}));
  EXPECT_EQ(s.bundles[0].items, (std::vector<std::int64_t>{1, 1}));
}

TEST(Allocate, NoMarginalBidsNeedsNoIterations) {
  Solution s = allocate(test::alice_and_bob(), {2, 2}, price({1, 2}));
  EXPECT_EQ(s.stats.iterations, 0u);
  EXPECT_EQ(s.bundles[0].items, (std::vector<std::int64_t>{1, 1}));
}

TEST(AllocationProperties, GeneratedInstancesStepByStep) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 30; ++k) {
    GenConfig cfg;
    cfg.goods = 2 + rng() % 3;
    cfg.rounds = 2 + rng() % 6;
    cfg.max_value = 20;
    GeneratedAuction g = generate_auction(cfg, 2 + rng() % 3, rng());
    AllocationProblem a = initial_problem(g.bidders, g.target, g.price);
    const Bundle total = allocated_total(a);
    a = non_marginals(a);
    std::size_t edges = build_marginal_graph(a).edge_count();
    while (!a.vacuous()) {
      ParamsResult r = find_params(a);
      if (auto* c = std::get_if<IsolatedCluster>(&r)) {
        a = unambiguous_marginals(a, c->cluster, std::nullopt);
      } else if (auto* l = std::get_if<LeafCluster>(&r)) {
        a = unambiguous_marginals(a, l->cluster, l->link);
      } else {
        auto e = std::get<CycleEdge>(r);
        a = shift_project_unshift(a, e.good, e.bidder);
      }
      std::size_t after = build_marginal_graph(a).edge_count();
      ASSERT_LT(after, edges);
      AllocationProblem b = non_marginals(a);
      EXPECT_EQ(build_marginal_graph(b).edges, build_marginal_graph(a).edges);
      a = std::move(b);
      edges = after;
      EXPECT_EQ(allocated_total(a), total);
      EXPECT_TRUE(all_integral(a));
      for (const auto& l : a.bidders) EXPECT_TRUE(locally_valid(l.bids, a.price));
    }
    for (std::size_t j = 0; j < g.bidders.size(); ++j) EXPECT_TRUE(is_demanded(g.bidders[j], a.partial[j], g.price));
  }
}

TEST(AllocationProperties, DeterministicWithPriority) {
  GenConfig cfg;
  cfg.goods = 3;
  cfg.rounds = 6;
  GeneratedAuction g = generate_auction(cfg, 3, 99);
  AllocateOptions opts;
  opts.priority = canonical_priority(3, 3);
  Solution a = allocate(g.bidders, g.target, g.price, opts);
  Solution b = allocate(g.bidders, g.target, g.price, opts);
  for (std::size_t j = 0; j < a.bundles.size(); ++j) EXPECT_EQ(a.bundles[j], b.bundles[j]);
  EXPECT_EQ(a.stats.edge_counts, b.stats.edge_counts);
}
