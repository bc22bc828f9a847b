// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "pma/allocation.hpp"
#include "pma/demand.hpp"
#include "pma/pricing.hpp"
#include "pma/sfm.hpp"
#include "pma/testgen.hpp"
#include "pma/validity.hpp"

using namespace pma;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Price integer_price(std::initializer_list<std::int64_t> v) { return Price(std::vector<Rational>(v.begin(), v.end())); }

std::vector<BidList> alice_and_bob() {
  return {BidList::from_weighted("alice", {{{6, 6}, 1}, {{0, 4}, 1}}),
          BidList::from_weighted("bob", {{{2, 4}, 1}, {{4, 2}, 1}, {{4, 4}, -1}, {{6, 6}, 1}})};
}

std::int64_t max_norm(const Price& p) {
  std::int64_t m = 0;
  for (const auto& v : p.values()) m = std::max(m, v.to_integer());
  return m;
}

// Instances of the trajectory, iteration and integrality checks.
struct Instance {
  GeneratedAuction auction;
  PriceProblem pp;
};

std::vector<Instance> pricing_instances() {
  std::vector<Instance> out;
  std::mt19937_64 rng(20240601);
  for (int k = 0; k < 100; ++k) {
    GenConfig cfg;
    cfg.goods = 2 + rng() % 4;
    cfg.rounds = 5 + rng() % 26;
    const std::size_t bidders = 2 + rng() % 3;
    GeneratedAuction a = generate_auction(cfg, bidders, rng());
    PriceProblem pp = PriceProblem::with_reserves(aggregate(a.bidders), a.target);
    out.push_back({std::move(a), std::move(pp)});
  }
  return out;
}

Outcome criterion1() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  auto bidders = alice_and_bob();
  PriceProblem pp = PriceProblem::with_reserves(aggregate(bidders), {1, 1});
  const Price expected = integer_price({4, 4});
  if (min_up(pp).price != expected) o.fail("MinUp price differs");
  if (long_step_min_up(pp, StepRule::binary).price != expected) o.fail("long step (binary) price differs");
  if (long_step_min_up(pp, StepRule::demand_change).price != expected) o.fail("long step (demand change) price differs");
  Solution s = allocate(bidders, {1, 1}, expected);
  const auto& ta = s.bundles[0].items;
  const auto& tb = s.bundles[1].items;
  bool alice_ok = ta == std::vector<std::int64_t>{1, 0} || ta == std::vector<std::int64_t>{0, 1};
  if (!alice_ok || ta[0] + tb[0] != 1 || ta[1] + tb[1] != 1) o.fail("split " + s.bundles[0].str() + " / " + s.bundles[1].str());
  const double secs = seconds_since(t0);
  if (secs >= 1.0) o.fail("took " + std::to_string(secs) + " s");
  if (o.pass) o.detail = "price (4,4) for all methods, alice " + s.bundles[0].str() + ", bob " + s.bundles[1].str();
  return o;
}

bool is_subsequence(const std::vector<Price>& sub, const std::vector<Price>& seq) {
  std::size_t k = 0;
  for (const auto& p : seq) {
    if (k < sub.size() && sub[k] == p) ++k;
  }
  return k == sub.size();
}

std::vector<Price> visited(const PriceResult& r) {
  std::vector<Price> out;
  for (const auto& s : r.trace.steps) out.push_back(s.price);
  out.push_back(r.price);
  return out;
}

Outcome criterion2(const std::vector<Instance>& instances) {
  Outcome o;
  std::size_t steps = 0;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const PriceProblem& pp = instances[k].pp;
    PriceResult unit = min_up(pp);
    PriceResult bin = long_step_min_up(pp, StepRule::binary);
    PriceResult dem = long_step_min_up(pp, StepRule::demand_change);
    const std::string tag = "instance " + std::to_string(k) + ": ";
    if (bin.price != unit.price || dem.price != unit.price) o.fail(tag + "final prices differ");
    if (!is_subsequence(visited(bin), visited(unit))) o.fail(tag + "binary trace leaves the unit-step trajectory");
    if (!is_subsequence(visited(dem), visited(unit))) o.fail(tag + "demand-change trace leaves the unit-step trajectory");
    if (bin.trace.iterations() != dem.trace.iterations()) o.fail(tag + "step rules take different numbers of steps");
    for (const auto& s : bin.trace.steps) {
      ++steps;
      if (step_length_demand_change(pp, s.price, s.direction) != s.length) o.fail(tag + "step lengths differ");
    }
  }
  if (o.pass) o.detail = std::to_string(instances.size()) + " instances, " + std::to_string(steps) + " long steps compared";
  return o;
}

Outcome criterion3(const std::vector<Instance>& instances) {
  Outcome o;
  std::size_t worst_unit = 0, worst_long = 0;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const PriceProblem& pp = instances[k].pp;
    PriceResult unit = min_up(pp);
    if (unit.trace.iterations() != static_cast<std::size_t>(max_norm(unit.price))) {
      o.fail("instance " + std::to_string(k) + ": MinUp took " + std::to_string(unit.trace.iterations()) +
             " iterations, ||p*|| = " + std::to_string(max_norm(unit.price)));
    }
    const std::size_t bound = pp.goods * pp.bids.size();
    for (auto rule : {StepRule::binary, StepRule::demand_change}) {
      PriceResult r = long_step_min_up(pp, rule);
      if (r.trace.iterations() > bound) o.fail("instance " + std::to_string(k) + ": long step exceeded n|B|");
      worst_long = std::max(worst_long, r.trace.iterations());
    }
    worst_unit = std::max(worst_unit, unit.trace.iterations());
  }
  if (o.pass) {
    o.detail = "MinUp iterations = ||p*||_inf on all instances (max " + std::to_string(worst_unit) +
               "), long step at most " + std::to_string(worst_long) + " iterations";
  }
  return o;
}

SetFunction random_submodular(std::mt19937_64& rng, std::size_t n) {
  const std::size_t universe = 3 + rng() % 12;
  std::vector<std::int64_t> w(universe);
  for (auto& x : w) x = static_cast<std::int64_t>(rng() % 5);
  std::vector<std::uint64_t> cover(n);
  for (auto& c : cover) c = rng() & ((std::uint64_t{1} << universe) - 1);
  std::vector<std::int64_t> m(n);
  for (auto& x : m) x = static_cast<std::int64_t>(rng() % 11) - 7;
  return {n, [=](GoodSet s) {
            std::uint64_t covered = 0;
            std::int64_t v = 0;
            for (auto i : s.elements()) {
              covered |= cover[i];
              v += m[i];
            }
            for (std::size_t u = 0; u < universe; ++u) {
              if ((covered >> u) & 1u) v += w[u];
            }
            return v;
          }};
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(4);
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = 1 + rng() % 12;
    SetFunction f = random_submodular(rng, n);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    GoodSet meet = GoodSet::range(0, n);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      std::int64_t v = f.eval(GoodSet::from_bits(bits));
      if (v < best) {
        best = v;
        meet = GoodSet::from_bits(bits);
      } else if (v == best) {
        meet = meet & GoodSet::from_bits(bits);
      }
    }
    for (auto method : {SfmMethod::automatic, SfmMethod::wolfe}) {
      SfmOptions opts;
      opts.method = method;
      if (minimise(f, opts).value != best) o.fail("function " + std::to_string(k) + ": minimum differs");
      if (minimal_minimiser(f, opts) != meet) o.fail("function " + std::to_string(k) + ": minimal minimiser differs");
    }
  }
  if (o.pass) o.detail = "200 functions, enumeration and Wolfe agree";
  return o;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(5);
  std::size_t iterations = 0;
  for (int k = 0; k < 100; ++k) {
    GenConfig cfg;
    std::size_t bidders;
    if (k < 50) {
      cfg.goods = 2;
      cfg.rounds = 10 + rng() % 91;
      bidders = 5;
    } else {
      cfg.goods = 2 + rng() % 4;
      cfg.rounds = 5 + rng() % 26;
      bidders = 2 + rng() % 3;
    }
    GeneratedAuction a = generate_auction(cfg, bidders, rng());
    const std::string tag = "instance " + std::to_string(k) + ": ";
    Solution s;
    try {
      s = allocate(a.bidders, a.target, a.price);
    } catch (const std::exception& e) {
      o.fail(tag + e.what());
      continue;
    }
    std::vector<std::int64_t> total(cfg.goods, 0);
    for (std::size_t j = 0; j < bidders; ++j) {
      for (std::size_t i = 0; i < cfg.goods; ++i) total[i] += s.bundles[j].items[i];
      if (!is_demanded(a.bidders[j], s.bundles[j], a.price)) o.fail(tag + "bundle not demanded by " + a.bidders[j].owner);
    }
    if (total != a.target) o.fail(tag + "bundles do not sum to the target");
    const auto& e = s.stats.edge_counts;
    for (std::size_t i = 1; i < e.size(); ++i) {
      if (e[i] >= e[i - 1]) o.fail(tag + "edge count did not decrease");
    }
    if (s.stats.iterations > s.stats.iteration_bound) o.fail(tag + "iteration bound exceeded");
    iterations += s.stats.iterations;
  }
  if (o.pass) o.detail = "100 instances, " + std::to_string(iterations) + " reduction steps";
  return o;
}

// At most 3 negative bids, n <= 3, coordinates in 0..10. Half the lists cover
// each negative bid with positive bids around it, which is often valid.
std::vector<Bid> random_small_list(std::mt19937_64& rng) {
  const std::size_t n = 1 + rng() % 3;
  const std::size_t positives = rng() % 6, negatives = 1 + rng() % 3;
  const bool covered = rng() % 2 == 0;
  auto coord = [&] { return static_cast<std::int64_t>(rng() % 11); };
  std::vector<Bid> out;
  for (std::size_t k = 0; k < positives; ++k) {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(coord());
    out.emplace_back(std::move(v), 1);
  }
  for (std::size_t k = 0; k < negatives; ++k) {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < n; ++i) v.emplace_back(coord());
    Bid neg(v, -1);
    out.push_back(neg);
    if (!covered) continue;
    // Positive bids below each coordinate and one above, as in Bob's list.
    for (std::size_t i = 0; i < n; ++i) {
      Bid below(v, 1);
      below.values[i] = std::max<std::int64_t>(0, v[i].num() - 1 - static_cast<std::int64_t>(rng() % 3));
      out.push_back(below);
    }
    Bid above(v, 1);
    const std::int64_t lift = 1 + static_cast<std::int64_t>(rng() % 3);
    for (auto& x : above.values) x = std::min<std::int64_t>(10, x.num() + lift);
    out.push_back(above);
  }
  return out;
}

Outcome criterion6() {
  Outcome o;
  auto bob = alice_and_bob()[1];
  if (check_validity(bob).verdict != Verdict::valid || !brute_force_valid(bob.bids)) o.fail("Bob's list");
  std::vector<Bid> lone{Bid({Rational(4), Rational(4)}, -1)};
  if (check_validity(lone).verdict != Verdict::invalid || brute_force_valid(lone)) o.fail("lone negative bid");
  std::mt19937_64 rng(6);
  int invalid = 0;
  for (int k = 0; k < 100; ++k) {
    std::vector<Bid> bids = random_small_list(rng);
    ValidityReport r = check_validity(bids);
    if ((r.verdict == Verdict::valid) != brute_force_valid(bids) || r.verdict == Verdict::undecided) {
      o.fail("random list " + std::to_string(k));
    }
    invalid += r.verdict == Verdict::invalid;
  }
  if (o.pass) o.detail = "Bob valid, lone negative invalid, 100 random lists agree (" + std::to_string(100 - invalid) + " valid, " + std::to_string(invalid) + " invalid)";
  return o;
}

Outcome criterion7(const std::vector<Instance>& instances) {
  Outcome o;
  std::size_t checked = 0;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const PriceProblem& pp = instances[k].pp;
    for (const auto& r : {min_up(pp), long_step_min_up(pp, StepRule::binary), long_step_min_up(pp, StepRule::demand_change)}) {
      ++checked;
      if (!r.price.is_integral()) o.fail("instance " + std::to_string(k) + ": price " + r.price.str());
      if (r.price != instances[k].auction.price) o.fail("instance " + std::to_string(k) + ": not the generator's anchor");
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " prices, all integral";
  return o;
}

double mean_time(BenchAxis axis, std::size_t value, std::size_t goods, std::size_t rounds) {
  BenchConfig cfg;
  cfg.axis = axis;
  cfg.grid = {value};
  cfg.repetitions = 20;
  cfg.goods = goods;
  cfg.rounds = rounds;
  cfg.bidders = 5;
  cfg.seed = 8;
  return bench_suite(cfg).front().mean_seconds;
}

Outcome criterion8() {
  Outcome o;
  const double q100 = mean_time(BenchAxis::bids, 100, 2, 0);
  const double q400 = mean_time(BenchAxis::bids, 400, 2, 0);
  const double n10 = mean_time(BenchAxis::goods, 10, 0, 50);
  const double n20 = mean_time(BenchAxis::goods, 20, 0, 50);
  const double bids_ratio = q400 / q100, goods_ratio = n20 / n10;
  std::ostringstream os;
  os.precision(3);
  os << "q 100->400 ratio " << bids_ratio << ", n 10->20 ratio " << goods_ratio << " (20 seeds each)";
  o.detail = os.str();
  if (bids_ratio > 8.0 || goods_ratio > 8.0) o.pass = false;
  return o;
}

bool report(int id, const std::string& what, const std::function<Outcome()>& check) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = check();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  std::printf("%s criterion %d (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", id, what.c_str(), o.detail.c_str(),
              seconds_since(t0));
  std::fflush(stdout);
  return o.pass;
}

}  // namespace

int main() {
  const std::vector<Instance> instances = pricing_instances();
  bool ok = true;
  ok &= report(1, "worked example", criterion1);
  ok &= report(2, "trajectory equivalence", [&] { return criterion2(instances); });
  ok &= report(3, "iteration bounds", [&] { return criterion3(instances); });
  ok &= report(4, "SFM oracle equivalence", criterion4);
  ok &= report(5, "allocation soundness", criterion5);
  ok &= report(6, "validity agreement", criterion6);
  ok &= report(7, "integrality", [&] { return criterion7(instances); });
  ok &= report(8, "scaling shape", criterion8);
  return ok ? 0 : 1;
}
