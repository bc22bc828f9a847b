#include "pma/testgen.hpp"

#include <algorithm>
#include <numeric>

#include "pma/pricing.hpp"

namespace pma {
namespace {

using Dist = std::uniform_int_distribution<std::int64_t>;

std::int64_t uniform(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) { return Dist(lo, hi)(rng); }

// Uniform over subsets of [n]_0 with at least two elements for small n;
// beyond that, a uniform size followed by a uniform subset of that size.
GoodSet pick_subset(std::size_t n, std::mt19937_64& rng) {
  if (n <= 10) {
    const std::int64_t masks = std::int64_t{1} << (n + 1);
    while (true) {
      auto s = GoodSet::from_bits(static_cast<std::uint64_t>(uniform(rng, 0, masks - 1)));
      if (s.size() >= 2) return s;
    }
  }
  auto size = static_cast<std::size_t>(uniform(rng, 2, static_cast<std::int64_t>(n) + 1));
  std::vector<Good> all(n + 1);
  std::iota(all.begin(), all.end(), 0);
  std::shuffle(all.begin(), all.end(), rng);
  GoodSet s;
  for (std::size_t k = 0; k < size; ++k) s.insert(all[k]);
  return s;
}

// Bid marginal on exactly S at the anchor price p = half * 1: value p + c on
// S \ {0}, below p + c elsewhere (c = 0 when 0 is in S).
std::vector<Rational> marginal_values(std::size_t n, std::int64_t half, GoodSet s, std::int64_t c, std::int64_t floor,
                                      std::mt19937_64& rng) {
  std::vector<Rational> v(n);
  for (Good g = 1; g <= n; ++g) v[g - 1] = s.contains(g) ? half + c : uniform(rng, floor, half + c - 1);
  return v;
}

bool attempt(const GenConfig& cfg, std::mt19937_64& rng, GeneratedList& out) {
  const std::size_t n = cfg.goods;
  const std::int64_t M = cfg.max_value;
  const std::int64_t half = M / 2;
  const Price anchor = Price::uniform(n, half);
  // p_pi = p + sum_k (1/20) / (2k) e^{pi(k)}
  std::vector<Good> perm(n);
  std::iota(perm.begin(), perm.end(), 1);

  out.list.bids.clear();
  out.demand = Bundle(n);
  for (std::size_t round = 0; round < cfg.rounds; ++round) {
    GoodSet s = pick_subset(n, rng);
    bool heads = uniform(rng, 0, 1) == 1;
    if (heads) {
      std::int64_t c = s.contains(0) ? 0 : uniform(rng, 1, half);
      out.list.bids.emplace_back(marginal_values(n, half, s, c, 0, rng), 1);
      auto members = s.elements();
      out.demand.at(members[static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(members.size()) - 1))]) +=
          1;
      continue;
    }
    std::int64_t c = s.contains(0) ? 0 : uniform(rng, 1, half - 1);
    Bid negative(marginal_values(n, half, s, c, 2, rng), -1);
    auto i = static_cast<Good>(uniform(rng, 1, static_cast<std::int64_t>(n)));
    auto j = static_cast<Good>(uniform(rng, 1, static_cast<std::int64_t>(n) - 1));
    if (j >= i) ++j;
    Bid bi = negative, bj = negative, up = negative;
    bi.weight = bj.weight = up.weight = 1;
    bi.values[i - 1] -= uniform(rng, 1, negative[i].num() - 1);
    bj.values[j - 1] -= uniform(rng, 1, negative[j].num() - 1);
    std::int64_t room = M;
    for (const auto& v : negative.values) room = std::min(room, M - v.num());
    std::int64_t lambda = uniform(rng, 1, room);
    for (auto& v : up.values) v += lambda;

    std::shuffle(perm.begin(), perm.end(), rng);
    Price perturbed = anchor;
    for (std::size_t k = 0; k < n; ++k) perturbed.at(perm[k]) += Rational(1, 20) / Rational(2 * static_cast<std::int64_t>(k + 1));
    std::vector<Bid> four{negative, bi, bj, up};
    Bundle x = demanded_bundle(four, perturbed);
    x.rejects = 0;
    out.demand += x;
    for (auto& b : four) out.list.bids.push_back(std::move(b));
  }
  for (auto v : out.demand.items) {
    if (v < 0) return false;
  }
  PriceProblem pp = PriceProblem::with_reserves(out.list.bids, out.demand.items);
  return long_step_min_up(pp, StepRule::binary).price == anchor;
}

}  // namespace

GeneratedList generate_list(const GenConfig& cfg, std::mt19937_64& rng) {
  if (cfg.goods < 2 || cfg.goods + 1 > GoodSet::kCapacity) throw std::invalid_argument("generator needs 2 to 63 goods");
  if (cfg.max_value < 6 || cfg.max_value % 2 != 0) throw std::invalid_argument("M must be even and at least 6");
  if (cfg.rounds < 1) throw std::invalid_argument("q must be at least 1");
  GeneratedList out;
  while (out.attempts < cfg.max_retries) {
    ++out.attempts;
    if (attempt(cfg, rng, out)) {
      out.demand.rejects = out.list.total_weight() - out.demand.total_items();
      return out;
    }
  }
  throw RetryLimit("no acceptable list after " + std::to_string(cfg.max_retries) + " attempts");
}

GeneratedAuction generate_auction(const GenConfig& cfg, std::size_t bidders, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GeneratedAuction a;
  a.max_value = cfg.max_value;
  a.target.assign(cfg.goods, 0);
  for (std::size_t j = 0; j < bidders; ++j) {
    GeneratedList g = generate_list(cfg, rng);
    g.list.owner = "b" + std::to_string(j + 1);
    for (std::size_t i = 0; i < cfg.goods; ++i) a.target[i] += g.demand.items[i];
    a.bidders.push_back(std::move(g.list));
  }
  a.price = Price::uniform(cfg.goods, cfg.max_value / 2);
  return a;
}

}  // namespace pma
