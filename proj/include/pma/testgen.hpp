#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "pma/allocation.hpp"
#include "pma/core.hpp"

namespace pma {

struct GenConfig {
  std::size_t goods = 2;
  std::int64_t max_value = 100;  // M, even; the anchor price is (M/2, ..., M/2)
  std::size_t rounds = 10;       // q
  std::size_t max_retries = 10000;
};

struct GeneratedList {
  BidList list;
  Bundle demand;  // demanded at the anchor price, which is its minimal clearing price
  std::size_t attempts = 0;
};

// One valid list with at least q bids marginal at the anchor price. Throws
// RetryLimit when no attempt yields the anchor as minimal clearing price.
GeneratedList generate_list(const GenConfig& cfg, std::mt19937_64& rng);

struct GeneratedAuction {
  std::vector<BidList> bidders;
  std::vector<std::int64_t> target;
  Price price;  // minimal clearing price of the target
  std::int64_t max_value = 0;
};

// Bidders named b1..bm, each from generate_list on a shared generator.
GeneratedAuction generate_auction(const GenConfig& cfg, std::size_t bidders, std::uint64_t seed);

enum class BenchAxis { bids, goods, bidders };
std::string to_string(BenchAxis a);
BenchAxis parse_bench_axis(const std::string& s);

struct BenchConfig {
  BenchAxis axis = BenchAxis::bids;
  std::vector<std::size_t> grid;
  std::size_t repetitions = 5;
  std::size_t goods = 2;
  std::size_t bidders = 5;
  std::size_t rounds = 50;
  std::int64_t max_value = 100;
  std::uint64_t seed = 1;
  bool verify = false;  // check every bundle with is_demanded (not timed)
};

struct BenchRow {
  BenchAxis axis = BenchAxis::bids;
  std::size_t value = 0;
  double mean_seconds = 0;
  double stddev_seconds = 0;
  std::size_t samples = 0;
  std::vector<std::uint64_t> seeds;
};

// Mean wall time of allocate at each grid point over fresh instances.
std::vector<BenchRow> bench_suite(const BenchConfig& cfg);
void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows);

// Seed of repetition r at grid value v.
std::uint64_t bench_seed(std::uint64_t base, std::size_t value, std::size_t repetition);

}  // namespace pma
