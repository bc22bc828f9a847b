#include <chrono>
#include <cmath>
#include <ostream>

#include "pma/demand.hpp"
#include "pma/testgen.hpp"

namespace pma {

std::string to_string(BenchAxis a) {
  switch (a) {
    case BenchAxis::bids:
      return "bids";
    case BenchAxis::goods:
      return "goods";
    case BenchAxis::bidders:
      return "bidders";
  }
  return "?";
}

BenchAxis parse_bench_axis(const std::string& s) {
  if (s == "bids") return BenchAxis::bids;
  if (s == "goods") return BenchAxis::goods;
  if (s == "bidders") return BenchAxis::bidders;
  throw std::invalid_argument("unknown bench axis '" + s + "' (bids, goods or bidders)");
}

std::uint64_t bench_seed(std::uint64_t base, std::size_t value, std::size_t repetition) {
  // splitmix64 over the triple, so neighbouring grid points get unrelated seeds
  std::uint64_t z = base * 0x9E3779B97F4A7C15ULL + value * 0xBF58476D1CE4E5B9ULL + repetition * 0x94D049BB133111EBULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<BenchRow> bench_suite(const BenchConfig& cfg) {
  if (cfg.repetitions == 0) throw std::invalid_argument("repetitions must be positive");
  std::vector<BenchRow> rows;
  for (std::size_t value : cfg.grid) {
    GenConfig gen;
    gen.goods = cfg.goods;
    gen.rounds = cfg.rounds;
    gen.max_value = cfg.max_value;
    std::size_t bidders = cfg.bidders;
    switch (cfg.axis) {
      case BenchAxis::bids:
        gen.rounds = value;
        break;
      case BenchAxis::goods:
        gen.goods = value;
        break;
      case BenchAxis::bidders:
        bidders = value;
        break;
    }
    BenchRow row;
    row.axis = cfg.axis;
    row.value = value;
    std::vector<double> times;
    for (std::size_t r = 0; r < cfg.repetitions; ++r) {
      const std::uint64_t seed = bench_seed(cfg.seed, value, r);
      row.seeds.push_back(seed);
      GeneratedAuction a = generate_auction(gen, bidders, seed);
      auto start = std::chrono::steady_clock::now();
      Solution sol = allocate(a.bidders, a.target, a.price);
      auto stop = std::chrono::steady_clock::now();
      times.push_back(std::chrono::duration<double>(stop - start).count());
      if (cfg.verify) {
        for (std::size_t j = 0; j < a.bidders.size(); ++j) {
          if (!is_demanded(a.bidders[j], sol.bundles[j], a.price)) {
            throw std::logic_error("bench instance " + std::to_string(seed) + ": bundle not demanded by " +
                                   a.bidders[j].owner);
          }
        }
      }
    }
    double sum = 0;
    for (double t : times) sum += t;
    row.samples = times.size();
    row.mean_seconds = sum / static_cast<double>(times.size());
    double var = 0;
    for (double t : times) var += (t - row.mean_seconds) * (t - row.mean_seconds);
    row.stddev_seconds = times.size() > 1 ? std::sqrt(var / static_cast<double>(times.size() - 1)) : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_bench_csv(std::ostream& os, const std::vector<BenchRow>& rows) {
  os << "axis,value,mean_seconds,stddev_seconds,samples\n";
  for (const auto& r : rows) {
    os << to_string(r.axis) << "," << r.value << "," << r.mean_seconds << "," << r.stddev_seconds << "," << r.samples
       << "\n";
  }
}

}  // namespace pma
