#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pma/allocation.hpp"
#include "pma/auction_io.hpp"
#include "pma/demand.hpp"
#include "pma/pricing.hpp"
#include "pma/testgen.hpp"
#include "pma/validity.hpp"

namespace {

using namespace pma;
using nlohmann::json;

constexpr int kDomainFailure = 1;
constexpr int kUsage = 2;

const char* kReserveName = "(reserve)";

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Common denominator of all bid values (1 or 10 for file input).
std::int64_t bid_scale(std::span<const BidList> bidders) {
  std::int64_t s = 1;
  for (const auto& l : bidders) {
    for (const auto& b : l.bids) {
      for (const auto& v : b.values) s = checked_lcm(s, v.den());
    }
  }
  return s;
}

BidList scaled_list(const BidList& l, std::int64_t s) {
  BidList out = l;
  for (auto& b : out.bids) {
    for (auto& v : b.values) v *= s;
  }
  return out;
}

json price_json(const Price& p) {
  json out = json::array();
  for (const auto& v : p.values()) {
    if (v.is_integer()) {
      out.push_back(v.num());
    } else {
      out.push_back(v.decimal());
    }
  }
  return out;
}

Price unscale(const Price& p, std::int64_t s) {
  std::vector<Rational> v;
  for (const auto& x : p.values()) v.push_back(x / s);
  return Price(std::move(v));
}

struct PricedAuction {
  std::int64_t scale = 1;
  std::vector<BidList> scaled;  // integer bids
  PriceResult result;           // in scaled units
};

PricedAuction solve_price(const AuctionFile& a, const std::string& method) {
  PricedAuction out;
  out.scale = bid_scale(a.bidders);
  for (const auto& l : a.bidders) out.scaled.push_back(scaled_list(l, out.scale));
  PriceProblem pp = PriceProblem::with_reserves(aggregate(out.scaled), a.target);
  if (method == "unit") {
    out.result = min_up(pp);
  } else if (method == "long-binary") {
    out.result = long_step_min_up(pp, StepRule::binary);
  } else {
    out.result = long_step_min_up(pp, StepRule::demand_change);
  }
  return out;
}

int cmd_validate(const std::string& path, std::size_t max_subsets) {
  AuctionFile a = read_auction_file(path);
  bool all_valid = true;
  ValidityOptions opts;
  opts.max_subsets = max_subsets;
  for (const auto& l : a.bidders) {
    ValidityReport r = check_validity(l, opts);
    std::cout << l.owner << ": " << to_string(r.verdict);
    if (r.witness) std::cout << " witness " << r.witness->str() << " weight " << region_weight(*r.witness, l.bids);
    std::cout << "\n";
    all_valid = all_valid && r.verdict == Verdict::valid;
  }
  return all_valid ? 0 : kDomainFailure;
}

int cmd_price(const std::string& path, const std::string& method, bool trace) {
  AuctionFile a = read_auction_file(path);
  PricedAuction pa = solve_price(a, method);
  if (trace) {
    std::size_t k = 0;
    for (const auto& s : pa.result.trace.steps) {
      json dir = json::array();
      for (auto g : s.direction.elements()) dir.push_back(g);
      json line = {{"step", k++},
                   {"price", price_json(unscale(s.price, pa.scale))},
                   {"direction", dir},
                   {"length", price_json(Price({Rational(s.length, pa.scale)}))[0]}};
      std::cout << line.dump() << "\n";
    }
  }
  json out = {{"price", price_json(unscale(pa.result.price, pa.scale))},
              {"method", method},
              {"iterations", pa.result.trace.iterations()}};
  std::cout << out.dump() << "\n";
  return 0;
}

int cmd_allocate(const std::string& path, const std::string& method, const std::string& priority_file,
                 bool deterministic) {
  AuctionFile a = read_auction_file(path);
  PricedAuction pa = solve_price(a, method);
  const std::size_t n = a.goods;

  // The auctioneer's reserve bids take up whatever the bidders do not buy.
  std::vector<BidList> bidders = pa.scaled;
  std::int64_t reserve = 1;
  for (auto t : a.target) reserve += t;
  bidders.emplace_back(kReserveName, std::vector<Bid>(static_cast<std::size_t>(reserve), Bid(std::vector<Rational>(n), 1)));

  AllocateOptions opts;
  if (!priority_file.empty()) {
    opts.priority = parse_priority(read_text(priority_file), a);
  } else if (a.priority) {
    opts.priority = a.priority;
  } else if (deterministic) {
    opts.priority = canonical_priority(n, bidders.size());
  }
  Solution sol = allocate(bidders, a.target, pa.result.price, opts);

  // Check the result before printing it.
  std::vector<std::int64_t> total(n, 0);
  for (const auto& b : sol.bundles) {
    for (std::size_t i = 0; i < n; ++i) total[i] += b.items[i];
  }
  if (total != a.target) throw std::logic_error("allocation does not sum to the target");
  for (std::size_t j = 0; j < bidders.size(); ++j) {
    if (!is_demanded(bidders[j], sol.bundles[j], pa.result.price)) {
      throw std::logic_error("bundle of " + bidders[j].owner + " is not demanded");
    }
  }

  json bundles = json::object();
  for (std::size_t j = 0; j < a.bidders.size(); ++j) {
    bundles[a.bidders[j].owner] = {{"items", sol.bundles[j].items}, {"rejects", sol.bundles[j].rejects}};
  }
  json stats = {{"price_iterations", pa.result.trace.iterations()},
                {"allocation_iterations", sol.stats.iterations},
                {"unambiguous_calls", sol.stats.unambiguous_calls},
                {"shift_calls", sol.stats.shift_calls},
                {"iteration_bound", sol.stats.iteration_bound},
                {"edge_counts", sol.stats.edge_counts}};
  json out = {{"price", price_json(unscale(pa.result.price, pa.scale))},
              {"bundles", bundles},
              {"unsold", sol.bundles.back().items},
              {"stats", stats}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

std::int64_t default_max_value() {
  if (const char* env = std::getenv("PMA_DEFAULT_M")) {
    try {
      return std::stoll(env);
    } catch (const std::exception&) {
      throw ParseError("PMA_DEFAULT_M", "not an integer");
    }
  }
  return 100;
}

int cmd_generate(std::size_t n, std::size_t m, std::size_t q, std::optional<std::int64_t> max_value,
                 std::uint64_t seed) {
  GenConfig cfg;
  cfg.goods = n;
  cfg.rounds = q;
  cfg.max_value = max_value.value_or(default_max_value());
  GeneratedAuction g = generate_auction(cfg, m, seed);
  AuctionFile a;
  a.goods = n;
  a.max_value = cfg.max_value;
  a.bidders = std::move(g.bidders);
  a.target = std::move(g.target);
  std::cout << write_auction(a);
  return 0;
}

std::vector<std::size_t> parse_grid(const std::string& text) {
  std::vector<std::size_t> out;
  auto number = [&](const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != s.size() || s.empty()) throw ParseError("--grid", "'" + s + "' is not a positive integer");
    return static_cast<std::size_t>(v);
  };
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ParseError("--grid", "expected start:stop:step");
    std::size_t lo = number(parts[0]), hi = number(parts[1]), step = number(parts[2]);
    if (step == 0) throw ParseError("--grid", "step must be positive");
    for (std::size_t v = lo; v <= hi; v += step) out.push_back(v);
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  }
  if (out.empty()) throw ParseError("--grid", "empty grid");
  return out;
}

int cmd_bench(BenchConfig cfg, const std::string& grid, const std::string& manifest) {
  cfg.grid = parse_grid(grid);
  auto rows = bench_suite(cfg);
  write_bench_csv(std::cout, rows);
  if (!manifest.empty()) {
    json seeds = json::array();
    for (const auto& r : rows) seeds.push_back({{"value", r.value}, {"seeds", r.seeds}});
    json doc = {{"axis", to_string(cfg.axis)},
                {"base_seed", cfg.seed},
                {"goods", cfg.goods},
                {"bidders", cfg.bidders},
                {"rounds", cfg.rounds},
                {"M", cfg.max_value},
                {"points", seeds}};
    std::ofstream out(manifest);
    if (!out) throw ParseError(manifest, "cannot write manifest");
    out << doc.dump(2) << "\n";
  }
  return 0;
}

int cmd_regions(const std::string& path, const std::string& step_text, const std::string& bidder,
                std::optional<std::int64_t> limit) {
  AuctionFile a = read_auction_file(path);
  if (a.goods != 2) throw DimensionError("regions needs exactly 2 goods, file has " + std::to_string(a.goods));
  Rational step;
  try {
    step = Rational::parse(step_text);
  } catch (const std::exception&) {
    throw ParseError("--grid-step", "'" + step_text + "' is not a number");
  }
  if (step <= Rational{}) throw ParseError("--grid-step", "must be positive");
  std::vector<Bid> bids;
  if (bidder.empty()) {
    bids = aggregate(a.bidders);
  } else {
    bids = a.bidders[a.bidder_index(bidder, "--bidder")].bids;
  }
  Rational hi = limit ? Rational(*limit) : (a.max_value ? Rational(*a.max_value) : max_bid_value(bids) + 1);
  std::cout << "p1,p2,bundle\n";
  for (Rational p1 = 0; p1 <= hi; p1 += step) {
    for (Rational p2 = 0; p2 <= hi; p2 += step) {
      Price p({p1, p2});
      std::cout << p1.decimal() << "," << p2.decimal() << ",";
      try {
        Bundle x = demanded_bundle(bids, p);
        std::cout << x.items[0] << " " << x.items[1] << "\n";
      } catch (const MarginalPrice&) {
        std::cout << "marginal\n";
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong-substitutes product-mix auction solver"};
  app.require_subcommand(1);

  std::string file;
  std::string method = "long-binary";
  const std::vector<std::string> methods{"unit", "long-binary", "long-demand"};

  auto* validate = app.add_subcommand("validate", "Check every bidder's list for validity");
  validate->add_option("file", file, "Auction file")->required();
  std::size_t max_subsets = ValidityOptions{}.max_subsets;
  validate->add_option("--max-subsets", max_subsets, "Subset budget before reporting undecided");

  bool trace = false;
  auto* price = app.add_subcommand("price", "Minimal market-clearing price");
  price->add_option("file", file, "Auction file")->required();
  price->add_option("--method", method, "unit, long-binary or long-demand")->check(CLI::IsMember(methods));
  price->add_flag("--trace", trace, "Print each descent step as a JSON line");

  std::string priority_file;
  bool deterministic = false;
  auto* alloc = app.add_subcommand("allocate", "Clearing price and a bundle per bidder");
  alloc->add_option("file", file, "Auction file")->required();
  alloc->add_option("--method", method, "Price method")->check(CLI::IsMember(methods));
  alloc->add_option("--priority-file", priority_file, "JSON list of [good, \"bidder\"] pairs");
  alloc->add_flag("--seedless-deterministic", deterministic, "Resolve ties with the goods-major priority list");

  std::size_t n = 2, m = 5, q = 10;
  std::optional<std::int64_t> max_value;
  std::uint64_t seed = 1;
  auto* gen = app.add_subcommand("generate", "Random valid auction with a known clearing price");
  gen->add_option("-n,--goods", n, "Goods")->check(CLI::Range(2, 63));
  gen->add_option("-m,--bidders", m, "Bidders")->check(CLI::PositiveNumber);
  gen->add_option("-q,--rounds", q, "Bid rounds per bidder")->check(CLI::PositiveNumber);
  gen->add_option("-M,--max-value", max_value, "Largest bid value (even; default $PMA_DEFAULT_M or 100)");
  gen->add_option("--seed", seed, "Random seed");

  BenchConfig bench_cfg;
  std::string axis = "bids", grid = "20:100:20", manifest;
  auto* bench = app.add_subcommand("bench", "Allocation runtime over generated instances (CSV)");
  bench->add_option("--axis", axis, "bids, goods or bidders")->check(CLI::IsMember({"bids", "goods", "bidders"}));
  bench->add_option("--grid", grid, "Comma list or start:stop:step");
  bench->add_option("--repetitions", bench_cfg.repetitions, "Instances per grid point")->check(CLI::PositiveNumber);
  bench->add_option("-n,--goods", bench_cfg.goods, "Goods");
  bench->add_option("-m,--bidders", bench_cfg.bidders, "Bidders");
  bench->add_option("-q,--rounds", bench_cfg.rounds, "Bid rounds per bidder");
  bench->add_option("-M,--max-value", max_value, "Largest bid value");
  bench->add_option("--seed", bench_cfg.seed, "Base seed");
  bench->add_flag("--verify", bench_cfg.verify, "Check every bundle with the demand oracle");
  bench->add_option("--seeds-out", manifest, "Write the per-point seeds as JSON");

  std::string step = "1/2", bidder;
  std::optional<std::int64_t> limit;
  auto* regions = app.add_subcommand("regions", "Demanded bundle on a price grid (2 goods)");
  regions->add_option("file", file, "Auction file")->required();
  regions->add_option("--grid-step", step, "Grid spacing, e.g. 1/2 or 0.5");
  regions->add_option("--bidder", bidder, "One bidder instead of the aggregate");
  regions->add_option("--max-price", limit, "Upper end of the grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*validate) return cmd_validate(file, max_subsets);
    if (*price) return cmd_price(file, method, trace);
    if (*alloc) return cmd_allocate(file, method, priority_file, deterministic);
    if (*gen) return cmd_generate(n, m, q, max_value, seed);
    if (*bench) {
      bench_cfg.axis = parse_bench_axis(axis);
      bench_cfg.max_value = max_value.value_or(default_max_value());
      return cmd_bench(bench_cfg, grid, manifest);
    }
    if (*regions) return cmd_regions(file, step, bidder, limit);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainFailure;
  }
  return kUsage;
}
