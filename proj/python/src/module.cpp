#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pma/allocation.hpp"
#include "pma/auction_io.hpp"
#include "pma/demand.hpp"
#include "pma/pricing.hpp"
#include "pma/testgen.hpp"
#include "pma/validity.hpp"

namespace py = pybind11;
using namespace pma;

namespace {

// int, decimal string or anything with numerator/denominator (Fraction).
Rational to_rational(const py::handle& h) {
  if (py::isinstance<py::bool_>(h)) throw py::type_error("booleans are not bid values");
  if (py::isinstance<py::int_>(h)) return Rational(h.cast<std::int64_t>());
  if (py::isinstance<py::str>(h)) return Rational::parse(h.cast<std::string>());
  if (py::hasattr(h, "numerator") && py::hasattr(h, "denominator") && !py::isinstance<py::float_>(h)) {
    return Rational(h.attr("numerator").cast<std::int64_t>(), h.attr("denominator").cast<std::int64_t>());
  }
  throw py::type_error("expected an int, a decimal string or a Fraction, got " + std::string(py::str(h.get_type())));
}

py::object to_python(const Rational& r) {
  if (r.is_integer()) return py::int_(r.num());
  return py::module_::import("fractions").attr("Fraction")(r.num(), r.den());
}

// [[v_1, ..., v_n, w], ...] with integer weights.
BidList to_list(const std::string& owner, const py::sequence& rows) {
  std::vector<std::pair<std::vector<Rational>, std::int64_t>> weighted;
  for (const auto& row : rows) {
    auto seq = row.cast<py::sequence>();
    if (seq.size() < 2) throw py::value_error("a bid needs at least one value and a weight");
    std::vector<Rational> v;
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) v.push_back(to_rational(seq[i]));
    weighted.emplace_back(std::move(v), seq[seq.size() - 1].cast<std::int64_t>());
  }
  return BidList::from_weighted(owner, weighted);
}

Price to_price(const py::sequence& values) {
  std::vector<Rational> v;
  for (const auto& x : values) v.push_back(to_rational(x));
  return Price(std::move(v));
}

py::list from_price(const Price& p) {
  py::list out;
  for (const auto& v : p.values()) out.append(to_python(v));
  return out;
}

std::vector<BidList> to_bidders(const py::dict& bidders) {
  std::vector<BidList> out;
  for (const auto& [name, rows] : bidders) out.push_back(to_list(name.cast<std::string>(), rows.cast<py::sequence>()));
  return out;
}

Bundle to_bundle(const std::vector<std::int64_t>& items) { return Bundle(items); }

StepRule rule_of(const std::string& method) {
  if (method == "long-binary") return StepRule::binary;
  if (method == "long-demand") return StepRule::demand_change;
  throw py::value_error("method must be 'unit', 'long-binary' or 'long-demand'");
}

py::dict price_impl(const py::sequence& bids, const std::vector<std::int64_t>& target, const std::string& method) {
  BidList l = to_list("", bids);
  PriceProblem pp = PriceProblem::with_reserves(l.bids, target);
  PriceResult r = method == "unit" ? min_up(pp) : long_step_min_up(pp, rule_of(method));
  py::list steps;
  for (const auto& s : r.trace.steps) {
    py::dict d;
    d["price"] = from_price(s.price);
    d["direction"] = s.direction.elements();
    d["length"] = s.length;
    steps.append(d);
  }
  py::dict out;
  out["price"] = from_price(r.price);
  out["trace"] = steps;
  return out;
}

py::dict allocate_impl(const py::dict& bidders, const std::vector<std::int64_t>& target,
                       const std::optional<py::sequence>& price, const std::optional<py::sequence>& priority) {
  std::vector<BidList> lists = to_bidders(bidders);
  Price p;
  if (price) {
    p = to_price(*price);
  } else {
    std::size_t n = target.size();
    PriceProblem pp = PriceProblem::with_reserves(aggregate(lists), target);
    p = long_step_min_up(pp, StepRule::binary).price;
    std::int64_t reserve = 1;
    for (auto t : target) reserve += t;
    lists.emplace_back("", std::vector<Bid>(static_cast<std::size_t>(reserve), Bid(std::vector<Rational>(n), 1)));
  }
  AllocateOptions opts;
  if (priority) {
    PriorityList pl;
    for (const auto& e : *priority) {
      auto pair = e.cast<py::sequence>();
      const auto good = pair[0].cast<std::size_t>();
      const auto name = pair[1].cast<std::string>();
      std::size_t j = 0;
      while (j < lists.size() && lists[j].owner != name) ++j;
      if (j == lists.size() || name.empty()) throw py::value_error("unknown bidder '" + name + "'");
      pl.emplace_back(good, j);
    }
    opts.priority = std::move(pl);
  }
  Solution s = allocate(lists, target, p, opts);
  py::dict bundles;
  for (std::size_t j = 0; j < s.bundles.size(); ++j) {
    if (lists[j].owner.empty()) continue;
    bundles[py::str(lists[j].owner)] = s.bundles[j].items;
  }
  py::dict out;
  out["price"] = from_price(p);
  out["bundles"] = bundles;
  out["iterations"] = s.stats.iterations;
  if (!price) out["unsold"] = s.bundles.back().items;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Strong-substitutes product-mix auction solver";

  py::register_exception<Error>(m, "AuctionError", PyExc_RuntimeError);

  m.def(
      "validate",
      [](const py::sequence& bids) {
        ValidityReport r = check_validity(to_list("", bids));
        py::dict out;
        out["verdict"] = to_string(r.verdict);
        out["witness"] = r.witness ? py::object(py::str(r.witness->str())) : py::object(py::none());
        return out;
      },
      py::arg("bids"), "Validity of one bid list: {'verdict': 'valid'|'invalid'|'undecided', 'witness': ...}.");

  m.def("clearing_price", &price_impl, py::arg("bids"), py::arg("target"), py::arg("method") = "long-binary",
        "Minimal market-clearing price of the target for an aggregate list with integer values.");

  m.def("allocate", &allocate_impl, py::arg("bidders"), py::arg("target"), py::arg("price") = py::none(),
        py::arg("priority") = py::none(),
        "Bundle per bidder. Without a price, the minimal clearing price is computed and unsold items reported.");

  m.def(
      "is_demanded",
      [](const py::sequence& bids, const std::vector<std::int64_t>& bundle, const py::sequence& price) {
        return is_demanded(to_list("", bids), to_bundle(bundle), to_price(price));
      },
      py::arg("bids"), py::arg("bundle"), py::arg("price"));

  m.def(
      "valuation",
      [](const py::sequence& bids, const std::vector<std::int64_t>& bundle) {
        return to_python(valuation(to_list("", bids), to_bundle(bundle)));
      },
      py::arg("bids"), py::arg("bundle"));

  m.def(
      "indirect_utility",
      [](const py::sequence& bids, const py::sequence& price) {
        return to_python(indirect_utility(to_list("", bids).bids, to_price(price)));
      },
      py::arg("bids"), py::arg("price"));

  m.def(
      "generate",
      [](std::size_t goods, std::size_t bidders, std::size_t rounds, std::int64_t max_value, std::uint64_t seed) {
        GenConfig cfg;
        cfg.goods = goods;
        cfg.rounds = rounds;
        cfg.max_value = max_value;
        GeneratedAuction g = generate_auction(cfg, bidders, seed);
        AuctionFile a;
        a.goods = goods;
        a.max_value = max_value;
        a.bidders = std::move(g.bidders);
        a.target = std::move(g.target);
        return write_auction(a);
      },
      py::arg("goods"), py::arg("bidders"), py::arg("rounds"), py::arg("max_value") = 100, py::arg("seed") = 1,
      "Random auction as the JSON text of an auction file.");
}
