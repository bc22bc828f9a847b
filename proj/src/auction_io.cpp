#include "pma/auction_io.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

namespace pma {
namespace {

using nlohmann::json;

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + "." + key, "missing field");
  return *it;
}

std::int64_t integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where, "expected an integer, got " + v.dump());
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
    throw ParseError(where, "integer out of range");
  }
  return v.get<std::int64_t>();
}

Rational value(const json& v, const std::string& where) {
  if (v.is_number_integer()) {
    std::int64_t x = integer(v, where);
    if (x < 0) throw ParseError(where, "values must be non-negative");
    return x;
  }
  if (v.is_string()) {
    static const std::regex decimal(R"(\d{1,15}(\.\d)?)");
    const auto& s = v.get_ref<const std::string&>();
    if (!std::regex_match(s, decimal)) {
      throw ParseError(where, "'" + s + "' is not a non-negative decimal with at most one fractional digit");
    }
    return Rational::parse(s);
  }
  throw ParseError(where, "values must be decimal strings or integers, got " + v.dump());
}

const json& array(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where, "expected an array");
  return v;
}

PriorityList priority_from(const json& v, const AuctionFile& a, const std::string& where) {
  PriorityList out;
  std::set<std::pair<Good, std::size_t>> seen;
  for (std::size_t k = 0; k < array(v, where).size(); ++k) {
    const std::string at = where + "[" + std::to_string(k) + "]";
    const json& e = v[k];
    if (!e.is_array() || e.size() != 2 || !e[1].is_string()) throw ParseError(at, "expected [good, \"bidder\"]");
    std::int64_t g = integer(e[0], at + "[0]");
    if (g < 0 || g > static_cast<std::int64_t>(a.goods)) throw ParseError(at + "[0]", "good out of range");
    std::size_t j = a.bidder_index(e[1].get<std::string>(), at + "[1]");
    if (!seen.emplace(static_cast<Good>(g), j).second) throw ParseError(at, "duplicate priority entry");
    out.emplace_back(static_cast<Good>(g), j);
  }
  return out;
}

}  // namespace

std::size_t AuctionFile::bidder_index(const std::string& name, const std::string& where) const {
  for (std::size_t j = 0; j < bidders.size(); ++j) {
    if (bidders[j].owner == name) return j;
  }
  throw ParseError(where, "unknown bidder '" + name + "'");
}

AuctionFile parse_auction(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "invalid JSON");
  }
  AuctionFile a;
  std::int64_t n = integer(field(doc, "goods", "$"), "$.goods");
  if (n < 1 || n + 1 > static_cast<std::int64_t>(GoodSet::kCapacity)) throw ParseError("$.goods", "must be in 1..63");
  a.goods = static_cast<std::size_t>(n);
  if (doc.contains("M")) {
    std::int64_t m = integer(doc["M"], "$.M");
    if (m < 0) throw ParseError("$.M", "must be non-negative");
    a.max_value = m;
  }

  const json& target = array(field(doc, "target", "$"), "$.target");
  if (target.size() != a.goods) throw ParseError("$.target", "expected " + std::to_string(a.goods) + " entries");
  for (std::size_t i = 0; i < target.size(); ++i) {
    std::int64_t t = integer(target[i], "$.target[" + std::to_string(i) + "]");
    if (t < 0) throw ParseError("$.target[" + std::to_string(i) + "]", "must be non-negative");
    a.target.push_back(t);
  }

  const json& bidders = array(field(doc, "bidders", "$"), "$.bidders");
  std::set<std::string> names;
  for (std::size_t j = 0; j < bidders.size(); ++j) {
    const std::string where = "$.bidders[" + std::to_string(j) + "]";
    const json& name = field(bidders[j], "name", where);
    if (!name.is_string() || name.get<std::string>().empty()) throw ParseError(where + ".name", "expected a name");
    if (!names.insert(name.get<std::string>()).second) {
      throw ParseError(where + ".name", "duplicate bidder '" + name.get<std::string>() + "'");
    }
    const json& bids = array(field(bidders[j], "bids", where), where + ".bids");
    std::vector<std::pair<std::vector<Rational>, std::int64_t>> weighted;
    for (std::size_t k = 0; k < bids.size(); ++k) {
      const std::string at = where + ".bids[" + std::to_string(k) + "]";
      const json& b = array(bids[k], at);
      if (b.size() != a.goods + 1) {
        throw ParseError(at, "expected " + std::to_string(a.goods) + " values and a weight");
      }
      std::vector<Rational> v;
      for (std::size_t i = 0; i < a.goods; ++i) {
        v.push_back(value(b[i], at + "[" + std::to_string(i) + "]"));
        if (a.max_value && v.back() > Rational(*a.max_value)) {
          throw ParseError(at + "[" + std::to_string(i) + "]", "value exceeds M");
        }
      }
      const std::string wat = at + "[" + std::to_string(a.goods) + "]";
      std::int64_t w = integer(b[a.goods], wat);
      if (w == 0) throw ParseError(wat, "weight must be a non-zero integer");
      weighted.emplace_back(std::move(v), w);
    }
    a.bidders.push_back(BidList::from_weighted(name.get<std::string>(), weighted));
  }
  if (doc.contains("priority")) a.priority = priority_from(doc["priority"], a, "$.priority");
  return a;
}

AuctionFile read_auction_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, "cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_auction(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ":" + e.where(), std::string(e.what()).substr(e.where().size() + 2));
  }
}

std::string format_value(const Rational& v) {
  if (v.is_integer()) return std::to_string(v.num());
  return v.decimal();
}

std::string write_auction(const AuctionFile& a) {
  json doc = json::object();
  doc["goods"] = a.goods;
  if (a.max_value) doc["M"] = *a.max_value;
  doc["target"] = a.target;
  json bidders = json::array();
  for (const auto& list : a.bidders) {
    json bids = json::array();
    for (std::size_t k = 0; k < list.bids.size();) {
      std::size_t end = k;
      while (end < list.bids.size() && list.bids[end] == list.bids[k]) ++end;
      json row = json::array();
      for (const auto& v : list.bids[k].values) row.push_back(format_value(v));
      row.push_back(static_cast<std::int64_t>(end - k) * list.bids[k].weight);
      bids.push_back(std::move(row));
      k = end;
    }
    bidders.push_back({{"name", list.owner}, {"bids", std::move(bids)}});
  }
  doc["bidders"] = std::move(bidders);
  if (a.priority) {
    json pr = json::array();
    for (const auto& [g, j] : *a.priority) pr.push_back({g, a.bidders.at(j).owner});
    doc["priority"] = std::move(pr);
  }
  return doc.dump(2) + "\n";
}

PriorityList parse_priority(const std::string& text, const AuctionFile& a) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "invalid JSON");
  }
  if (doc.is_object()) return priority_from(field(doc, "priority", "$"), a, "$.priority");
  return priority_from(doc, a, "$");
}

}  // namespace pma
