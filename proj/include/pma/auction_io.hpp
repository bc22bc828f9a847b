#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pma/core.hpp"
#include "pma/graphs.hpp"

namespace pma {

// Auction file:
//   {"goods": n, "M": 100, "target": [t_1, ...],
//    "bidders": [{"name": "alice", "bids": [["6", "6", 1], ...]}, ...],
//    "priority": [[1, "bob"], ...]}
// Values are decimal strings with at most one fractional digit or plain
// integers; weights are non-zero integers. "M" and "priority" are optional.
struct AuctionFile {
  std::size_t goods = 0;
  std::optional<std::int64_t> max_value;
  std::vector<BidList> bidders;
  std::vector<std::int64_t> target;
  std::optional<PriorityList> priority;

  // Index of the named bidder; ParseError if unknown.
  std::size_t bidder_index(const std::string& name, const std::string& where) const;
};

// Throws ParseError naming the offending field, e.g. "bidders[1].bids[0][2]".
AuctionFile parse_auction(const std::string& text);
AuctionFile read_auction_file(const std::string& path);

// Pretty-printed JSON that parse_auction reads back into the same lists.
// Consecutive identical unit bids are merged into one weighted bid.
std::string write_auction(const AuctionFile& a);

// [[good, "bidder"], ...] resolved against the file's bidders.
PriorityList parse_priority(const std::string& text, const AuctionFile& a);

// "6", "6.1"
std::string format_value(const Rational& v);

}  // namespace pma
