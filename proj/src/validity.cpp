#include "pma/validity.hpp"

#include <numeric>

namespace pma {
namespace {

// Weight sums per pair {a, b} of [n]_0 of the bids marginal on both.
bool pairs_non_negative(std::span<const Bid> bids, const Price& p, std::vector<std::int64_t>& scratch) {
  const std::size_t v = p.goods() + 1;
  scratch.assign(v * v, 0);
  for (const auto& b : bids) {
    GoodSet d = demanded_goods(b, p);
    if (d.size() < 2) continue;
    auto members = d.elements();
    for (std::size_t x = 0; x < members.size(); ++x) {
      for (std::size_t y = x + 1; y < members.size(); ++y) scratch[members[x] * v + members[y]] += b.weight;
    }
  }
  for (auto s : scratch) {
    if (s < 0) return false;
  }
  return true;
}

// Calls visit(point) for every point of {lo, lo + 1, ..., hi}^n / den.
template <typename Visit>
bool for_each_grid_point(std::size_t n, std::int64_t lo, std::int64_t hi, std::int64_t den, Visit visit) {
  std::vector<std::int64_t> k(n, lo);
  while (true) {
    std::vector<Rational> values;
    values.reserve(n);
    for (auto x : k) values.emplace_back(x, den);
    if (!visit(Price(std::move(values)))) return false;
    std::size_t pos = 0;
    while (pos < n && k[pos] == hi) k[pos++] = lo;
    if (pos == n) return true;
    ++k[pos];
  }
}

}  // namespace

std::string RegionQuery::str() const {
  std::string s = kind == Kind::H ? "H_" + std::to_string(i) : "F_" + std::to_string(i) + std::to_string(j);
  s += "^(";
  for (std::size_t k = 0; k < anchor.size(); ++k) s += (k ? "," : "") + anchor[k].decimal();
  return s + ")";
}

bool contains(const RegionQuery& q, const Bid& bid) {
  const std::size_t n = q.anchor.size();
  if (bid.goods() != n) throw DimensionError("bid and region dimensions differ");
  const auto& x = bid.values;
  const auto& y = q.anchor;
  if (q.kind == RegionQuery::Kind::H) {
    if (x[q.i - 1] != y[q.i - 1]) return false;
    for (std::size_t k = 0; k < n; ++k) {
      if (x[k] < Rational{} || x[k] > y[k]) return false;
    }
    return true;
  }
  Rational beta = x[q.i - 1] - y[q.i - 1];
  if (beta != x[q.j - 1] - y[q.j - 1] || beta < Rational{}) return false;
  for (std::size_t k = 0; k < n; ++k) {
    if (x[k] - beta > y[k]) return false;
  }
  return true;
}

std::int64_t region_weight(const RegionQuery& q, std::span<const Bid> bids) {
  std::int64_t s = 0;
  for (const auto& b : bids) {
    if (contains(q, b)) s += b.weight;
  }
  return s;
}

std::vector<Rational> md(std::span<const Bid> u) {
  if (u.empty()) throw EmptySet("md of an empty set");
  std::vector<Rational> out = u.front().values;
  for (const auto& b : u) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = std::max(out[k], b.values[k]);
  }
  return out;
}

std::vector<Rational> mdF(Good i, std::span<const Bid> u) {
  if (u.empty()) throw EmptySet("mdF of an empty set");
  Rational low = u.front()[i];
  std::vector<Rational> out(u.front().goods());
  bool first = true;
  for (const auto& b : u) {
    low = std::min(low, b[i]);
    for (std::size_t k = 0; k < out.size(); ++k) {
      Rational d = b.values[k] - b[i];
      out[k] = first ? d : std::max(out[k], d);
    }
    first = false;
  }
  for (auto& v : out) v += low;
  return out;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::valid:
      return "valid";
    case Verdict::invalid:
      return "invalid";
    case Verdict::undecided:
      return "undecided";
  }
  return "?";
}

ValidityReport check_validity(std::span<const Bid> bids, const ValidityOptions& opts) {
  ValidityReport report;
  if (bids.empty()) return report;
  const std::size_t n = bids.front().goods();
  check_dimensions(bids, n);
  std::vector<Bid> negatives;
  for (const auto& b : bids) {
    if (b.weight < 0) negatives.push_back(b);
  }
  if (negatives.empty()) return report;

  const std::size_t max_size = std::min(n + 1, negatives.size());
  std::vector<Bid> u;
  for (std::size_t size = 1; size <= max_size; ++size) {
    std::vector<std::size_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (++report.subsets_checked > opts.max_subsets) {
        report.verdict = Verdict::undecided;
        return report;
      }
      u.clear();
      for (auto k : idx) u.push_back(negatives[k]);

      for (Good i = 1; i <= n; ++i) {
        bool agree = true;
        for (const auto& b : u) agree = agree && b[i] == u.front()[i];
        if (!agree) continue;
        RegionQuery q{RegionQuery::Kind::H, i, 0, md(u)};
        if (region_weight(q, bids) < 0) {
          report.verdict = Verdict::invalid;
          report.witness = q;
          return report;
        }
      }
      for (Good i = 1; i <= n; ++i) {
        for (Good j = i + 1; j <= n; ++j) {
          bool parallel = true;
          for (const auto& b : u) parallel = parallel && b[i] - b[j] == u.front()[i] - u.front()[j];
          if (!parallel) continue;
          RegionQuery q{RegionQuery::Kind::F, i, j, mdF(i, u)};
          if (region_weight(q, bids) < 0) {
            report.verdict = Verdict::invalid;
            report.witness = q;
            return report;
          }
        }
      }

      // next combination in lexicographic order
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == negatives.size() - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t k = pos; k < size; ++k) idx[k] = idx[k - 1] + 1;
    }
  }
  return report;
}

bool brute_force_valid(std::span<const Bid> bids) {
  if (bids.empty()) return true;
  const std::size_t n = bids.front().goods();
  check_dimensions(bids, n);
  if (n == 0 || n > 3) throw ScaleExceeded("brute-force validity supports 1 to 3 goods");
  std::int64_t m = 0;
  for (const auto& b : bids) {
    for (const auto& v : b.values) {
      if (!v.is_integer() || v < Rational{} || v > Rational{20}) {
        throw ScaleExceeded("brute-force validity needs integer values in [0, 20]");
      }
      m = std::max(m, v.num());
    }
  }
  // Marginal sets only change on hyperplanes p_i = c and p_i - p_j = c with
  // integer c. Every face of that arrangement of dimension below n contains a
  // point with denominator dividing lcm(1..n).
  std::int64_t den = 1;
  for (std::int64_t k = 2; k <= static_cast<std::int64_t>(n); ++k) den = std::lcm(den, k);

  // Same check as pairs_non_negative, on integers scaled by den.
  const std::size_t v = n + 1;
  std::vector<std::int64_t> values(bids.size() * v, 0);
  for (std::size_t k = 0; k < bids.size(); ++k) {
    for (Good g = 1; g <= n; ++g) values[k * v + g] = bids[k][g].num() * den;
  }
  std::vector<std::int64_t> p(v, -den), sums(v * v);
  const std::int64_t hi = (m + 1) * den;
  while (true) {
    std::fill(sums.begin(), sums.end(), 0);
    for (std::size_t k = 0; k < bids.size(); ++k) {
      std::int64_t best = 0;
      for (Good g = 1; g <= n; ++g) best = std::max(best, values[k * v + g] - p[g]);
      GoodSet d;
      for (Good g = 0; g <= n; ++g) {
        if (values[k * v + g] - (g ? p[g] : 0) == best) d.insert(g);
      }
      if (d.size() < 2) continue;
      for (Good a = 0; a <= n; ++a) {
        if (!d.contains(a)) continue;
        for (Good b = a + 1; b <= n; ++b) {
          if (d.contains(b)) sums[a * v + b] += bids[k].weight;
        }
      }
    }
    for (auto s : sums) {
      if (s < 0) return false;
    }
    std::size_t pos = 1;
    while (pos <= n && p[pos] == hi) p[pos++] = -den;
    if (pos > n) return true;
    ++p[pos];
  }
}

bool locally_valid(std::span<const Bid> bids, const Price& p) {
  const std::size_t n = p.goods();
  check_dimensions(bids, n);
  if (n > 5) throw ScaleExceeded("local validity check supports at most 5 goods");
  // Offsets k / (4n + 4) with |k| <= n stay inside the ball and hit every
  // face of the arrangement through p.
  const std::int64_t den = 4 * static_cast<std::int64_t>(n) + 4;
  std::vector<std::int64_t> scratch;
  return for_each_grid_point(n, -static_cast<std::int64_t>(n), static_cast<std::int64_t>(n), den,
                             [&](const Price& offset) {
                               Price q = p;
                               for (Good g = 1; g <= n; ++g) q.at(g) += offset[g];
                               return pairs_non_negative(bids, q, scratch);
                             });
}

}  // namespace pma
