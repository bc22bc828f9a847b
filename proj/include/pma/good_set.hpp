#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace pma {

// Index of a good. 0 is the notional reject good, 1..n are the real goods.
using Good = std::size_t;

// Small bitset over at most 64 elements. Used both for sets of goods in
// [n]_0 and for subsets of an SFM ground set.
class GoodSet {
 public:
  static constexpr std::size_t kCapacity = 64;

  constexpr GoodSet() = default;
  constexpr GoodSet(std::initializer_list<std::size_t> items) {
    for (auto i : items) insert(i);
  }
  static constexpr GoodSet from_bits(std::uint64_t bits) {
    GoodSet s;
    s.bits_ = bits;
    return s;
  }
  // {first, ..., last - 1}
  static constexpr GoodSet range(std::size_t first, std::size_t last) {
    GoodSet s;
    for (std::size_t i = first; i < last; ++i) s.insert(i);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool contains(std::size_t i) const { return (bits_ >> i) & 1u; }
  constexpr void insert(std::size_t i) { bits_ |= std::uint64_t{1} << i; }
  constexpr void erase(std::size_t i) { bits_ &= ~(std::uint64_t{1} << i); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool subset_of(GoodSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(GoodSet other) const { return (bits_ & other.bits_) != 0; }
  // Smallest element; undefined on the empty set.
  constexpr std::size_t min() const { return static_cast<std::size_t>(std::countr_zero(bits_)); }

  std::vector<std::size_t> elements() const {
    std::vector<std::size_t> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
      out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    }
    return out;
  }

  // "{0,1,2}"
  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (auto i : elements()) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
    return s + "}";
  }

  friend constexpr GoodSet operator|(GoodSet a, GoodSet b) { return from_bits(a.bits_ | b.bits_); }
  friend constexpr GoodSet operator&(GoodSet a, GoodSet b) { return from_bits(a.bits_ & b.bits_); }
  friend constexpr GoodSet operator-(GoodSet a, GoodSet b) { return from_bits(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(GoodSet a, GoodSet b) = default;
  friend constexpr auto operator<=>(GoodSet a, GoodSet b) = default;

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace pma
