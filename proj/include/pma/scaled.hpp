#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pma/core.hpp"

namespace pma {

// g_t(p) = f_B(p) + t.p evaluated on int64 numerators over one common
// denominator. Used in the inner loops of price finding and SFM, where the
// same bids are evaluated at many nearby prices.
class ScaledLyapunov {
 public:
  // `scale` must be a multiple of every bid value denominator.
  ScaledLyapunov(std::span<const Bid> bids, std::span<const std::int64_t> target, std::int64_t scale);

  // Smallest scale that represents the bids and the given extra denominator.
  static std::int64_t scale_for(std::span<const Bid> bids, std::int64_t extra_den = 1);

  std::int64_t scale() const { return scale_; }
  std::size_t goods() const { return goods_; }
  std::size_t bid_count() const { return weights_.size(); }

  // Scaled numerators of p. Throws std::invalid_argument if a denominator
  // does not divide the scale.
  std::vector<std::int64_t> scaled(const Price& p) const;
  Price unscaled(std::span<const std::int64_t> p) const;

  // scale * g(p).
  std::int64_t value(std::span<const std::int64_t> p) const { return value_moved(p, GoodSet{}, 0); }
  // scale * g(p + (delta / scale) e^S); S holds real goods 1..n.
  std::int64_t value_moved(std::span<const std::int64_t> p, GoodSet s, std::int64_t delta) const;

  // Scaled bid value of good g (1..n) of bid k.
  std::int64_t bid_value(std::size_t k, Good g) const { return values_[k * goods_ + (g - 1)]; }
  int weight(std::size_t k) const { return weights_[k]; }
  std::int64_t target(Good g) const { return target_[g - 1]; }

 private:
  std::size_t goods_;
  std::int64_t scale_;
  std::vector<std::int64_t> values_;
  std::vector<int> weights_;
  std::vector<std::int64_t> target_;
};

}  // namespace pma
