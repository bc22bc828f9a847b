#include "pma/scaled.hpp"

#include <algorithm>

namespace pma {

ScaledLyapunov::ScaledLyapunov(std::span<const Bid> bids, std::span<const std::int64_t> target, std::int64_t scale)
    : goods_(target.size()), scale_(scale), target_(target.begin(), target.end()) {
  check_dimensions(bids, goods_);
  values_.reserve(bids.size() * goods_);
  weights_.reserve(bids.size());
  for (const auto& b : bids) {
    for (const auto& v : b.values) {
      Rational s = v * scale;
      if (!s.is_integer()) throw std::invalid_argument("bid value " + v.str() + " not representable at scale");
      values_.push_back(s.num());
    }
    weights_.push_back(b.weight);
  }
}

std::int64_t ScaledLyapunov::scale_for(std::span<const Bid> bids, std::int64_t extra_den) {
  std::int64_t scale = extra_den;
  for (const auto& b : bids) {
    for (const auto& v : b.values) scale = checked_lcm(scale, v.den());
  }
  return scale;
}

std::vector<std::int64_t> ScaledLyapunov::scaled(const Price& p) const {
  if (p.goods() != goods_) throw DimensionError("price dimension mismatch");
  std::vector<std::int64_t> out(goods_);
  for (std::size_t i = 0; i < goods_; ++i) {
    Rational s = p.values()[i] * scale_;
    if (!s.is_integer()) throw std::invalid_argument("price " + p.str() + " not representable at scale");
    out[i] = s.num();
  }
  return out;
}

Price ScaledLyapunov::unscaled(std::span<const std::int64_t> p) const {
  std::vector<Rational> v;
  v.reserve(p.size());
  for (auto x : p) v.emplace_back(x, scale_);
  return Price(std::move(v));
}

std::int64_t ScaledLyapunov::value_moved(std::span<const std::int64_t> p, GoodSet s, std::int64_t delta) const {
  const std::size_t n = goods_;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t pi = p[i] + (s.contains(i + 1) ? delta : 0);
    total += target_[i] * pi;
  }
  const std::int64_t* row = values_.data();
  for (std::size_t k = 0; k < weights_.size(); ++k, row += n) {
    std::int64_t best = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::int64_t pi = p[i] + (s.contains(i + 1) ? delta : 0);
      best = std::max(best, row[i] - pi);
    }
    total += weights_[k] * best;
  }
  return total;
}

}  // namespace pma
