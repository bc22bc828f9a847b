#include "pma/sfm.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "pma/errors.hpp"

namespace pma {

std::int64_t MemoizedFunction::operator()(GoodSet s) {
  auto [it, inserted] = cache_.try_emplace(s.bits(), 0);
  if (inserted) {
    it->second = f_.eval(s);
    ++evaluations_;
  }
  return it->second;
}

namespace {

struct BruteResult {
  GoodSet first;         // first minimiser in enumeration order
  GoodSet intersection;  // of all minimisers
  std::int64_t value = 0;
};

BruteResult brute_force(MemoizedFunction& f, GoodSet ground) {
  BruteResult r;
  bool have = false;
  const std::uint64_t g = ground.bits();
  std::uint64_t sub = 0;
  do {
    GoodSet s = GoodSet::from_bits(sub);
    std::int64_t v = f(s);
    if (!have || v < r.value) {
      r.value = v;
      r.first = s;
      r.intersection = s;
      have = true;
    } else if (v == r.value) {
      r.intersection = r.intersection & s;
    }
    sub = (sub - g) & g;
  } while (sub != 0);
  return r;
}

struct Vertex {
  Eigen::VectorXd q;
  GoodSet best_prefix;
  std::int64_t best_value;
};

// Greedy vertex of the base polytope for the given order of positions. Also
// reports the best prefix set, which is exact since prefixes are evaluated
// through f itself.
Vertex greedy(MemoizedFunction& f, const std::vector<std::size_t>& elements, const std::vector<std::size_t>& order,
              std::int64_t f_empty) {
  Vertex v{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(elements.size())), GoodSet{}, f_empty};
  GoodSet s;
  std::int64_t prev = f_empty;
  for (auto pos : order) {
    s.insert(elements[pos]);
    std::int64_t val = f(s);
    v.q[static_cast<Eigen::Index>(pos)] = static_cast<double>(val - prev);
    prev = val;
    if (val < v.best_value) {
      v.best_value = val;
      v.best_prefix = s;
    }
  }
  return v;
}

// Minimiser of ||Q a|| subject to sum(a) = 1.
Eigen::VectorXd affine_minimiser(const Eigen::MatrixXd& q) {
  const auto m = q.cols();
  Eigen::MatrixXd a = q.transpose() * q + Eigen::MatrixXd::Ones(m, m);
  Eigen::VectorXd alpha = a.colPivHouseholderQr().solve(Eigen::VectorXd::Ones(m));
  return alpha / alpha.sum();
}

// Fujishige-Wolfe minimum-norm point. Returns false when the iteration cap is
// reached or the method stalls numerically.
bool wolfe(MemoizedFunction& f, GoodSet ground, const SfmOptions& opts, SfmResult& out) {
  const std::vector<std::size_t> elements = ground.elements();
  const std::size_t k = elements.size();
  const std::int64_t f_empty = f(GoodSet{});
  out.set = GoodSet{};
  out.value = f_empty;
  if (k == 0) return true;

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  Vertex first = greedy(f, elements, order, f_empty);
  if (first.best_value < out.value) {
    out.value = first.best_value;
    out.set = first.best_prefix;
  }

  std::vector<Eigen::VectorXd> points{first.q};
  std::vector<double> lambda{1.0};
  Eigen::VectorXd x = first.q;
  constexpr double kTol = 1e-10;

  for (std::size_t iter = 0; iter < opts.max_iterations; ++iter) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return x[static_cast<Eigen::Index>(a)] < x[static_cast<Eigen::Index>(b)];
    });
    Vertex v = greedy(f, elements, order, f_empty);
    if (v.best_value < out.value) {
      out.value = v.best_value;
      out.set = v.best_prefix;
    }
    // Every x in the base polytope gives the lower bound f(0) + sum min(0, x_i).
    double lower = static_cast<double>(f_empty);
    for (Eigen::Index i = 0; i < x.size(); ++i) lower += std::min(0.0, x[i]);
    if (static_cast<double>(out.value) - lower < 0.5) return true;

    double scale = std::max(1.0, x.squaredNorm());
    if (x.squaredNorm() - x.dot(v.q) <= kTol * scale) return false;  // stalled short of the gap bound
    for (const auto& p : points) {
      if ((p - v.q).norm() <= kTol * std::sqrt(scale)) return false;
    }
    points.push_back(v.q);
    lambda.push_back(0.0);

    while (true) {
      Eigen::MatrixXd q(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(points.size()));
      for (std::size_t c = 0; c < points.size(); ++c) q.col(static_cast<Eigen::Index>(c)) = points[c];
      Eigen::VectorXd alpha = affine_minimiser(q);
      if (!alpha.allFinite()) return false;
      if ((alpha.array() > kTol).all()) {
        x = q * alpha;
        lambda.assign(alpha.data(), alpha.data() + alpha.size());
        break;
      }
      double theta = 1.0;
      for (std::size_t c = 0; c < points.size(); ++c) {
        double a = alpha[static_cast<Eigen::Index>(c)];
        if (a <= kTol) {
          double denom = lambda[c] - a;
          if (denom > 0) theta = std::min(theta, lambda[c] / denom);
        }
      }
      std::vector<Eigen::VectorXd> kept_points;
      std::vector<double> kept_lambda;
      for (std::size_t c = 0; c < points.size(); ++c) {
        double l = theta * alpha[static_cast<Eigen::Index>(c)] + (1 - theta) * lambda[c];
        if (l > kTol) {
          kept_points.push_back(points[c]);
          kept_lambda.push_back(l);
        }
      }
      if (kept_points.empty()) return false;
      double total = std::accumulate(kept_lambda.begin(), kept_lambda.end(), 0.0);
      x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
      for (std::size_t c = 0; c < kept_points.size(); ++c) {
        kept_lambda[c] /= total;
        x += kept_lambda[c] * kept_points[c];
      }
      points = std::move(kept_points);
      lambda = std::move(kept_lambda);
    }
  }
  return false;
}

bool use_brute_force(std::size_t size, const SfmOptions& opts) {
  switch (opts.method) {
    case SfmMethod::brute_force:
      return true;
    case SfmMethod::wolfe:
      return false;
    case SfmMethod::automatic:
      break;
  }
  return size <= opts.brute_force_max;
}

SfmResult minimise_over(MemoizedFunction& f, GoodSet ground, const SfmOptions& opts) {
  SfmResult r;
  if (!use_brute_force(ground.size(), opts)) {
    if (wolfe(f, ground, opts, r)) {
      r.evaluations = f.evaluations();
      return r;
    }
    if (ground.size() > opts.fallback_max) {
      throw ConvergenceFailure("Fujishige-Wolfe did not converge on a ground set of size " +
                               std::to_string(ground.size()));
    }
  }
  if (ground.size() > 30) throw ConvergenceFailure("ground set too large for enumeration");
  BruteResult b = brute_force(f, ground);
  r.set = b.first;
  r.value = b.value;
  r.evaluations = f.evaluations();
  return r;
}

}  // namespace

SfmResult minimise(const SetFunction& f, const SfmOptions& opts) {
  if (f.n > GoodSet::kCapacity) throw std::invalid_argument("ground set too large");
  MemoizedFunction memo(f);
  return minimise_over(memo, GoodSet::range(0, f.n), opts);
}

GoodSet minimal_minimiser(const SetFunction& f, const SfmOptions& opts) {
  if (f.n > GoodSet::kCapacity) throw std::invalid_argument("ground set too large");
  MemoizedFunction memo(f);
  GoodSet ground = GoodSet::range(0, f.n);
  if (use_brute_force(f.n, opts)) return brute_force(memo, ground).intersection;

  // v belongs to every minimiser iff excluding v strictly raises the minimum.
  SfmResult base = minimise_over(memo, ground, opts);
  GoodSet minimal;
  for (auto v : base.set.elements()) {
    GoodSet without = ground;
    without.erase(v);
    if (minimise_over(memo, without, opts).value > base.value) minimal.insert(v);
  }
  return minimal;
}

bool is_submodular(const SetFunction& f) {
  if (f.n > 16) throw std::invalid_argument("submodularity check limited to 16 elements");
  const std::size_t count = std::size_t{1} << f.n;
  std::vector<std::int64_t> values(count);
  for (std::size_t s = 0; s < count; ++s) values[s] = f.eval(GoodSet::from_bits(s));
  for (std::size_t s = 0; s < count; ++s) {
    for (std::size_t i = 0; i < f.n; ++i) {
      if (s >> i & 1) continue;
      for (std::size_t j = i + 1; j < f.n; ++j) {
        if (s >> j & 1) continue;
        std::size_t si = s | (std::size_t{1} << i), sj = s | (std::size_t{1} << j);
        if (values[si] + values[sj] < values[s] + values[si | sj]) return false;
      }
    }
  }
  return true;
}

}  // namespace pma
