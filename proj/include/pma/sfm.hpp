#pragma once

#include <cstdint>
#include <functional>
#include <unordered_map>

#include "pma/good_set.hpp"

namespace pma {

// Integer-valued set function on the ground set {0, ..., n-1}.
struct SetFunction {
  std::size_t n = 0;
  std::function<std::int64_t(GoodSet)> eval;
};

enum class SfmMethod { automatic, brute_force, wolfe };

struct SfmOptions {
  SfmMethod method = SfmMethod::automatic;
  std::size_t brute_force_max = 16;  // automatic: enumerate up to this size
  std::size_t fallback_max = 24;     // Wolfe failure: enumerate up to this size
  std::size_t max_iterations = 20000;
};

struct SfmResult {
  GoodSet set;
  std::int64_t value = 0;
  std::size_t evaluations = 0;  // distinct sets evaluated
};

// Caches evaluations of a set function for the duration of one solve.
class MemoizedFunction {
 public:
  explicit MemoizedFunction(const SetFunction& f) : f_(f) {}
  std::int64_t operator()(GoodSet s);
  std::size_t evaluations() const { return evaluations_; }
  std::size_t ground_size() const { return f_.n; }

 private:
  const SetFunction& f_;
  std::unordered_map<std::uint64_t, std::int64_t> cache_;
  std::size_t evaluations_ = 0;
};

// A minimiser of a submodular f and its value. Throws ConvergenceFailure when
// Wolfe's method does not converge and the ground set is too large to enumerate.
SfmResult minimise(const SetFunction& f, const SfmOptions& opts = {});

// Inclusion-wise minimal minimiser (the intersection of all minimisers).
GoodSet minimal_minimiser(const SetFunction& f, const SfmOptions& opts = {});

// Exhaustive check of f(S+i) + f(S+j) >= f(S) + f(S+i+j). Only for small n.
bool is_submodular(const SetFunction& f);

}  // namespace pma
