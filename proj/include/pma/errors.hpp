#pragma once

#include <stdexcept>
#include <string>

namespace pma {

// Base class of every domain failure raised by the library. Precondition
// violations by the caller use std::invalid_argument; internal invariant
// failures use std::logic_error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define PMA_DEFINE_ERROR(Name)          \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  }

PMA_DEFINE_ERROR(MarginalPrice);
PMA_DEFINE_ERROR(InfeasibleBundle);
PMA_DEFINE_ERROR(InfeasibleTarget);
PMA_DEFINE_ERROR(ConvergenceFailure);
PMA_DEFINE_ERROR(NoMarginals);
PMA_DEFINE_ERROR(NotClearing);
PMA_DEFINE_ERROR(BadCluster);
PMA_DEFINE_ERROR(EmptySet);
PMA_DEFINE_ERROR(ScaleExceeded);
PMA_DEFINE_ERROR(RetryLimit);
PMA_DEFINE_ERROR(DimensionError);

#undef PMA_DEFINE_ERROR

// Malformed auction input. `where` names the offending line or JSON field.
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& what)
      : Error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace pma
