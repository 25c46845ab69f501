#pragma once

#include <stdexcept>
#include <string>

namespace hsfroute {

// Base for every error raised by the library. Callers that only care about
// "something is wrong with this configuration" catch this.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define HSFROUTE_ERROR(Name)                                                   \
  class Name : public Error {                                                  \
  public:                                                                      \
    using Error::Error;                                                        \
  }

HSFROUTE_ERROR(ConfigError);
HSFROUTE_ERROR(OutOfBounds);
HSFROUTE_ERROR(NoLegalMove);
HSFROUTE_ERROR(DegeneratePath);
HSFROUTE_ERROR(InfeasibleTarget);
HSFROUTE_ERROR(BoundaryClash);
HSFROUTE_ERROR(UnexpectedApproach);
HSFROUTE_ERROR(IllegalTurn);
HSFROUTE_ERROR(Unreachable);
HSFROUTE_ERROR(HopBudgetExceeded);
HSFROUTE_ERROR(HeterogeneousRuns);
HSFROUTE_ERROR(UsageError);
HSFROUTE_ERROR(IoError);

#undef HSFROUTE_ERROR

} // namespace hsfroute
