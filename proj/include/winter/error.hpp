#pragma once

#include <stdexcept>
#include <string>

namespace winter {

// Base of every error raised by the library. The CLI maps it to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define WINTER_DEFINE_ERROR(Name)                   \
  class Name : public Error {                       \
   public:                                          \
    explicit Name(const std::string& what)          \
        : Error(std::string(#Name) + ": " + what) {} \
  }

WINTER_DEFINE_ERROR(SeparatedInteraction);
WINTER_DEFINE_ERROR(DegenerateDenominator);
WINTER_DEFINE_ERROR(OriginSingularity);
WINTER_DEFINE_ERROR(PoleAtK);
WINTER_DEFINE_ERROR(NotSeparated);
WINTER_DEFINE_ERROR(BoundaryZero);
WINTER_DEFINE_ERROR(NonConvergence);
WINTER_DEFINE_ERROR(ClusteredZeros);
WINTER_DEFINE_ERROR(AmbiguousIndex);
WINTER_DEFINE_ERROR(ZeroCoupling);
WINTER_DEFINE_ERROR(NotIntermediate);
WINTER_DEFINE_ERROR(NotDeltaPrime);
WINTER_DEFINE_ERROR(Separated);

#undef WINTER_DEFINE_ERROR

}  // namespace winter
