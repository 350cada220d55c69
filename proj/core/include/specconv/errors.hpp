#pragma once

#include <stdexcept>
#include <string>

namespace specconv {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SPECCONV_DEFINE_ERROR(Name) \
  class Name : public Error {       \
   public:                          \
    using Error::Error;             \
  }

SPECCONV_DEFINE_ERROR(SingularMatrix);
SPECCONV_DEFINE_ERROR(IndexOutOfRange);
SPECCONV_DEFINE_ERROR(DimensionMismatch);
SPECCONV_DEFINE_ERROR(DimensionUnsupported);
SPECCONV_DEFINE_ERROR(DimensionTooLarge);
SPECCONV_DEFINE_ERROR(EmptySet);
SPECCONV_DEFINE_ERROR(DuplicateElement);
SPECCONV_DEFINE_ERROR(TruncationTooLarge);
SPECCONV_DEFINE_ERROR(SizeMismatch);
SPECCONV_DEFINE_ERROR(CongruentDigits);
SPECCONV_DEFINE_ERROR(TripleInvalid);
SPECCONV_DEFINE_ERROR(InvalidLevel);
SPECCONV_DEFINE_ERROR(MilestoneGap);
SPECCONV_DEFINE_ERROR(NonUniformWeights);
SPECCONV_DEFINE_ERROR(ThetaOutOfRange);
SPECCONV_DEFINE_ERROR(EpsilonOutOfRange);
SPECCONV_DEFINE_ERROR(BoundViolation);
SPECCONV_DEFINE_ERROR(InvalidArgument);

#undef SPECCONV_DEFINE_ERROR

}  // namespace specconv
