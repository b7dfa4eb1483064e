#pragma once

#include <stdexcept>
#include <string>

namespace aspatp {

// Base of every error raised by the library, so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define ASPATP_DEFINE_ERROR(Name)            \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  };

ASPATP_DEFINE_ERROR(SingularToWorkingPrecision)
ASPATP_DEFINE_ERROR(NotPositiveDefinite)
ASPATP_DEFINE_ERROR(NoConvergence)
ASPATP_DEFINE_ERROR(DimensionMismatch)
ASPATP_DEFINE_ERROR(InvalidArgument)
ASPATP_DEFINE_ERROR(ConfluentRitzValues)
ASPATP_DEFINE_ERROR(NotApplicable)
ASPATP_DEFINE_ERROR(UnsupportedMaxval)
ASPATP_DEFINE_ERROR(MalformedFile)
ASPATP_DEFINE_ERROR(IoError)

#undef ASPATP_DEFINE_ERROR

}  // namespace aspatp
