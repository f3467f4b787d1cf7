#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ldim {

/// Base class of every error raised by the library. The CLI maps all of
/// these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define LDIM_DEFINE_ERROR(Name)            \
  class Name : public Error {              \
   public:                                 \
    using Error::Error;                    \
  }

LDIM_DEFINE_ERROR(CycleError);
LDIM_DEFINE_ERROR(RangeError);
LDIM_DEFINE_ERROR(ParameterError);
LDIM_DEFINE_ERROR(EmptySummandError);
LDIM_DEFINE_ERROR(DuplicateElementError);
LDIM_DEFINE_ERROR(InvalidListError);
LDIM_DEFINE_ERROR(NotARealiserError);
LDIM_DEFINE_ERROR(DegreeError);
LDIM_DEFINE_ERROR(TrivialListError);
LDIM_DEFINE_ERROR(EmptyRealiserError);
LDIM_DEFINE_ERROR(GrammarError);
LDIM_DEFINE_ERROR(HeaderRangeError);
LDIM_DEFINE_ERROR(NotADistributionError);
LDIM_DEFINE_ERROR(NotTwoLevelError);

#undef LDIM_DEFINE_ERROR

/// Malformed text input. Carries the 1-based line number of the offending
/// line (0 when the error is not tied to a line, e.g. premature EOF).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ldim
