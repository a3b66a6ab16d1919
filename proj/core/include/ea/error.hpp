#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ea {

enum class ErrorKind {
  ElementNotInCarrier,
  NotEnumerable,
  DomainMismatch,
  NoCover,
  NoMeet,
  BPropertyMissing,
  ComparabilityMissing,
  Unstable,
  NotArchimedean,
  InvalidState,
  GridTooNarrow,
  SizeLimit,
  NotFaithful,
  ScaleMismatch,
  NotSpectral,
  ElementNotFound,
  InvalidInstance,
  ParseError,
  InternalConsistency,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace ea
