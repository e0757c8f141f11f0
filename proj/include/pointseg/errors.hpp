#pragma once

#include <stdexcept>
#include <string>

namespace pointseg {

enum class ErrorKind {
  EmptyPatternSet,
  EmptyPattern,
  DuplicatePattern,
  CacheTooLarge,
  Overflow,
  EmptyCorpus,
  BadCorpusLine,
  BadMagic,
  VersionMismatch,
  Truncation,
  InvariantViolation,
  TextMismatch,
  Encoding,
  Io,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace pointseg
