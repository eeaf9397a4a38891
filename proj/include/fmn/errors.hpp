#pragma once

#include <stdexcept>
#include <string>

namespace fmn {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file (bad schema, unparseable cell); message carries the locus.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally parseable input that violates a domain constraint
/// (rating out of range, wrong questionnaire length, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Bad argument to a computation (empty sample, zero variance, unknown node).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Reply from a language-model endpoint that does not match the task format.
class MalformedReplyError : public Error {
 public:
  using Error::Error;
};

}  // namespace fmn
