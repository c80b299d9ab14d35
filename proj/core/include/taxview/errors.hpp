#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace taxview {

// Base of every error raised by the library. Validation problems are not
// errors; they are reported as findings (see validate.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input bytes (JSON syntax, CSV quoting). `offset` is a byte offset
// into the document.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class UnsupportedVersionError : public Error {
 public:
  explicit UnsupportedVersionError(long long version)
      : Error("unsupported schema_version " + std::to_string(version)),
        version_(version) {}
  long long version() const noexcept { return version_; }

 private:
  long long version_;
};

// Well-formed input that violates the interchange schema. `location` is a
// JSON pointer ("/components/3/kind") or "line N" for CSV input.
class SchemaError : public Error {
 public:
  SchemaError(std::string location, const std::string& what)
      : Error(location.empty() ? what : location + ": " + what),
        location_(std::move(location)) {}
  const std::string& location() const noexcept { return location_; }

 private:
  std::string location_;
};

// Cross-file reference problems detected while assembling a snapshot.
// `code` is one of "dangling-reference", "multiple-owners".
class ReferenceError : public Error {
 public:
  ReferenceError(std::string code, const std::string& what)
      : Error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// Broken preconditions that validated input cannot trigger.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace taxview
