#pragma once

#include <stdexcept>
#include <string>

namespace misinfo {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input data: bad TSV rows, unknown label tokens, misaligned ids.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Invalid configuration values or unknown identifiers.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Filesystem failures: missing files, unwritable directories.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace misinfo
