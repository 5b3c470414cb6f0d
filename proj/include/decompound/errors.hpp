#pragma once

#include <stdexcept>
#include <string>

namespace decompound {

//! Bad configuration or config-file syntax. CLI exit code 1.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

//! Config-file syntax error with a line number.
class ParseError : public ConfigError {
public:
  ParseError(int line, const std::string& what)
    : ConfigError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

//! Violated numeric precondition or invariant. CLI exit code 2.
class NumericError : public std::runtime_error {
public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

//! Requested transform/density is not defined for the law. CLI exit code 2.
class UnsupportedError : public NumericError {
public:
  explicit UnsupportedError(const std::string& what) : NumericError(what) {}
};

//! Filesystem failure. CLI exit code 3.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace decompound
