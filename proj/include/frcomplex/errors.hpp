#ifndef FRCOMPLEX_ERRORS_HPP
#define FRCOMPLEX_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frcomplex {

/// A resource or data file could not be opened or read.
class LoadError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A line of an input file is malformed. Carries the 1-based location.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, std::size_t line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what), path_(path), line_(line) {}

  const std::string& path() const noexcept { return path_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string path_;
  std::size_t line_;
};

/// Inputs violate a documented precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A rule set or model description is incomplete or inconsistent.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace frcomplex

#endif  // FRCOMPLEX_ERRORS_HPP
