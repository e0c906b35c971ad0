#pragma once

#include <stdexcept>
#include <string>

namespace fermient {

/// Requested problem size exceeds a hard cap (basis, model, or scenario).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// Thermal quantities refuse to average over an unresolved degenerate eigenspace.
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

/// Config text could not be parsed; carries the offending line and field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, std::string field, const std::string& what)
      : std::runtime_error(what), line_(line), field_(std::move(field)) {}
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

}  // namespace fermient
