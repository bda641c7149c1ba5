#pragma once

#include <stdexcept>
#include <string>

namespace certify {

/// Degenerate or self-intersecting geometry input.
class InvalidGeometryError : public std::runtime_error {
 public:
  explicit InvalidGeometryError(const std::string& what) : std::runtime_error(what) {}
};

/// Weight-file or config-file content that fails validation.
class LoadError : public std::runtime_error {
 public:
  explicit LoadError(const std::string& what) : std::runtime_error(what) {}
};

/// Missing or inconsistent run configuration.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Conditioning / factorization failure in a linear solve.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace certify
