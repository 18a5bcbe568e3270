#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace viewq {

/// Input outside the domain of a scoring function (negative distance, ratio > 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Geometry for which an angle or intersection is undefined.
class DegenerateGeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A threshold the caller has to supply because no published value exists.
class ConfigurationRequiredError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Aggregated input validation failure. Each entry carries its own locator.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems)
      : std::runtime_error(join(problems)), problems_(std::move(problems)) {}

  explicit ValidationError(std::string problem)
      : ValidationError(std::vector<std::string>{std::move(problem)}) {}

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const auto& item : items) {
      if (!out.empty()) out += '\n';
      out += item;
    }
    return out;
  }

  std::vector<std::string> problems_;
};

}  // namespace viewq
