#pragma once

#include <stdexcept>
#include <string>

namespace twmo {

/// Base of every error the library throws. The category decides the CLI exit code.
class Error : public std::runtime_error {
 public:
  enum class Category { Usage = 1, Domain = 2, Resource = 3 };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const noexcept { return category_; }
  int exit_code() const noexcept { return static_cast<int>(category_); }

 private:
  Category category_;
};

/// Mathematically invalid input: ramified twist, bad reduction prime, pole, wrong root number.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(Category::Domain, what) {}
};

/// Quadrature or series did not reach the requested tolerance.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(Category::Domain, what) {}
};

/// A table, sieve or integer type is too small for the request.
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error(Category::Resource, what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(Category::Usage, what) {}
};

}  // namespace twmo
