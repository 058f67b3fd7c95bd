#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crownlab {

// Base of every error raised by the library. The CLI maps DomainError
// subclasses to exit code 2 and everything else to exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input violates a structural precondition (shape, symmetry, finiteness).
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& msg) : Error(msg) {}
};

// Mathematical failures: leaving the Iwasawa domain, unresolved branches,
// degenerate fits. These are results, not bugs.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& msg) : Error(msg) {}
};

class NearSingularMinor : public DomainError {
 public:
  NearSingularMinor(std::size_t index, double magnitude);
  std::size_t index() const noexcept { return index_; }
  double magnitude() const noexcept { return magnitude_; }

 private:
  std::size_t index_;
  double magnitude_;
};

class DomainExit : public DomainError {
 public:
  DomainExit(double last_good_t, double attempted_t, double min_minor);
  double last_good_t() const noexcept { return last_good_t_; }
  double attempted_t() const noexcept { return attempted_t_; }

 private:
  double last_good_t_;
  double attempted_t_;
};

class BranchAmbiguity : public DomainError {
 public:
  BranchAmbiguity(double t, double arg_jump);
  double t() const noexcept { return t_; }

 private:
  double t_;
};

class FitError : public DomainError {
 public:
  explicit FitError(const std::string& msg) : DomainError(msg) {}
};

class OrderUndetermined : public DomainError {
 public:
  explicit OrderUndetermined(int cap);
};

}  // namespace crownlab
