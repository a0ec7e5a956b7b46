#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace expander {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IndexError : public Error {
public:
  using Error::Error;
};

class ArgumentError : public Error {
public:
  using Error::Error;
};

/// A vertex set of volume zero was used where a cut ratio is needed, or the
/// graph has no edges at all.
class DegenerateError : public Error {
public:
  using Error::Error;
};

/// An exact oracle was asked to enumerate a graph above its vertex cap.
class CapacityError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

/// The strong-bad-set construction produced a set violating one of the
/// defining clauses. `clause()` names the clause.
class ConstructionError : public Error {
public:
  ConstructionError(std::string clause, const std::string &what)
      : Error(what), clause_(std::move(clause)) {}
  const std::string &clause() const { return clause_; }

private:
  std::string clause_;
};

/// A peeling trace is structurally malformed (bad indices, wrong host).
class ValidationError : public Error {
public:
  ValidationError(std::size_t step, const std::string &what)
      : Error(what), step_(step) {}
  std::size_t step() const { return step_; }

private:
  std::size_t step_;
};

/// Rejection sampling ran out of attempts. Carries the genus histogram of
/// the connected draws seen so far.
class SamplingError : public Error {
public:
  SamplingError(const std::string &what, std::map<int, long long> histogram)
      : Error(what), histogram_(std::move(histogram)) {}
  const std::map<int, long long> &histogram() const { return histogram_; }

private:
  std::map<int, long long> histogram_;
};

/// An inequality that is a theorem failed on a concrete instance. Always an
/// implementation bug or a violated hypothesis upstream.
class TheoremViolation : public Error {
public:
  using Error::Error;
};

} // namespace expander
