#pragma once

#include <stdexcept>
#include <string>

namespace polya {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested at (or too close to) a pole or zero.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A forced evaluation method was used outside its validity region.
class MethodDomainError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// The requested accuracy would need more work than the configured ceiling.
class PrecisionInfeasibleError : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature hit its maximum bisection depth.
class MaxDepthExceeded : public Error {
 public:
  MaxDepthExceeded(const std::string& what, std::string best_re, std::string best_im,
                   std::string error_bound)
      : Error(what),
        best_re(std::move(best_re)),
        best_im(std::move(best_im)),
        error_bound(std::move(error_bound)) {}

  std::string best_re;
  std::string best_im;
  std::string error_bound;
};

/// Zero-catalog text could not be parsed.
class ParseError : public Error {
 public:
  ParseError(const std::string& source, int line, const std::string& token,
             const std::string& reason)
      : Error(source + ":" + std::to_string(line) + ": " + reason +
              (token.empty() ? std::string() : " ('" + token + "')")),
        line(line),
        token(token) {}

  int line;
  std::string token;
};

/// A singularity sits outside the contour it was attributed to, or too close to an edge.
class ContourError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A quantity that must be independent of a parameter was found to depend on it.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace polya
