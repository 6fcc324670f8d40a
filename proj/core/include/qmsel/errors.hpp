#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qmsel {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Dimensions of vectors/matrices do not conform.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Normal matrix X'WX failed the Cholesky rank test.
class SingularDesign : public Error {
 public:
  using Error::Error;
};

/// Iterate left the bounded region ||X beta||_inf <= 10 * theta_cap
/// (typically separation in logistic regression).
class Divergence : public Error {
 public:
  Divergence(const std::string& what, Eigen::VectorXd last_iterate)
      : Error(what), last_iterate_(std::move(last_iterate)) {}
  const Eigen::VectorXd& last_iterate() const noexcept { return last_iterate_; }

 private:
  Eigen::VectorXd last_iterate_;
};

class NonSpdError : public Error {
 public:
  using Error::Error;
};

/// A generalized eigenvalue of (A, B) fell under the relative floor.
class DegenerateContrast : public Error {
 public:
  using Error::Error;
};

class NoSelectableModel : public Error {
 public:
  using Error::Error;
};

class InsufficientReplications : public Error {
 public:
  using Error::Error;
};

}  // namespace qmsel
