#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace sparsecfar {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Malformed input: wrong shapes, out-of-domain parameters, unparsable files.
/// The CLI maps this to exit status 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numeric failure. The CLI maps this to exit status 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An iterative solver produced a non-finite iterate.
class DivergenceError : public NumericError {
 public:
  DivergenceError(const std::string& what, int iteration)
      : NumericError(what), iteration_(iteration) {}

  /// 1-based iteration at which the non-finite value appeared.
  int iteration() const noexcept { return iteration_; }

 private:
  int iteration_;
};

}  // namespace sparsecfar
