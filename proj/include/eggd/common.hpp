#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace eggd {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Error hierarchy. Everything thrown by the library derives from Error.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A tuning parameter (rho, delta, rank, sigma, zeta...) is out of its domain.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// Arguments are inconsistent with each other (shape mismatch, foreign pixel...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Input data violates a data invariant (non-finite values, empty image...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class ConnectivityError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Seed for every pseudo-random draw in the library. A fixed seed gives
/// bitwise-reproducible output.
struct RandomSeed {
  std::uint64_t value = 0;

  /// Independent child seed, e.g. one per channel or per probe.
  [[nodiscard]] RandomSeed derive(std::uint64_t stream) const;

  friend bool operator==(RandomSeed, RandomSeed) = default;
};

}  // namespace eggd
