#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qwalknet {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using Coin = Eigen::Matrix2cd;

inline constexpr const char* kVersion = "0.1.0";

/// Raised for inputs that violate an operation's preconditions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a requested problem size exceeds an engine's memory guard.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Coin amplitudes (c0 |0> + c1 |1>).
struct CoinState {
  cplx c0{1.0, 0.0};
  cplx c1{0.0, 0.0};

  double norm() const { return std::sqrt(std::norm(c0) + std::norm(c1)); }

  /// (|0> + i|1>)/sqrt(2), the unbiased initial coin of the Hadamard walk.
  static CoinState symmetric() {
    const double s = 1.0 / std::sqrt(2.0);
    return {cplx(s, 0.0), cplx(0.0, s)};
  }
  static CoinState zero() { return {cplx(1.0, 0.0), cplx(0.0, 0.0)}; }
  static CoinState one() { return {cplx(0.0, 0.0), cplx(1.0, 0.0)}; }
};

/// Hermitian, unit-trace matrix together with labels for its basis vectors.
struct DensityMatrix {
  CMatrix entries;
  std::vector<std::string> basis_labels;

  Eigen::Index dim() const { return entries.rows(); }
};

}  // namespace qwalknet
