#pragma once

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace unruh {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using ComplexMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using ComplexVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar>
using RealMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RealVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// u = pi/4, the measure of an infinite acceleration.
template <typename Scalar>
inline constexpr Scalar quarter_pi = std::numbers::pi_v<Scalar> / Scalar(4);

/// Bad arguments: unknown labels, out-of-range parameters, unnormalized states.
class ArgumentError : public std::invalid_argument {
 public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input violates a numerical precondition such as Hermiticity.
class PreconditionError : public ArgumentError {
 public:
  explicit PreconditionError(const std::string& what) : ArgumentError(what) {}
};

/// Result would exceed the supported matrix dimension.
class SizeError : public ArgumentError {
 public:
  explicit SizeError(const std::string& what) : ArgumentError(what) {}
};

/// Iteration failed to converge, or a radicand went negative beyond rounding.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int kMaxMatrixDim = 32;

}  // namespace unruh
