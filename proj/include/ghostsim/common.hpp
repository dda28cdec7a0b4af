#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace ghostsim {

using Real = double;
using Complex = std::complex<Real>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using VectorXr = VectorX<Real>;
using VectorXc = VectorX<Complex>;
using MatrixXr = MatrixX<Real>;
using MatrixXc = MatrixX<Complex>;

inline constexpr Real kPi = std::numbers::pi_v<Real>;

/// Base class for every error raised by the library. The CLI maps these to
/// exit status 1; I/O failures use IoError and map to 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A quadrature grid does not resolve the oscillation of its integrand.
class NyquistViolation : public Error {
 public:
  using Error::Error;
};

/// A profile cannot be measured (peak on the boundary, no half-max crossing).
class MeasurementError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ghostsim
