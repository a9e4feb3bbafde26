#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace eigenpath {

using cplx = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Ground field of a problem instance. Real mode keeps every imaginary part at zero.
enum class Field { Real, Complex };

inline const char* to_string(Field f) { return f == Field::Real ? "real" : "complex"; }

enum class ErrorCode {
  DimensionMismatch,
  ZeroVector,
  NotInvertible,
  NoNullVector,
  Unsupported,
  IllPosed,
  NotOrthogonal,
  NotNormalized,
  Infinite,
  OutOfRange,
  PathLeavesW,
  StepNotDefined,
  Parse,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NoNullVector: return "NoNullVector";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::IllPosed: return "IllPosed";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::Infinite: return "Infinite";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::PathLeavesW: return "PathLeavesW";
    case ErrorCode::StepNotDefined: return "StepNotDefined";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<std::size_t> step = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), step_(step) {}

  ErrorCode code() const noexcept { return code_; }
  /// Index of the tracker or Newton step at which the failure happened, when known.
  std::optional<std::size_t> step() const noexcept { return step_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> step_;
};

/// Relative threshold below which sigma_min / sigma_max counts as numerically singular.
inline constexpr double kSingularityTol = 1e-12;
/// Absolute floor used when the largest singular value itself vanishes.
inline constexpr double kAbsoluteZero = 1e-300;

/// Hermitian product <x, y> = sum x_i conj(y_i), linear in the first slot.
inline cplx inner(const Vector& x, const Vector& y) { return y.dot(x); }

/// Frobenius product <A, B>_F = trace(B^* A).
inline cplx inner_f(const Matrix& a, const Matrix& b) {
  return (b.adjoint() * a).trace();
}

inline bool is_real(const Matrix& m, double tol = 0.0) {
  return m.imag().cwiseAbs().maxCoeff() <= tol;
}

/// Rotates x so that its largest-modulus entry is real positive. Ties go to the lowest index.
inline Vector phase_normalized(const Vector& x) {
  if (x.size() == 0) return x;
  const double top = x.cwiseAbs().maxCoeff();
  if (top == 0.0) return x;
  Eigen::Index pick = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (std::abs(x(i)) >= top * (1.0 - 1e-12)) {
      pick = i;
      break;
    }
  }
  const cplx rot = std::conj(x(pick)) / std::abs(x(pick));
  return x * rot;
}

/// Flattens (A, lambda) into one vector of K^{n*n+1}, row-major entries first.
inline Vector flatten_pair(const Matrix& a, cplx lambda) {
  const Eigen::Index n2 = a.rows() * a.cols();
  Vector out(n2 + 1);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(k++) = a(i, j);
  out(n2) = lambda;
  return out;
}

inline Vector unit_vector(Eigen::Index n, Eigen::Index i) {
  Vector e = Vector::Zero(n);
  e(i) = 1.0;
  return e;
}

}  // namespace eigenpath
