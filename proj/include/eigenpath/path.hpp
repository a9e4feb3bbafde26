#pragma once

#include <vector>

#include "eigenpath/types.hpp"

namespace eigenpath {

enum class PathKind { Linear, UnitaryOrbit, Sampled };

inline const char* to_string(PathKind k) {
  switch (k) {
    case PathKind::Linear: return "linear";
    case PathKind::UnitaryOrbit: return "unitary-orbit";
    case PathKind::Sampled: return "sampled";
  }
  return "unknown";
}

/// t -> A(t) on [0, 1], re-normalized to |A(t)|_F = 1 pointwise.
class MatrixPath {
 public:
  static MatrixPath linear(const Matrix& a0, const Matrix& a1) {
    if (a0.rows() != a0.cols() || a0.rows() != a1.rows() || a0.cols() != a1.cols())
      throw Error(ErrorCode::DimensionMismatch, "linear path endpoints");
    MatrixPath p;
    p.kind_ = PathKind::Linear;
    p.mats_ = {a0, a1};
    return p;
  }

  static MatrixPath unitary_orbit(const Matrix& a, const Matrix& generator) {
    if (a.rows() != a.cols() || generator.rows() != a.rows() || generator.cols() != a.cols())
      throw Error(ErrorCode::DimensionMismatch, "unitary-orbit path");
    if ((generator + generator.adjoint()).norm() > 1e-10 * std::max(1.0, generator.norm()))
      throw Error(ErrorCode::OutOfRange, "generator must be skew-Hermitian");
    MatrixPath p;
    p.kind_ = PathKind::UnitaryOrbit;
    p.mats_ = {a, generator};
    // exp(tG) = W diag(exp(-i t h)) W^* with iG = W diag(h) W^*.
    Eigen::SelfAdjointEigenSolver<Matrix> es(cplx(0.0, 1.0) * generator);
    p.eig_vectors_ = es.eigenvectors();
    p.eig_values_ = es.eigenvalues();
    return p;
  }

  static MatrixPath sampled(std::vector<double> ts, std::vector<Matrix> as) {
    if (ts.size() < 2 || ts.size() != as.size())
      throw Error(ErrorCode::DimensionMismatch, "sampled path needs matching ts and As");
    if (ts.front() != 0.0 || ts.back() != 1.0)
      throw Error(ErrorCode::OutOfRange, "sampled path must span [0, 1]");
    for (std::size_t i = 1; i < ts.size(); ++i) {
      if (!(ts[i] > ts[i - 1])) throw Error(ErrorCode::OutOfRange, "ts must increase");
      if (as[i].rows() != as[0].rows() || as[i].cols() != as[0].cols())
        throw Error(ErrorCode::DimensionMismatch, "sampled matrices differ in shape");
    }
    if (as[0].rows() != as[0].cols()) throw Error(ErrorCode::DimensionMismatch, "square");
    MatrixPath p;
    p.kind_ = PathKind::Sampled;
    p.ts_ = std::move(ts);
    p.mats_ = std::move(as);
    return p;
  }

  PathKind kind() const { return kind_; }
  Eigen::Index n() const { return mats_.front().rows(); }
  const std::vector<Matrix>& matrices() const { return mats_; }
  const std::vector<double>& times() const { return ts_; }

  Field field() const {
    for (const auto& m : mats_)
      if (!is_real(m)) return Field::Complex;
    return Field::Real;
  }

  Matrix orbit_unitary(double t) const {
    const Vector ph = (cplx(0.0, -t) * eig_values_.cast<cplx>()).array().exp();
    return eig_vectors_ * ph.asDiagonal() * eig_vectors_.adjoint();
  }

  /// Un-normalized representative M(t).
  Matrix raw(double t) const {
    check_t(t);
    switch (kind_) {
      case PathKind::Linear: return (1.0 - t) * mats_[0] + t * mats_[1];
      case PathKind::UnitaryOrbit: {
        const Matrix u = orbit_unitary(t);
        return u * mats_[0] * u.adjoint();
      }
      case PathKind::Sampled: {
        const std::size_t i = segment(t);
        const double w = (t - ts_[i]) / (ts_[i + 1] - ts_[i]);
        return (1.0 - w) * mats_[i] + w * mats_[i + 1];
      }
    }
    return {};
  }

  Matrix raw_derivative(double t) const {
    check_t(t);
    switch (kind_) {
      case PathKind::Linear: return mats_[1] - mats_[0];
      case PathKind::UnitaryOrbit: {
        const Matrix m = raw(t);
        return mats_[1] * m - m * mats_[1];
      }
      case PathKind::Sampled: {
        const std::size_t i = segment(t);
        const double h = ts_[i + 1] - ts_[i];
        const double lo = std::max(0.0, t - h);
        const double hi = std::min(1.0, t + h);
        return (raw(hi) - raw(lo)) / (hi - lo);
      }
    }
    return {};
  }

  Matrix at(double t) const {
    const Matrix m = raw(t);
    const double nm = m.norm();
    if (!(nm > 0.0)) throw Error(ErrorCode::ZeroVector, "path passes through the zero matrix");
    return m / nm;
  }

  /// Derivative of the normalized path A(t) = M(t) / |M(t)|_F.
  Matrix derivative(double t) const {
    const Matrix m = raw(t);
    const Matrix md = raw_derivative(t);
    const double nm = m.norm();
    if (!(nm > 0.0)) throw Error(ErrorCode::ZeroVector, "path passes through the zero matrix");
    const double re = inner_f(md, m).real();
    return md / nm - m * (re / (nm * nm * nm));
  }

 private:
  static void check_t(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw Error(ErrorCode::OutOfRange, "t outside [0, 1]");
  }

  std::size_t segment(double t) const {
    const auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - ts_.begin());
    i = i == 0 ? 0 : i - 1;
    return std::min(i, ts_.size() - 2);
  }

  PathKind kind_ = PathKind::Linear;
  std::vector<Matrix> mats_;
  std::vector<double> ts_;
  Matrix eig_vectors_;
  RealVector eig_values_;
};

}  // namespace eigenpath
