#pragma once

#include <numbers>

#include "eigenpath/linalg.hpp"

namespace eigenpath {

/// Representative (A, lambda, v) of a point of the solution variety.
struct EigenTriple {
  Matrix A;
  cplx lambda{0.0, 0.0};
  Vector v;
  Field field = Field::Complex;

  Eigen::Index n() const { return v.size(); }
  double residual() const { return (shifted(A, lambda) * v).norm(); }
  bool on_variety(double tol = 1e-10) const {
    return residual() <= tol * std::max(A.norm(), kAbsoluteZero) * v.norm();
  }
};

/// Acts by (A, lambda, v) -> (U A U^*, lambda, U v) for unitary U.
inline EigenTriple act(const Matrix& u, const EigenTriple& t) {
  return {u * t.A * u.adjoint(), t.lambda, u * t.v, t.field};
}

/// Projective angle between the classes of x and y, in [0, pi/2].
inline double dist_p(const Vector& x, const Vector& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::DimensionMismatch, "dist_p");
  const double nx = x.norm();
  const double ny = y.norm();
  if (!(nx > 0.0) || !(ny > 0.0)) throw Error(ErrorCode::ZeroVector, "dist_p");
  const Vector xh = x / nx;
  const Vector yh = y / ny;
  const cplx c = inner(yh, xh);
  const double ac = std::abs(c);
  const cplx phase = ac > 0.0 ? c / ac : cplx(1.0, 0.0);
  // Half-angle form between yh and the phase-aligned xh: no arccos, exact zero on equal classes.
  return 2.0 * std::atan2((yh - phase * xh).norm(), (yh + phase * xh).norm());
}

inline double dist_p(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "dist_p");
  return dist_p(Vector(a.reshaped()), Vector(b.reshaped()));
}

inline double dist_p_pair(const Matrix& a, cplx l, const Matrix& b, cplx m) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "dist_p_pair");
  return dist_p(flatten_pair(a, l), flatten_pair(b, m));
}

inline double dist_p2(const EigenTriple& s, const EigenTriple& t) {
  if (s.n() != t.n() || s.A.rows() != t.A.rows())
    throw Error(ErrorCode::DimensionMismatch, "dist_p2");
  const double da = dist_p_pair(s.A, s.lambda, t.A, t.lambda);
  const double dv = dist_p(s.v, t.v);
  return std::hypot(da, dv);
}

inline double dist_t(const Vector& x, const Vector& y) {
  const double d = dist_p(x, y);
  if (d >= std::numbers::pi / 2 * (1.0 - 1e-15))
    throw Error(ErrorCode::Infinite, "d_T is infinite at angle pi/2");
  return std::tan(d);
}

inline double dist_ratio_bound(double theta) {
  if (!(theta > 0.0) || !(theta < std::numbers::pi / 2))
    throw Error(ErrorCode::OutOfRange, "theta must lie in (0, pi/2)");
  return std::tan(theta) / theta;
}

/// Affine-product distance (|l - m|^2 + d_P(v, w)^2)^(1/2) used with a fixed matrix.
inline double dist_affine(cplx l, const Vector& v, cplx m, const Vector& w) {
  return std::hypot(std::abs(l - m), dist_p(v, w));
}

/// |A|_F = 1, |v| = 1, with the phase convention on v.
inline EigenTriple normalize(const EigenTriple& t) {
  const double na = t.A.norm();
  const double nv = t.v.norm();
  if (!(na > 0.0)) throw Error(ErrorCode::ZeroVector, "normalize: zero matrix");
  if (!(nv > 0.0)) throw Error(ErrorCode::ZeroVector, "normalize: zero vector");
  EigenTriple out{t.A / na, t.lambda / na, phase_normalized(t.v / nv), t.field};
  return out;
}

struct LambdaBounds {
  double beta;
  double r_theta;
};

inline double beta_c(double c) {
  if (!(c >= 0.0) || !(c < std::numbers::sqrt2))
    throw Error(ErrorCode::OutOfRange, "c must lie in [0, sqrt(2))");
  return 1.0 / std::sqrt(1.0 - c * c / 2.0);
}

inline double r_theta(double theta) {
  if (!(theta >= 0.0) || !(theta < std::numbers::pi / 4))
    throw Error(ErrorCode::OutOfRange, "theta must lie in [0, pi/4)");
  const double c = std::cos(theta + std::numbers::pi / 4);
  return std::sqrt(std::numbers::sqrt2 / (c * c * c));
}

/// (beta_c, R_theta) for the comparison between |lambda' - lambda| and d_P at |A|_F = 1.
inline LambdaBounds lambda_distance_bounds(double c, double theta) {
  return {beta_c(c), r_theta(theta)};
}

}  // namespace eigenpath
