#pragma once

#include <utility>

#include "eigenpath/types.hpp"

namespace eigenpath {

struct SvdResult {
  RealVector singular_values;  // descending
  Matrix left_vectors;
  Matrix right_vectors;
};

inline SvdResult svd(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

inline double frobenius_norm(const Matrix& m) { return m.norm(); }

inline double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> solver(m);
  return solver.singularValues()(0);
}

inline double smallest_singular_value(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> solver(m);
  const auto& s = solver.singularValues();
  // Non-square inputs: the trailing min(rows, cols) value is the smallest.
  return s(s.size() - 1);
}

/// sigma_min <= tol * sigma_max, with an absolute floor when sigma_max vanishes.
inline bool numerically_singular(const RealVector& sv, Eigen::Index dim) {
  if (dim == 0) return false;
  if (sv.size() < dim) return true;
  const double smax = sv(0);
  const double smin = sv(dim - 1);
  if (smax <= kAbsoluteZero) return true;
  return smin <= kSingularityTol * smax;
}

inline bool numerically_singular(const Matrix& m) {
  if (m.size() == 0) return false;
  Eigen::JacobiSVD<Matrix> solver(m);
  return numerically_singular(solver.singularValues(), std::min(m.rows(), m.cols()));
}

/// Singularity of a projected restriction, measured against max(sigma_max, |A|_F) so that
/// the 1x1 case (n = 2) is not trivially invertible.
inline bool projected_singular(const RealVector& sv, double norm_a) {
  if (sv.size() == 0) return false;
  const double scale = std::max(sv(0), norm_a);
  if (scale <= kAbsoluteZero) return true;
  return sv(sv.size() - 1) <= kSingularityTol * scale;
}

/// Same rule applied to P directly. Eigenvalues of P^*P carry absolute error near
/// n eps |P|^2, so sigma_min^2 > 1e-12 scale^2 settles invertibility without an SVD;
/// anything closer goes through JacobiSVD.
inline bool projected_singular(const Matrix& p, double norm_a) {
  if (p.size() == 0) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> gram(p.adjoint() * p, Eigen::EigenvaluesOnly);
  const RealVector& ev = gram.eigenvalues();  // ascending
  const double scale = std::max(std::sqrt(std::max(ev(ev.size() - 1), 0.0)), norm_a);
  if (scale > kAbsoluteZero && ev(0) > 1e-12 * scale * scale) return false;
  Eigen::JacobiSVD<Matrix> solver(p);
  return projected_singular(RealVector(solver.singularValues()), norm_a);
}

/// Columns 2..n of the Householder reflector sending v/|v| to a multiple of e1.
inline Matrix orthonormal_complement_basis(const Vector& v) {
  const double nv = v.norm();
  if (!(nv > 0.0)) throw Error(ErrorCode::ZeroVector, "complement of the zero vector");
  const Eigen::Index n = v.size();
  const Vector x = v / nv;
  const double ax = std::abs(x(0));
  const cplx phase = ax > 0.0 ? x(0) / ax : cplx(1.0, 0.0);
  Vector u = x;
  u(0) += phase;
  const double uu = u.squaredNorm();
  Matrix h = Matrix::Identity(n, n) - (2.0 / uu) * u * u.adjoint();
  return h.rightCols(n - 1);
}

inline void check_square(const Matrix& a, const Vector& v, const char* where) {
  if (a.rows() != a.cols() || a.rows() != v.size())
    throw Error(ErrorCode::DimensionMismatch, where);
}

inline Matrix shifted(const Matrix& a, cplx lambda) {
  return lambda * Matrix::Identity(a.rows(), a.cols()) - a;
}

/// B^*(lambda I - A)B for B the complement basis of v.
inline Matrix projected_restriction(const Matrix& a, cplx lambda, const Vector& v) {
  check_square(a, v, "projected_restriction");
  const Matrix b = orthonormal_complement_basis(v);
  return b.adjoint() * shifted(a, lambda) * b;
}

/// Solves [[v, lambda I - A], [0, v^*]] (ldot, vdot) = (w, 0).
inline std::pair<cplx, Vector> bordered_solve(const Matrix& a, cplx lambda, const Vector& v,
                                              const Vector& w) {
  check_square(a, v, "bordered_solve");
  if (w.size() != v.size()) throw Error(ErrorCode::DimensionMismatch, "bordered_solve rhs");
  const Eigen::Index n = v.size();
  Matrix m = Matrix::Zero(n + 1, n + 1);
  m.block(0, 0, n, 1) = v;
  m.block(0, 1, n, n) = shifted(a, lambda);
  m.block(n, 1, 1, n) = v.adjoint();
  Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (numerically_singular(solver.singularValues(), n + 1))
    throw Error(ErrorCode::NotInvertible, "bordered Newton matrix is singular");
  Vector rhs = Vector::Zero(n + 1);
  rhs.head(n) = w;
  const Vector sol = solver.solve(rhs);
  Vector vdot = sol.tail(n);
  // Remove the rounding-level component along v.
  vdot -= (inner(vdot, v) / v.squaredNorm()) * v;
  return {sol(0), vdot};
}

/// Unit u with M^* u ~ 0, taken as the left singular vector of the smallest singular value.
inline Vector left_null_vector(const Matrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "left_null_vector");
  Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeFullU);
  const Eigen::Index n = m.rows();
  if (!numerically_singular(solver.singularValues(), n))
    throw Error(ErrorCode::NoNullVector, "matrix is numerically full rank");
  return phase_normalized(solver.matrixU().col(n - 1));
}

/// Left singular vector of the smallest singular value, with no rank check.
inline Vector smallest_left_singular_vector(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> solver(m, Eigen::ComputeFullU);
  return phase_normalized(solver.matrixU().col(m.rows() - 1));
}

/// Positively oriented real orthonormal frame (v, v2, ..., vn), returned as its last n-1 columns.
inline RealMatrix oriented_complement_frame(const RealVector& v) {
  const Eigen::Index n = v.size();
  RealMatrix frame(n, n);
  frame.col(0) = v.normalized();
  Eigen::Index filled = 1;
  for (Eigen::Index i = 0; i < n && filled < n; ++i) {
    RealVector c = RealVector::Unit(n, i);
    for (int pass = 0; pass < 2; ++pass)
      for (Eigen::Index k = 0; k < filled; ++k) c -= frame.col(k).dot(c) * frame.col(k);
    const double nc = c.norm();
    if (nc < 1e-8) continue;  // near-parallel candidate
    frame.col(filled++) = c / nc;
  }
  if (frame.determinant() < 0.0) frame.col(n - 1) *= -1.0;
  return frame.rightCols(n - 1);
}

/// det of L, where L acts on v^perp in a positively oriented orthonormal basis.
inline double orientation_det(const Vector& v, const Matrix& l, Field field = Field::Real) {
  if (field != Field::Real || !is_real(v) || !is_real(l))
    throw Error(ErrorCode::Unsupported, "orientation_det requires real data");
  if (l.rows() != v.size() - 1 || l.cols() != v.size() - 1)
    throw Error(ErrorCode::DimensionMismatch, "orientation_det");
  if (l.size() == 0) return 1.0;
  return l.real().determinant();
}

/// The orientation function D(A, lambda, v) for real triples.
inline double orientation_function(const Matrix& a, cplx lambda, const Vector& v) {
  check_square(a, v, "orientation_function");
  if (!is_real(a) || !is_real(v) || lambda.imag() != 0.0)
    throw Error(ErrorCode::Unsupported, "orientation function is defined over the reals");
  const RealVector rv = v.real();
  const double nv = rv.norm();
  if (!(nv > 0.0)) throw Error(ErrorCode::ZeroVector, "orientation_function");
  const RealMatrix b = oriented_complement_frame(rv / nv);
  const RealMatrix shift =
      lambda.real() * RealMatrix::Identity(a.rows(), a.cols()) - a.real();
  const RealMatrix l = b.transpose() * shift * b;
  return orientation_det(v / nv, l.cast<cplx>());
}

}  // namespace eigenpath
