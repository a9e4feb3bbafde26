#pragma once

#include <limits>
#include <numbers>
#include <tuple>

#include "eigenpath/geometry.hpp"

namespace eigenpath {

namespace constants {
inline constexpr double c0 = 0.0739;
inline constexpr double c0_affine = 0.288;
inline constexpr double epsilon = 0.1640;
inline constexpr double C = 100.0;
/// (1 + sqrt 5) * 2 sqrt 2
inline const double alpha = (1.0 + std::sqrt(5.0)) * 2.0 * std::numbers::sqrt2;
}  // namespace constants

struct ConditionReport {
  double mu_lambda = std::numeric_limits<double>::infinity();
  double mu_v = std::numeric_limits<double>::infinity();
  double mu = std::numeric_limits<double>::infinity();
  Vector left_eigenvector;
  double dist_to_illposed_fiber_affine = 0.0;
  bool well_posed = false;
};

inline double sigma_min_projected(const EigenTriple& t) {
  if (t.n() <= 1) return std::numeric_limits<double>::infinity();
  return smallest_singular_value(projected_restriction(t.A, t.lambda, t.v));
}

inline bool is_well_posed(const EigenTriple& t) {
  if (t.n() <= 1) return true;
  return !projected_singular(projected_restriction(t.A, t.lambda, t.v), t.A.norm());
}

inline void require_well_posed(const EigenTriple& t) {
  if (!is_well_posed(t)) throw Error(ErrorCode::IllPosed, "eigenvalue is not simple");
}

inline double mu_v(const EigenTriple& t) {
  require_well_posed(t);
  return t.A.norm() / sigma_min_projected(t);
}

inline double mu(const EigenTriple& t) { return std::max(1.0, mu_v(t)); }

inline double lambda_ratio(const EigenTriple& t) {
  return std::norm(t.lambda) / t.A.squaredNorm();
}

inline double mu_lambda(const EigenTriple& t) {
  require_well_posed(t);
  const Vector u = smallest_left_singular_vector(shifted(t.A, t.lambda));
  const double vu = std::norm(inner(t.v, u));
  const double k = t.v.squaredNorm() * u.squaredNorm() / vu;
  return std::sqrt(1.0 + k) / (1.0 + lambda_ratio(t));
}

/// sigma_min of the projected restriction at the representative with |A|_F = 1.
inline double dist_to_illposed_fiber(const EigenTriple& t) {
  require_well_posed(t);
  return sigma_min_projected(t) / t.A.norm();
}

inline ConditionReport condition_report(const EigenTriple& t) {
  ConditionReport r;
  r.well_posed = is_well_posed(t);
  r.left_eigenvector = smallest_left_singular_vector(shifted(t.A, t.lambda));
  if (!r.well_posed) return r;
  r.mu_v = mu_v(t);
  r.mu = std::max(1.0, r.mu_v);
  r.mu_lambda = mu_lambda(t);
  r.dist_to_illposed_fiber_affine = dist_to_illposed_fiber(t);
  return r;
}

struct ConditionTangent {
  Matrix Adot;
  cplx lambdadot;
  Vector vdot;
};

/// Horizontal lift of a matrix direction Bdot (orthogonal to A) to the tangent of the variety.
inline ConditionTangent condition_operator(const EigenTriple& t, const Matrix& bdot) {
  require_well_posed(t);
  if (bdot.rows() != t.A.rows() || bdot.cols() != t.A.cols())
    throw Error(ErrorCode::DimensionMismatch, "condition_operator");
  const double na2 = t.A.squaredNorm();
  if (std::abs(inner_f(bdot, t.A)) > 1e-10 * std::sqrt(na2) * bdot.norm())
    throw Error(ErrorCode::NotOrthogonal, "Bdot must be Frobenius-orthogonal to A");
  const Vector bv = bdot * t.v;
  const Vector u = smallest_left_singular_vector(shifted(t.A, t.lambda));
  const cplx ld = inner(bv, u) / ((1.0 + lambda_ratio(t)) * inner(t.v, u));
  Matrix adot = bdot - ld * (std::conj(t.lambda) / na2) * t.A;
  const Eigen::Index n = t.n();
  Vector vdot = Vector::Zero(n);
  if (n > 1) {
    const Matrix b = orthonormal_complement_basis(t.v);
    const Matrix p = b.adjoint() * shifted(t.A, t.lambda) * b;
    vdot = b * p.fullPivLu().solve(b.adjoint() * bv);
  }
  return {adot, ld, vdot};
}

/// Component of M orthogonal to A in the Frobenius product.
inline Matrix project_orthogonal(const Matrix& m, const Matrix& a) {
  return m - (inner_f(m, a) / a.squaredNorm()) * a;
}

/// Constructive nearest point of the ill-posed fiber over v: (B, lambda, v) with B v = lambda v.
inline EigenTriple nearest_illposed_candidate(const EigenTriple& t) {
  require_well_posed(t);
  const Matrix b = orthonormal_complement_basis(t.v);
  const Matrix p = b.adjoint() * shifted(t.A, t.lambda) * b;
  Eigen::JacobiSVD<Matrix> solver(p, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Index m = p.rows();
  const double s = solver.singularValues()(m - 1);
  const Vector x = b * solver.matrixU().col(m - 1);
  const Vector y = b * solver.matrixV().col(m - 1);
  return {t.A + s * x * y.adjoint(), t.lambda, t.v, t.field};
}

inline double sensitivity_constant(double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::OutOfRange, "epsilon must be positive");
  const double a = constants::alpha;
  return std::atan(eps / (std::numbers::sqrt2 + a * (1.0 + eps))) / (1.0 + eps);
}

/// mu_v of the shifted triple (A + alpha I, lambda + alpha, v).
inline double mu_translation(const EigenTriple& t, cplx alpha) {
  const Eigen::Index n = t.n();
  EigenTriple s{t.A + alpha * Matrix::Identity(n, n), t.lambda + alpha, t.v, t.field};
  return mu_v(s);
}

inline double dist_t2(const EigenTriple& s, const EigenTriple& t) {
  const double da = std::tan(dist_p_pair(s.A, s.lambda, t.A, t.lambda));
  const double dv = dist_t(s.v, t.v);
  return std::hypot(da, dv);
}

/// Upper bound on mu_v(t2) in terms of mu_v(t1) and d_T2; infinite outside its radius.
inline double wedin_mu_v_bound(const EigenTriple& t1, const EigenTriple& t2) {
  const double m = mu_v(t1);
  const double d = dist_t2(t1, t2);
  const double den = 1.0 - constants::alpha * m * d;
  if (!(den > 0.0)) return std::numeric_limits<double>::infinity();
  return (1.0 + std::numbers::sqrt2 * d) * m / den;
}

/// Norm of the inverse of the orthogonal projection from w^perp onto v^perp.
inline double projection_inverse_norm(const Vector& v, const Vector& w) {
  const Matrix bv = orthonormal_complement_basis(v);
  const Matrix bw = orthonormal_complement_basis(w);
  const double s = smallest_singular_value(bv.adjoint() * bw);
  if (!(s > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / s;
}

/// Solves R_theta * theta = 1 / (2 sqrt 2) on (0, pi/4) by bisection.
inline double theta0() {
  const double target = 1.0 / (2.0 * std::numbers::sqrt2);
  double lo = 0.0;
  double hi = std::numbers::pi / 4 - 1e-9;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (r_theta(mid) * mid < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace eigenpath
