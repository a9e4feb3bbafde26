#pragma once

#include <optional>
#include <vector>

#include "eigenpath/condition.hpp"

namespace eigenpath {

struct NewtonPoint {
  cplx lambda;
  Vector v;
};

/// N_A(lambda, v) through the projected (n-1)-dimensional solve.
inline NewtonPoint newton_step(const Matrix& a, cplx lambda, const Vector& v) {
  check_square(a, v, "newton_step");
  if (!(v.norm() > 0.0)) throw Error(ErrorCode::ZeroVector, "newton_step");
  const Matrix shift = shifted(a, lambda);
  const Vector w = shift * v;
  Vector vdot = Vector::Zero(v.size());
  if (v.size() > 1) {
    const Matrix b = orthonormal_complement_basis(v);
    const Matrix p = b.adjoint() * shift * b;
    if (projected_singular(p, a.norm()))
      throw Error(ErrorCode::NotInvertible, "projected restriction is singular");
    vdot = b * p.partialPivLu().solve(b.adjoint() * w);
  }
  const Vector nv = v - vdot;
  const cplx ldot = inner(shift * nv, v) / v.squaredNorm();
  return {lambda - ldot, nv};
}

/// Same map through the bordered (n+1)-dimensional system.
inline NewtonPoint newton_step_bordered(const Matrix& a, cplx lambda, const Vector& v) {
  const auto [ldot, vdot] = bordered_solve(a, lambda, v, shifted(a, lambda) * v);
  return {lambda - ldot, v - vdot};
}

struct NewtonTrace {
  std::vector<NewtonPoint> iterates;
  std::vector<double> distances_to_target;
  std::vector<bool> defined_flags;
  std::optional<std::size_t> failed_step;
};

inline NewtonPoint renormalized(const NewtonPoint& p) {
  return {p.lambda, phase_normalized(p.v / p.v.norm())};
}

inline NewtonTrace newton_iterate(const Matrix& a, cplx lambda0, const Vector& v0,
                                  std::size_t k_max,
                                  const std::optional<EigenTriple>& reference = std::nullopt) {
  NewtonTrace tr;
  NewtonPoint cur{lambda0, v0};
  auto record = [&](const NewtonPoint& p, bool ok) {
    tr.iterates.push_back(p);
    tr.defined_flags.push_back(ok);
    if (reference)
      tr.distances_to_target.push_back(
          dist_p2(EigenTriple{a, p.lambda, p.v}, *reference));
  };
  record(cur, true);
  for (std::size_t k = 1; k <= k_max; ++k) {
    try {
      cur = renormalized(newton_step(a, cur.lambda, cur.v));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotInvertible) throw;
      tr.defined_flags.push_back(false);
      tr.failed_step = k;
      break;
    }
    record(cur, true);
  }
  return tr;
}

inline bool halving_holds(const std::vector<double>& d, std::size_t k_check, double slack) {
  if (d.size() < k_check + 1) return false;
  for (std::size_t k = 1; k <= k_check; ++k) {
    const double bound = std::ldexp(d[0], -static_cast<int>((1u << k) - 1)) + slack;
    if (!(d[k] <= bound)) return false;
  }
  return true;
}

inline constexpr double kCertifySlack = 1e-13;

/// Approximate-solution test: d_k <= 2^-(2^k - 1) d_0 for k = 1..k_check in d_P2.
inline bool certify_approximate_solution(const Matrix& a, cplx lambda0, const Vector& v0,
                                         const EigenTriple& target, std::size_t k_check) {
  if (!is_well_posed(target)) throw Error(ErrorCode::IllPosed, "certification target");
  const NewtonTrace tr = newton_iterate(a, lambda0, v0, k_check, target);
  if (tr.failed_step) return false;
  return halving_holds(tr.distances_to_target, k_check, kCertifySlack);
}

/// Same test in the affine distance (|lambda_k - lambda|^2 + d_P(v_k, v)^2)^(1/2).
inline bool certify_affine(const Matrix& a, cplx lambda0, const Vector& v0,
                           const EigenTriple& target, std::size_t k_check) {
  if (!is_well_posed(target)) throw Error(ErrorCode::IllPosed, "certification target");
  const NewtonTrace tr = newton_iterate(a, lambda0, v0, k_check);
  if (tr.failed_step) return false;
  std::vector<double> d;
  for (const auto& p : tr.iterates) d.push_back(dist_affine(p.lambda, p.v, target.lambda, target.v));
  return halving_holds(d, k_check, kCertifySlack);
}

inline double gamma_radius(const EigenTriple& t) { return constants::c0 / mu(t); }

inline double gamma_radius_affine(const EigenTriple& t) {
  if (std::abs(t.A.norm() - 1.0) > 1e-12)
    throw Error(ErrorCode::NotNormalized, "affine radius needs |A|_F = 1");
  return constants::c0_affine / mu(t);
}

/// Matrix [v, (lambda I - A) B] representing DF_A(lambda, v) restricted to K x v^perp.
inline Matrix restricted_derivative(const EigenTriple& t) {
  const Eigen::Index n = t.n();
  const Vector vh = t.v / t.v.norm();
  Matrix m(n, n);
  m.col(0) = vh;
  if (n > 1) m.rightCols(n - 1) = shifted(t.A, t.lambda) * orthonormal_complement_basis(vh);
  return m;
}

inline double restricted_derivative_inverse_norm(const EigenTriple& t) {
  const double s = smallest_singular_value(restricted_derivative(t));
  if (!(s > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / s;
}

/// D^2 F_A(lambda, v) applied to (ldot, vdot) and (edot, udot).
inline Vector second_derivative(cplx ldot, const Vector& vdot, cplx edot, const Vector& udot) {
  return ldot * udot + edot * vdot;
}

}  // namespace eigenpath
