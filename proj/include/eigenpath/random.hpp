#pragma once

#include <cstdint>
#include <numbers>
#include <random>

#include "eigenpath/newton.hpp"

namespace eigenpath {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

class Rng {
 public:
  explicit Rng(std::uint64_t seed = kDefaultSeed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }
  cplx phase() {
    const double a = uniform(0.0, 2.0 * std::numbers::pi);
    return {std::cos(a), std::sin(a)};
  }
  /// Standard complex Gaussian, or a real Gaussian in real mode.
  cplx scalar(Field f = Field::Complex) {
    if (f == Field::Real) return {normal(), 0.0};
    return cplx(normal(), normal()) / std::numbers::sqrt2;
  }
  Vector vector(Eigen::Index n, Field f = Field::Complex) {
    Vector x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = scalar(f);
    return x;
  }
  Vector unit_vector(Eigen::Index n, Field f = Field::Complex) {
    Vector x = vector(n, f);
    return x / x.norm();
  }
  Matrix matrix(Eigen::Index n, Field f = Field::Complex) {
    Matrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = scalar(f);
    return m;
  }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Haar-distributed unitary (orthogonal in real mode) from a phase-corrected QR.
inline Matrix random_unitary(Rng& rng, Eigen::Index n, Field f = Field::Complex) {
  const Matrix g = rng.matrix(n, f);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0.0) q.col(i) *= r(i, i) / a;
  }
  return q;
}

inline Matrix random_special_orthogonal(Rng& rng, Eigen::Index n) {
  Matrix q = random_unitary(rng, n, Field::Real);
  if (q.real().determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

/// Eigentriples of A from the dense solver, normalized.
/// In real mode, eigenvalues within 1e-10 |A|_F of the real line are snapped to it with a real
/// eigenvector; the remaining (non-real) triples are returned as complex.
inline std::vector<EigenTriple> dense_eigentriples(const Matrix& a, Field f = Field::Complex) {
  Eigen::ComplexEigenSolver<Matrix> es(a);
  std::vector<EigenTriple> out;
  for (Eigen::Index j = 0; j < a.rows(); ++j) {
    EigenTriple t = normalize(EigenTriple{a, es.eigenvalues()(j), es.eigenvectors().col(j), f});
    if (f == Field::Real) {
      if (std::abs(t.lambda.imag()) <= 1e-10) {
        t.lambda = t.lambda.real();
        t.v = Vector(t.v.real().cast<cplx>());
        t = normalize(t);
      } else {
        t.field = Field::Complex;
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

/// Gaussian matrix with one of its eigentriples chosen uniformly; redraws ill-posed picks.
inline EigenTriple random_well_posed_triple(Rng& rng, Eigen::Index n) {
  for (;;) {
    const auto ts = dense_eigentriples(rng.matrix(n));
    const EigenTriple& t = ts[rng.index(ts.size())];
    if (is_well_posed(t)) return t;
  }
}

/// U diag(d) U^* with random complex d and Haar U; returns the matrix and its spectrum.
inline std::pair<Matrix, Vector> random_normal_matrix(Rng& rng, Eigen::Index n) {
  const Vector d = rng.vector(n);
  const Matrix u = random_unitary(rng, n);
  return {u * d.asDiagonal() * u.adjoint(), d};
}

/// Unit vector orthogonal to v.
inline Vector random_orthogonal_unit(Rng& rng, const Vector& v, Field f = Field::Complex) {
  for (;;) {
    Vector w = rng.vector(v.size(), f);
    w -= (inner(w, v) / v.squaredNorm()) * v;
    const double nw = w.norm();
    if (nw > 1e-8) return w / nw;
  }
}

/// Point at angle d from v along a random orthogonal direction.
inline Vector rotate_towards_random(Rng& rng, const Vector& v, double d) {
  const Vector vh = v / v.norm();
  return std::cos(d) * vh + std::sin(d) * random_orthogonal_unit(rng, vh);
}

/// lambda0 on a random ray from lambda with d_P((A, lambda), (A, lambda0)) = d exactly.
inline cplx lambda_at_projective_distance(Rng& rng, const Matrix& a, cplx lambda, double d) {
  const cplx dir = rng.phase();
  auto dist = [&](double s) { return dist_p_pair(a, lambda, a, lambda + s * dir); };
  double hi = std::max(d, 1e-16);
  while (dist(hi) < d) {
    hi *= 2.0;
    if (hi > 1e12) throw Error(ErrorCode::OutOfRange, "distance not reachable by moving lambda");
  }
  double lo = 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-17 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (dist(mid) < d ? lo : hi) = mid;
  }
  return lambda + 0.5 * (lo + hi) * dir;
}

/// Start (lambda0, v0) for fixed A with d_P2 to t equal to d, split at a random angle.
inline NewtonPoint sample_start(Rng& rng, const EigenTriple& t, double d) {
  const double phi = rng.uniform(0.0, std::numbers::pi / 2);
  const cplx l0 = lambda_at_projective_distance(rng, t.A, t.lambda, d * std::cos(phi));
  return {l0, rotate_towards_random(rng, t.v, d * std::sin(phi))};
}

/// Start with affine distance (|lambda0 - lambda|^2 + d_P(v0, v)^2)^(1/2) equal to d.
inline NewtonPoint sample_start_affine(Rng& rng, const EigenTriple& t, double d) {
  const double phi = rng.uniform(0.0, std::numbers::pi / 2);
  const cplx l0 = t.lambda + d * std::cos(phi) * rng.phase();
  return {l0, rotate_towards_random(rng, t.v, d * std::sin(phi))};
}

}  // namespace eigenpath
