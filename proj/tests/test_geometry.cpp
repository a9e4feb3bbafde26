#include <gtest/gtest.h>

#include <numbers>

#include "eigenpath/random.hpp"

using namespace eigenpath;

namespace {

constexpr double kPi = std::numbers::pi;

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

Vector rotated(double angle) {
  Vector v(2);
  v << std::cos(angle), std::sin(angle);
  return v;
}

}  // namespace

TEST(Geometry, DistP) {
  const Vector e1 = unit_vector(2, 0);
  const Vector e2 = unit_vector(2, 1);
  EXPECT_NEAR(dist_p(e1, e2), kPi / 2, 1e-15);
  EXPECT_EQ(dist_p(e1, Vector(2.0 * e1)), 0.0);
  EXPECT_NEAR(dist_p(e1, Vector((e1 + e2) / std::sqrt(2.0))), kPi / 4, 1e-15);
  // phase does not matter
  EXPECT_NEAR(dist_p(e1, Vector(cplx(0.0, 1.0) * e1)), 0.0, 1e-15);
}

TEST(Geometry, DistPSineIsMinimalDistanceOverRepresentatives) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector x = rng.vector(4);
    const Vector y = rng.vector(4);
    // 1-D minimisation over y-hat = s * y, s complex; closed-form minimiser is the projection.
    const cplx s_opt = inner(x, y) / y.squaredNorm();
    double best = (x - s_opt * y).norm();
    for (int k = 0; k < 400; ++k) {
      const cplx s = s_opt * (1.0 + 0.05 * std::cos(0.1 * k)) * std::polar(1.0, 0.01 * k);
      best = std::min(best, (x - s * y).norm());
    }
    EXPECT_NEAR(std::sin(dist_p(x, y)), best / x.norm(), 1e-12);
  }
}

TEST(Geometry, DistP2) {
  const Matrix a = diag2(1, -1);
  const Vector e1 = unit_vector(2, 0);
  const EigenTriple t{a, 1.0, e1};
  EXPECT_EQ(dist_p2(t, t), 0.0);
  EXPECT_NEAR(dist_p2(t, EigenTriple{a, 1.0, unit_vector(2, 1)}), kPi / 2, 1e-15);

  const EigenTriple s{a, 1.0, rotated(kPi / 4)};
  EXPECT_NEAR(dist_p2(t, s), kPi / 4, 1e-15);
}

TEST(Geometry, DistP2BothFactorsAtQuarterTurn) {
  // (0, 1) against (e1 e1^*, 1): the flattened pairs meet at pi/4.
  const EigenTriple t{Matrix::Zero(2, 2), 1.0, unit_vector(2, 0)};
  const EigenTriple s{diag2(1, 0), 1.0, rotated(kPi / 4)};
  EXPECT_NEAR(dist_p_pair(t.A, t.lambda, s.A, s.lambda), kPi / 4, 1e-15);
  EXPECT_NEAR(dist_p2(t, s), kPi / (2.0 * std::sqrt(2.0)), 1e-15);
}

TEST(Geometry, DistT) {
  const Vector e1 = unit_vector(2, 0);
  EXPECT_EQ(dist_t(e1, e1), 0.0);
  EXPECT_NEAR(dist_t(e1, rotated(kPi / 4)), 1.0, 1e-15);
  EXPECT_THROW(dist_t(e1, unit_vector(2, 1)), Error);
  Rng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector x = rng.vector(3);
    const Vector y = rng.vector(3);
    EXPECT_LE(dist_p(x, y), dist_t(x, y) + 1e-15);
  }
}

TEST(Geometry, DistRatioBound) {
  EXPECT_NEAR(dist_ratio_bound(1e-9), 1.0, 1e-15);
  EXPECT_NEAR(dist_ratio_bound(kPi / 4), 4.0 / kPi, 1e-15);
  Rng rng(23);
  const double theta = 0.6;
  for (int trial = 0; trial < 50; ++trial) {
    const Vector x = rng.unit_vector(3);
    const Vector y = rotate_towards_random(rng, x, rng.uniform(0.0, theta));
    const double dp = dist_p(x, y);
    const double dt = dist_t(x, y);
    EXPECT_LE(dp, dt + 1e-15);
    EXPECT_LE(dt, dist_ratio_bound(theta) * dp + 1e-15);
  }
}

TEST(Geometry, Normalize) {
  Matrix a = diag2(3, 4);  // |A|_F = 5
  const EigenTriple t{a, 3.0, Vector(cplx(0.0, 2.0) * unit_vector(2, 0))};
  const EigenTriple n = normalize(t);
  EXPECT_NEAR(n.A.norm(), 1.0, 1e-15);
  EXPECT_NEAR(n.v.norm(), 1.0, 1e-15);
  EXPECT_NEAR(dist_p2(t, n), 0.0, 1e-15);  // A / 5 rounds
  const EigenTriple nn = normalize(n);
  EXPECT_EQ(nn.A, n.A);
  EXPECT_EQ(nn.lambda, n.lambda);
  EXPECT_EQ(nn.v, n.v);
  EXPECT_TRUE(n.on_variety());
  // phase convention: largest-modulus entry real positive
  EXPECT_EQ(n.v(0), cplx(1.0, 0.0));
}

TEST(Geometry, LambdaDistanceBounds) {
  EXPECT_EQ(beta_c(0.0), 1.0);
  EXPECT_NEAR(r_theta(0.0), 2.0, 1e-15);
  const auto b = lambda_distance_bounds(0.0, 0.0);
  EXPECT_EQ(b.beta, 1.0);
  EXPECT_NEAR(b.r_theta, 2.0, 1e-15);
  EXPECT_THROW(beta_c(std::sqrt(2.0)), Error);
  EXPECT_THROW(r_theta(kPi / 4), Error);
}

TEST(Geometry, LambdaDistanceInequalities) {
  Rng rng(24);
  const double c = 0.5;
  const double theta = 0.5;
  int part2 = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::Index n = 2 + trial % 4;
    Matrix a = rng.matrix(n);
    a /= a.norm();
    cplx l = rng.scalar();
    if (std::abs(l) > 1.0) l /= std::abs(l);
    const cplx dl = rng.uniform(0.0, c) * rng.phase();
    const Vector v = rng.unit_vector(n);
    const Vector w = rotate_towards_random(rng, v, rng.uniform(0.0, 0.6));
    const EigenTriple s{a, l, v};
    const EigenTriple t{a, l + dl, w};
    const double d2 = dist_p2(s, t);
    const double dv = dist_p(v, w);
    EXPECT_LE(d2, beta_c(c) * std::hypot(std::abs(dl), dv) * (1.0 + 1e-12));
    if (d2 < theta) {
      ++part2;
      EXPECT_LE(std::hypot(std::abs(dl), dist_t(v, w)), r_theta(theta) * d2 * (1.0 + 1e-12));
    }
  }
  EXPECT_GT(part2, 50);
}

TEST(Geometry, TriangleInequality) {
  Rng rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const Vector x = rng.vector(3), y = rng.vector(3), z = rng.vector(3);
    EXPECT_LE(dist_p(x, z), dist_p(x, y) + dist_p(y, z) + 1e-12);
    const EigenTriple a = random_well_posed_triple(rng, 3);
    const EigenTriple b = random_well_posed_triple(rng, 3);
    const EigenTriple c = random_well_posed_triple(rng, 3);
    EXPECT_LE(dist_p2(a, c), dist_p2(a, b) + dist_p2(b, c) + 1e-12);
  }
}

TEST(Geometry, UnitaryInvariance) {
  Rng rng(26);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index n = 2 + trial % 5;
    const EigenTriple s = random_well_posed_triple(rng, n);
    const EigenTriple t = random_well_posed_triple(rng, n);
    const Matrix u = random_unitary(rng, n);
    EXPECT_NEAR(dist_p2(act(u, s), act(u, t)), dist_p2(s, t), 1e-10);
  }
}

TEST(Geometry, OnVariety) {
  const EigenTriple t{diag2(1, -1), 1.0, unit_vector(2, 0)};
  EXPECT_TRUE(t.on_variety());
  const EigenTriple off{diag2(1, -1), 1.1, unit_vector(2, 0)};
  EXPECT_FALSE(off.on_variety());
}
