#pragma once

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "eigenpath/random.hpp"
#include "eigenpath/tracker.hpp"

namespace eigenpath::verify {

struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  std::string relation;  // how measured compares to bound
  double bound = 0.0;
};

struct Criterion {
  int id = 0;
  std::string title;
  std::vector<Check> checks;

  bool passed() const {
    return !checks.empty() &&
           std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
  std::size_t failures() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.passed; }));
  }
};

struct Options {
  std::uint64_t seed = kDefaultSeed;
  std::size_t trials = 0;  // 0 keeps each criterion's default sample count

  std::size_t count(std::size_t fallback) const { return trials ? trials : fallback; }
  Rng rng(int salt) const { return Rng(seed * 1000003ULL + static_cast<std::uint64_t>(salt)); }
};

inline double rel_err(double measured, double expected) {
  return std::abs(measured - expected) / std::abs(expected);
}

inline Check rel_check(std::string name, double measured, double expected, double tol) {
  const double e = rel_err(measured, expected);
  return {std::move(name), e <= tol, e, "rel_err <=", tol};
}

inline Check violations(std::string name, std::size_t bad, std::size_t total) {
  std::ostringstream os;
  os << name << " (" << total << " samples)";
  return {os.str(), bad == 0 && total > 0, static_cast<double>(bad), "violations ==", 0.0};
}

inline Check worst(std::string name, double measured, double tol) {
  return {std::move(name), measured <= tol, measured, "<=", tol};
}

inline std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

inline EigenTriple triple(const Matrix& a, cplx lambda, const Vector& v) { return {a, lambda, v}; }

inline Matrix mat2(cplx a, cplx b, cplx c, cplx d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// ---------------------------------------------------------------- 1

inline Criterion worked_examples() {
  Criterion cr{1, "closed-form condition numbers of the worked examples", {}};
  auto& ck = cr.checks;
  const Vector e1 = unit_vector(2, 0);
  ck.push_back(rel_check("(a) mu_v(diag(1,-1), 1, e1) = 1/sqrt2",
                         mu_v(triple(mat2(1, 0, 0, -1), 1.0, e1)), 1 / std::sqrt(2.0), 1e-12));
  for (Eigen::Index n : {2, 3}) {
    Matrix a = Matrix::Zero(n, n);
    a(0, 0) = 1.0;
    const EigenTriple t = triple(a, 1.0, unit_vector(n, 0));
    const std::string tag = "(b) n=" + std::to_string(n) + " ";
    ck.push_back(rel_check(tag + "mu_lambda(e1e1*, 1, e1) = 1/sqrt2", mu_lambda(t), 1 / std::sqrt(2.0), 1e-12));
    ck.push_back(rel_check(tag + "mu_v(e1e1*, 1, e1) = 1", mu_v(t), 1.0, 1e-12));
  }
  for (double eps : {0.5, 0.1, 0.01}) {
    const EigenTriple t = triple(mat2(1, 0, 0, 1 - eps), 1.0, e1);
    const double expect = std::sqrt(1 + (1 - eps) * (1 - eps)) / eps;
    ck.push_back(rel_check("(c) eps=" + fmt(eps) + " mu_v = sqrt(1+(1-eps)^2)/eps", mu_v(t), expect, 1e-12));
  }
  for (double eps : {0.25, 0.04}) {
    const double s = std::sqrt(eps);
    Vector v(2);
    v << s, 1.0;
    const EigenTriple t = triple(mat2(1, eps, 1, 1), 1 + s, v);
    ck.push_back(rel_check("(d) eps=" + fmt(eps) + " mu_v = sqrt(3+eps^2)/(2 sqrt eps)", mu_v(t),
                           std::sqrt(3 + eps * eps) / (2 * s), 1e-10));
    ck.push_back(rel_check("(d) eps=" + fmt(eps) + " mu_lambda = sqrt(1+6eps+eps^2)/(4 sqrt eps)",
                           mu_lambda(t), std::sqrt(1 + 6 * eps + eps * eps) / (4 * s), 1e-10));
  }
  for (double eps : {0.1, 0.01}) {
    const EigenTriple t = triple(mat2(1, 1 / eps, 0, 2), 1.0, e1);
    const double floor = 1 / (2 * eps);
    ck.push_back({"(e) eps=" + fmt(eps) + " mu_lambda > 1/(2 eps)", mu_lambda(t) > floor, mu_lambda(t), ">", floor});
    ck.push_back({"(e) eps=" + fmt(eps) + " mu_v > 1/(2 eps)", mu_v(t) > floor, mu_v(t), ">", floor});
  }
  return cr;
}

// ---------------------------------------------------------------- 2

inline Criterion roots_of_unity_constant() {
  Criterion cr{2, "roots-of-unity condition constant sqrt(n)/(2 sin(pi/n))", {}};
  for (Eigen::Index n = 2; n <= 10; ++n) {
    const double f = roots_of_unity_mu(n);
    double e_v = 0.0;
    double e_mu = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const EigenTriple t = starting_roots_of_unity(n, j);
      e_v = std::max(e_v, rel_err(mu_v(t), f));
      e_mu = std::max(e_mu, rel_err(mu(t), std::max(1.0, f)));
    }
    cr.checks.push_back(worst("n=" + std::to_string(n) + " mu_v over all j, rel_err", e_v, 1e-12));
    cr.checks.push_back(worst("n=" + std::to_string(n) + " mu = max(1, constant), rel_err", e_mu, 1e-12));
  }
  return cr;
}

// ---------------------------------------------------------------- 3

inline Criterion normal_matrices(const Options& o) {
  Criterion cr{3, "normal matrices: mu_v = |A|_F / min gap, mu_lambda <= sqrt2", {}};
  Rng rng = o.rng(3);
  const std::size_t m = o.count(200);
  double worst_rel = 0.0;
  std::size_t bad_lambda = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.index(7));
    const auto [a, d] = random_normal_matrix(rng, n);
    const Eigen::Index j = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n)));
    Eigen::ComplexEigenSolver<Matrix> es(a);
    Eigen::Index pick = 0;
    for (Eigen::Index k = 1; k < n; ++k)
      if (std::abs(es.eigenvalues()(k) - d(j)) < std::abs(es.eigenvalues()(pick) - d(j))) pick = k;
    const EigenTriple t{a, d(j), es.eigenvectors().col(pick)};
    double gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < n; ++k)
      if (k != j) gap = std::min(gap, std::abs(d(k) - d(j)));
    worst_rel = std::max(worst_rel, rel_err(mu_v(t), a.norm() / gap));
    if (!(mu_lambda(t) <= std::sqrt(2.0) * (1 + 1e-10))) ++bad_lambda;
  }
  cr.checks.push_back(worst("mu_v vs |A|_F / min gap, worst rel_err over " + std::to_string(m), worst_rel, 1e-10));
  cr.checks.push_back(violations("mu_lambda <= sqrt2", bad_lambda, m));
  return cr;
}

// ---------------------------------------------------------------- 4

inline Criterion operator_sandwich(const Options& o) {
  Criterion cr{4, "mu <= |(DF restricted)^-1| <= 2 mu", {}};
  Rng rng = o.rng(4);
  const std::size_t m = o.count(200);
  std::size_t bad_lo = 0;
  std::size_t bad_hi = 0;
  double worst_lo = 0.0;
  double worst_hi = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.index(7));
    const EigenTriple t = random_well_posed_triple(rng, n);
    const double mm = mu(t);
    const double inv = restricted_derivative_inverse_norm(t);
    worst_lo = std::max(worst_lo, mm / inv);
    worst_hi = std::max(worst_hi, inv / (2 * mm));
    if (!(mm <= inv * (1 + 1e-10))) ++bad_lo;
    if (!(inv <= 2 * mm * (1 + 1e-10))) ++bad_hi;
  }
  cr.checks.push_back(violations("mu <= |DF^-1| (worst mu/|DF^-1| = " + fmt(worst_lo) + ")", bad_lo, m));
  cr.checks.push_back(violations("|DF^-1| <= 2 mu (worst |DF^-1|/(2mu) = " + fmt(worst_hi) + ")", bad_hi, m));
  return cr;
}

// ---------------------------------------------------------------- 5

/// sigma_min of Pi_{v perp}(lambda I - A) restricted to v perp, from a QR-built basis.
inline double sigma_min_projected_qr(const EigenTriple& t) {
  const Eigen::Index n = t.n();
  Matrix m(n, n);
  m.col(0) = t.v;
  m.rightCols(n - 1) = Matrix::Identity(n, n).leftCols(n - 1);
  Eigen::HouseholderQR<Matrix> qr(m);
  const Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix b = q.rightCols(n - 1);
  return smallest_singular_value(b.adjoint() * shifted(t.A, t.lambda) * b);
}

inline Criterion distance_identity(const Options& o) {
  Criterion cr{5, "mu_v * sigma_min = |A|_F and the nearest ill-posed candidate", {}};
  Rng rng = o.rng(5);
  const std::size_t m = o.count(200);
  double worst_rel = 0.0;
  std::size_t bad_candidate = 0;
  std::size_t bad_sin = 0;
  double worst_sin_margin = -1.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.index(7));
    EigenTriple t = random_well_posed_triple(rng, n);
    // Random representative so the identity is checked off the normalized slice.
    const double scale = std::exp(rng.uniform(-2.0, 2.0));
    t.A *= scale;
    t.lambda *= scale;
    t.v *= rng.phase() * std::exp(rng.uniform(-1.0, 1.0));
    worst_rel = std::max(worst_rel, rel_err(mu_v(t) * sigma_min_projected_qr(t), t.A.norm()));

    const EigenTriple c = nearest_illposed_candidate(t);
    const double res = (shifted(c.A, c.lambda) * c.v).norm() / (c.A.norm() * c.v.norm());
    const double smin = sigma_min_projected(c) / c.A.norm();
    if (is_well_posed(c) || smin > 1e-10 || res > 1e-10) ++bad_candidate;
    const double lhs = std::sin(dist_p2(t, c));
    const double rhs = 1.0 / (std::sqrt(1.0 + lambda_ratio(t)) * mu_v(t));
    worst_sin_margin = std::max(worst_sin_margin, lhs - rhs);
    if (!(lhs <= rhs + 1e-8)) ++bad_sin;
  }
  cr.checks.push_back(worst("mu_v * sigma_min vs |A|_F, worst rel_err over " + std::to_string(m), worst_rel, 1e-10));
  cr.checks.push_back(violations("candidate is ill-posed and lies on the variety", bad_candidate, m));
  cr.checks.push_back(violations("sin(d_P2(t, candidate)) <= (1+|l|^2/|A|^2)^-1/2 / mu_v + 1e-8 (worst lhs-rhs = " +
                                     fmt(worst_sin_margin) + ")",
                                 bad_sin, m));
  return cr;
}

// ---------------------------------------------------------------- 6

/// Newton to convergence on a fixed matrix; returns the final point.
inline NewtonPoint converge(const Matrix& a, cplx lambda, const Vector& v, int steps = 8) {
  NewtonPoint p{lambda, v};
  for (int k = 0; k < steps; ++k) p = renormalized(newton_step(a, p.lambda, p.v));
  return p;
}

/// Well-posed neighbour of t at d_P2 distance at most `radius`, obtained by moving A and correcting.
inline EigenTriple perturbed_neighbour(Rng& rng, const EigenTriple& t, double radius) {
  const Eigen::Index n = t.n();
  Matrix e = project_orthogonal(rng.matrix(n), t.A);
  e /= e.norm();
  double delta = radius * rng.uniform(0.5, 1.0);
  for (;;) {
    try {
      const Matrix a2 = t.A + delta * e;
      const NewtonPoint p = converge(a2, t.lambda, t.v);
      const EigenTriple t2 = normalize(EigenTriple{a2, p.lambda, p.v});
      if (t2.on_variety(1e-12) && is_well_posed(t2) && dist_p2(t, t2) <= radius) return t2;
    } catch (const Error&) {
    }
    delta *= 0.7;
  }
}

inline Criterion sensitivity(const Options& o) {
  Criterion cr{6, "sensitivity: mu/(1+eps) <= mu' <= (1+eps) mu within 0.5 C_eps/mu", {}};
  Rng rng = o.rng(6);
  const std::size_t m = o.count(200);
  for (double eps : {0.1, constants::epsilon, 0.5}) {
    const double ce = sensitivity_constant(eps);
    std::size_t bad = 0;
    double worst_ratio = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.index(7));
      const EigenTriple t = random_well_posed_triple(rng, n);
      const double mt = mu(t);
      const EigenTriple t2 = perturbed_neighbour(rng, t, 0.5 * ce / mt);
      const double m2 = mu(t2);
      worst_ratio = std::max({worst_ratio, m2 / mt, mt / m2});
      if (!(mt / (1 + eps) <= m2 && m2 <= (1 + eps) * mt)) ++bad;
    }
    cr.checks.push_back(violations("eps=" + fmt(eps) + " two-sided bound (worst ratio " + fmt(worst_ratio) + ")", bad, m));
  }
  return cr;
}

// ---------------------------------------------------------------- 7, 8

struct GammaTrial {
  EigenTriple target;
  NewtonPoint start;
  double mu;
};

/// The suite-7 sample: `triples` random complex triples with 4 starts each at 0.9 c0 / mu.
template <class Sampler>
inline std::vector<GammaTrial> gamma_trials(Rng& rng, std::size_t triples, double c0, Sampler sample) {
  std::vector<GammaTrial> out;
  for (std::size_t i = 0; i < triples; ++i) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng.index(7));
    const EigenTriple t = random_well_posed_triple(rng, n);
    const double m = mu(t);
    for (int s = 0; s < 4; ++s) out.push_back({t, sample(rng, t, 0.9 * c0 / m), m});
  }
  return out;
}

inline Criterion gamma_theorem(const Options& o) {
  Criterion cr{7, "approximate-solution radius: 100% certification with k_check = 4", {}};
  const std::size_t m = o.count(500);
  {
    Rng rng = o.rng(7);
    const auto trials = gamma_trials(rng, m, constants::c0,
                                     [](Rng& r, const EigenTriple& t, double d) { return sample_start(r, t, d); });
    std::size_t bad = 0;
    for (const auto& tr : trials)
      if (!certify_approximate_solution(tr.target.A, tr.start.lambda, tr.start.v, tr.target, 4)) ++bad;
    cr.checks.push_back(violations("projective radius 0.9*0.0739/mu, d_P2 halving", bad, trials.size()));
  }
  {
    Rng rng = o.rng(70);
    const auto trials = gamma_trials(rng, m, constants::c0_affine, [](Rng& r, const EigenTriple& t, double d) {
      return sample_start_affine(r, t, d);
    });
    std::size_t bad = 0;
    for (const auto& tr : trials)
      if (!certify_affine(tr.target.A, tr.start.lambda, tr.start.v, tr.target, 4)) ++bad;
    cr.checks.push_back(violations("affine radius 0.9*0.288/mu, affine distance halving", bad, trials.size()));
  }
  return cr;
}

inline Criterion quadratic_convergence(const Options& o) {
  Criterion cr{8, "quadratic regime: d_{k+1} / d_k^2 <= 4 mu once d_k <= c0/mu", {}};
  Rng rng = o.rng(7);
  const auto trials = gamma_trials(rng, o.count(500), constants::c0,
                                   [](Rng& r, const EigenTriple& t, double d) { return sample_start(r, t, d); });
  // Below this distance d_{k+1} sits at the rounding floor and the ratio is not informative.
  constexpr double kFloor = 1e-6;
  std::size_t bad = 0;
  std::size_t pairs = 0;
  double worst_ratio = 0.0;
  for (const auto& tr : trials) {
    const NewtonTrace trace = newton_iterate(tr.target.A, tr.start.lambda, tr.start.v, 6, tr.target);
    const auto& d = trace.distances_to_target;
    for (std::size_t k = 0; k + 1 < d.size(); ++k) {
      if (!(d[k] <= constants::c0 / tr.mu) || d[k] < kFloor) continue;
      ++pairs;
      const double r = d[k + 1] / (d[k] * d[k]) / tr.mu;
      worst_ratio = std::max(worst_ratio, r);
      if (!(r <= 4.0)) ++bad;
    }
  }
  cr.checks.push_back(violations("d_{k+1}/(mu d_k^2) <= 4 (worst " + fmt(worst_ratio) + ")", bad, pairs));
  return cr;
}

// ---------------------------------------------------------------- 9

struct HomotopySample {
  MatrixPath path;
  EigenTriple start;
};

inline HomotopySample random_homotopy(Rng& rng, Eigen::Index n) {
  const Eigen::Index j = static_cast<Eigen::Index>(rng.index(static_cast<std::size_t>(n)));
  const EigenTriple s = starting_roots_of_unity(n, j);
  return {MatrixPath::linear(s.A, rng.matrix(n)), s};
}

inline Criterion main_theorem(const Options& o, std::function<void(std::size_t, const TrackerRun&)> on_run = {}) {
  Criterion cr{9, "tracked homotopies: every step certified, K <= 100 ell_mu + 1", {}};
  Rng rng = o.rng(9);
  const std::size_t m = o.count(50);
  const Eigen::Index sizes[] = {4, 6, 8};
  const TrackerConfig cfg;
  std::size_t bad_cert = 0;
  std::size_t bad_bound = 0;
  std::size_t bad_sharp = 0;
  std::size_t resampled = 0;
  double worst_k_ratio = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Index n = sizes[i % 3];
    for (;;) {
      const HomotopySample h = random_homotopy(rng, n);
      TrackerRun run;
      try {
        run = track(h.path, h.start, cfg);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PathLeavesW) throw;
        ++resampled;  // reference lift left the well-posed set
        continue;
      }
      if (!run.all_certified()) ++bad_cert;
      if (!run.bound_satisfied) ++bad_bound;
      if (!(static_cast<double>(run.K) <= run.sharp_bound())) ++bad_sharp;
      worst_k_ratio = std::max(worst_k_ratio, (static_cast<double>(run.K) - 1.0) / run.ell_mu);
      if (on_run) on_run(i, run);
      break;
    }
  }
  cr.checks.push_back(violations("every mesh point certified", bad_cert, m));
  cr.checks.push_back(violations("K <= 100 ell_mu + 1 (worst (K-1)/ell_mu = " + fmt(worst_k_ratio) + ")", bad_bound, m));
  cr.checks.push_back(violations("K <= (1+eps)/C_eps ell_mu + 1", bad_sharp, m));
  cr.checks.push_back({"homotopies redrawn because the lift left the well-posed set", true,
                       static_cast<double>(resampled), "count", 0.0});
  return cr;
}

// ---------------------------------------------------------------- 10

/// Random real triple with a real eigenvalue.
inline EigenTriple random_real_triple(Rng& rng, Eigen::Index n) {
  for (;;) {
    const Matrix a = rng.matrix(n, Field::Real);
    Eigen::EigenSolver<RealMatrix> es(a.real());
    std::vector<Eigen::Index> real_idx;
    for (Eigen::Index k = 0; k < n; ++k)
      if (es.eigenvalues()(k).imag() == 0.0) real_idx.push_back(k);
    if (real_idx.empty()) continue;
    const Eigen::Index k = real_idx[rng.index(real_idx.size())];
    const RealVector v = es.eigenvectors().col(k).real();
    EigenTriple t{a, es.eigenvalues()(k).real(), v.cast<cplx>(), Field::Real};
    t = normalize(t);
    if (is_well_posed(t)) return t;
  }
}

inline Criterion invariance(const Options& o) {
  Criterion cr{10, "invariance and auxiliary inequalities", {}};
  Rng rng = o.rng(10);
  const std::size_t m = o.count(200);
  auto n_rand = [&] { return 2 + static_cast<Eigen::Index>(rng.index(7)); };

  {  // unitary invariance of condition numbers and d_P2
    std::size_t bad_mu = 0;
    std::size_t bad_d = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Eigen::Index n = n_rand();
      const EigenTriple t = random_well_posed_triple(rng, n);
      const Matrix u = random_unitary(rng, n);
      const EigenTriple ut = act(u, t);
      if (rel_err(mu_lambda(ut), mu_lambda(t)) > 1e-10 || rel_err(mu_v(ut), mu_v(t)) > 1e-10 ||
          rel_err(mu(ut), mu(t)) > 1e-10)
        ++bad_mu;
      EigenTriple s = t;
      s.A += 0.3 * rng.matrix(n);
      s.lambda += 0.3 * rng.scalar();
      s.v += 0.3 * rng.vector(n);
      if (std::abs(dist_p2(act(u, t), act(u, s)) - dist_p2(t, s)) > 1e-10) ++bad_d;
    }
    cr.checks.push_back(violations("unitary invariance of mu_lambda, mu_v, mu", bad_mu, m));
    cr.checks.push_back(violations("unitary invariance of d_P2", bad_d, m));
  }
  {  // Newton scaling equivariance
    std::size_t bad = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Eigen::Index n = n_rand();
      const EigenTriple t = random_well_posed_triple(rng, n);
      const NewtonPoint p0 = sample_start(rng, t, 0.5 * gamma_radius(t));
      const cplx alpha = rng.scalar() + 0.1;
      const cplx beta = rng.scalar() + 0.1;
      const NewtonPoint p = newton_step(t.A, p0.lambda, p0.v);
      const NewtonPoint q = newton_step(alpha * t.A, alpha * p0.lambda, beta * p0.v);
      const double el = std::abs(q.lambda - alpha * p.lambda) / std::abs(alpha * p.lambda);
      const double ev = (q.v - beta * p.v).norm() / (beta * p.v).norm();
      if (el > 1e-10 || ev > 1e-10) ++bad;
    }
    cr.checks.push_back(violations("N_{aA}(a l, b v) = (a l', b v')", bad, m));
  }
  {  // orientation function: SO(n) invariance and homogeneity
    std::size_t bad_inv = 0;
    std::size_t bad_scale = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Eigen::Index n = n_rand();
      const EigenTriple t = random_real_triple(rng, n);
      const double d = orientation_function(t.A, t.lambda, t.v);
      const Matrix u = random_special_orthogonal(rng, n);
      const EigenTriple ut = act(u, t);
      const double du = orientation_function(ut.A.real().cast<cplx>(), ut.lambda, ut.v.real().cast<cplx>());
      const double scale = std::pow(std::abs(t.lambda) + 1.0, static_cast<double>(n - 1));
      if (std::abs(du - d) > 1e-10 * scale) ++bad_inv;
      double a = rng.uniform(0.2, 3.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
      const double b = rng.uniform(0.2, 3.0) * (rng.uniform() < 0.5 ? -1.0 : 1.0);
      const double ds = orientation_function(a * t.A, a * t.lambda, b * t.v);
      const double expect = std::pow(a, static_cast<double>(n - 1)) * d;
      if (std::abs(ds - expect) > 1e-10 * std::pow(std::abs(a), static_cast<double>(n - 1)) * scale) ++bad_scale;
    }
    cr.checks.push_back(violations("D(UAU^-1, l, Uv) = D(A, l, v) for U in SO(n)", bad_inv, m));
    cr.checks.push_back(violations("D(aA, a l, b v) = a^(n-1) D(A, l, v)", bad_scale, m));
  }
  {  // projection inverse norm identity
    std::size_t bad = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Eigen::Index n = n_rand();
      const Vector v = rng.unit_vector(n);
      const Vector w = rotate_towards_random(rng, v, rng.uniform(0.0, 1.5)) * rng.phase();
      const double lhs = projection_inverse_norm(v, w);
      const double rhs = 1.0 / std::cos(dist_p(v, w));
      if (rel_err(lhs, rhs) > 1e-10) ++bad;
    }
    cr.checks.push_back(violations("|(Pi_{v perp} restricted to w perp)^-1| = 1/cos d_P(v, w)", bad, m));
  }
  {  // second-derivative bound
    std::size_t bad = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Eigen::Index n = n_rand();
      const Vector v = rng.unit_vector(n);
      const cplx l1 = rng.scalar();
      const cplx l2 = rng.scalar();
      const Vector x = random_orthogonal_unit(rng, v) * std::abs(rng.scalar());
      const Vector y = random_orthogonal_unit(rng, v) * std::abs(rng.scalar());
      const double lhs = second_derivative(l1, x, l2, y).norm();
      const double rhs = std::sqrt(std::norm(l1) + x.squaredNorm()) * std::sqrt(std::norm(l2) + y.squaredNorm());
      if (!(lhs <= rhs * (1 + 1e-12))) ++bad;
    }
    cr.checks.push_back(violations("|D^2F(l, x)(m, y)| <= |(l, x)| |(m, y)|", bad, m));
  }
  {  // two-sided distance comparisons for a fixed normalized matrix
    std::size_t bad1 = 0;
    std::size_t bad2 = 0;
    std::size_t bad_ratio = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Eigen::Index n = n_rand();
      const EigenTriple t = random_well_posed_triple(rng, n);
      // part (1)
      const double c = rng.uniform(0.01, std::sqrt(2.0) - 0.01);
      const cplx l1 = t.lambda + c * rng.uniform() * rng.phase();
      const Vector v1 = rotate_towards_random(rng, t.v, rng.uniform(0.0, 1.0));
      const EigenTriple s1{t.A, l1, v1};
      const double aff1 = dist_affine(t.lambda, t.v, l1, v1);
      if (!(dist_p2(t, s1) <= beta_c(c) * aff1 * (1 + 1e-12))) ++bad1;
      // part (2)
      const double theta = rng.uniform(0.01, std::numbers::pi / 4 - 0.01);
      EigenTriple s2;
      for (;;) {
        const double d = theta * rng.uniform(0.0, 1.0);
        const NewtonPoint p = sample_start(rng, t, d);
        s2 = EigenTriple{t.A, p.lambda, p.v};
        if (dist_p2(t, s2) < theta) break;
      }
      const double lhs = std::hypot(std::abs(s2.lambda - t.lambda), dist_t(s2.v, t.v));
      if (!(lhs <= r_theta(theta) * dist_p2(t, s2) * (1 + 1e-12) + 1e-15)) ++bad2;
      // d_P <= d_T <= tan(theta)/theta d_P for d_P <= theta < pi/2
      const double th = rng.uniform(0.01, std::numbers::pi / 2 - 0.01);
      const Vector w = rotate_towards_random(rng, t.v, th * rng.uniform());
      const double dp = dist_p(t.v, w);
      const double dt = dist_t(t.v, w);
      if (!(dp <= dt * (1 + 1e-12) && dt <= dist_ratio_bound(th) * dp * (1 + 1e-12) + 1e-15)) ++bad_ratio;
    }
    cr.checks.push_back(violations("d_P2 <= beta_c (|dl|^2 + d_P(v,v')^2)^1/2", bad1, m));
    cr.checks.push_back(violations("(|dl|^2 + d_T(v,v')^2)^1/2 <= R_theta d_P2", bad2, m));
    cr.checks.push_back(violations("d_P <= d_T <= tan(theta)/theta d_P", bad_ratio, m));
  }
  {  // perturbation bound on mu_v inside radius 1/(alpha mu_v)
    std::size_t bad = 0;
    std::size_t evaluated = 0;
    while (evaluated < m) {
      const Eigen::Index n = n_rand();
      const EigenTriple t = random_well_posed_triple(rng, n);
      const EigenTriple t2 = perturbed_neighbour(rng, t, 0.9 / (constants::alpha * mu_v(t)));
      if (!(dist_t2(t, t2) < 1.0 / (constants::alpha * mu_v(t)))) continue;
      ++evaluated;
      if (!(mu_v(t2) <= wedin_mu_v_bound(t, t2) * (1 + 1e-12))) ++bad;
    }
    cr.checks.push_back(violations("mu_v' <= (1+sqrt2 d_T2) mu_v / (1 - alpha mu_v d_T2)", bad, evaluated));
  }
  return cr;
}

// ---------------------------------------------------------------- 11

inline Criterion root_count(const Options& o) {
  Criterion cr{11, "generic complex matrices have n well-posed eigentriples", {}};
  Rng rng = o.rng(11);
  const std::size_t m = o.count(100);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.index(6));
    const auto ts = dense_eigentriples(rng.matrix(n));
    std::size_t good = 0;
    for (std::size_t a = 0; a < ts.size(); ++a) {
      bool distinct = true;
      for (std::size_t b = 0; b < a; ++b)
        if (dist_p2(ts[a], ts[b]) < 1e-8) distinct = false;
      if (distinct && ts[a].on_variety() && is_well_posed(ts[a])) ++good;
    }
    if (good != static_cast<std::size_t>(n)) ++bad;
  }
  cr.checks.push_back(violations("exactly n distinct well-posed triples", bad, m));
  return cr;
}

// ---------------------------------------------------------------- constants

inline Criterion constants_suite() {
  Criterion cr{0, "published constants re-derived", {}};
  auto& ck = cr.checks;
  const double ce = sensitivity_constant(constants::epsilon);
  ck.push_back({"alpha = (1+sqrt5) 2 sqrt2", std::abs(constants::alpha - 9.15298) < 1e-5, constants::alpha, "~", 9.15298});
  ck.push_back({"C_eps at eps=0.1640 ~ 0.01167", std::abs(ce - 0.01167) < 5e-6, ce, "~", 0.01167});
  const double ratio = (1 + constants::epsilon) / ce;
  ck.push_back({"(1+eps)/C_eps <= C = 100", ratio <= constants::C, ratio, "<=", constants::C});
  const double th0 = theta0();
  // The published value is truncated to four decimals.
  const double th0_trunc = std::floor(th0 * 1e4) / 1e4;
  ck.push_back({"theta0 solving R_theta theta = 1/(2 sqrt2), truncated to 4 places", th0_trunc == 0.1389, th0, "~", 0.1389});
  const double c = constants::c0_affine;
  const double pre = 2 * std::tan(c) / (1 - std::sqrt(2.0) * c);
  ck.push_back({"affine c0=0.288: 2 tan(c)/(1 - sqrt2 c) <= 1", pre <= 1.0, pre, "<=", 1.0});
  ck.push_back({"affine c0=0.288 <= 1/(2 sqrt2)", c <= 1 / (2 * std::sqrt(2.0)), c, "<=", 1 / (2 * std::sqrt(2.0))});
  const double c0 = constants::c0;
  const double rc = r_theta(c0);
  const double cr_ = c0 * rc;
  const double chain = rc * beta_c(cr_) * 2 * std::tan(cr_) / (1 - std::sqrt(2.0) * cr_);
  ck.push_back({"c0=0.0739 <= theta0", c0 <= th0, c0, "<=", th0});
  ck.push_back({"c0=0.0739: R_c beta_{cR_c} 2tan(cR_c)/(1-sqrt2 cR_c) <= 1", chain <= 1.0, chain, "<=", 1.0});
  return cr;
}

// ---------------------------------------------------------------- suites

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"constants", "examples", "condition", "gamma",
                                                 "main-theorem", "appendix", "root-count"};
  return names;
}

inline std::vector<Criterion> run_suite(const std::string& suite, const Options& o) {
  std::vector<Criterion> out;
  if (suite == "constants" || suite == "all") out.push_back(constants_suite());
  if (suite == "examples" || suite == "all") {
    out.push_back(worked_examples());
    out.push_back(roots_of_unity_constant());
  }
  if (suite == "condition" || suite == "all") {
    out.push_back(normal_matrices(o));
    out.push_back(operator_sandwich(o));
    out.push_back(distance_identity(o));
    out.push_back(sensitivity(o));
  }
  if (suite == "gamma" || suite == "all") {
    out.push_back(gamma_theorem(o));
    out.push_back(quadratic_convergence(o));
  }
  if (suite == "main-theorem" || suite == "all") out.push_back(main_theorem(o));
  if (suite == "appendix" || suite == "all") out.push_back(invariance(o));
  if (suite == "root-count" || suite == "all") out.push_back(root_count(o));
  if (out.empty()) throw Error(ErrorCode::Parse, "unknown suite \"" + suite + "\"");
  return out;
}

inline Criterion run_criterion(int id, const Options& o) {
  switch (id) {
    case 1: return worked_examples();
    case 2: return roots_of_unity_constant();
    case 3: return normal_matrices(o);
    case 4: return operator_sandwich(o);
    case 5: return distance_identity(o);
    case 6: return sensitivity(o);
    case 7: return gamma_theorem(o);
    case 8: return quadratic_convergence(o);
    case 9: return main_theorem(o);
    case 10: return invariance(o);
    case 11: return root_count(o);
    default: throw Error(ErrorCode::OutOfRange, "criterion id outside 1..11");
  }
}

inline std::string describe(const Check& c) {
  std::ostringstream os;
  os.precision(6);
  os << (c.passed ? "ok   " : "FAIL ") << c.name << ": " << c.measured << ' ' << c.relation << ' ' << c.bound;
  return os.str();
}

}  // namespace eigenpath::verify
