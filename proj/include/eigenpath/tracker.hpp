#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "eigenpath/newton.hpp"
#include "eigenpath/path.hpp"

namespace eigenpath {

struct TrackerConfig {
  double epsilon = constants::epsilon;
  double c_eps = sensitivity_constant(constants::epsilon);
  std::size_t grid = 64;           // initial lift grid (intervals)
  double quadrature_tol = 1e-6;    // relative change that stops refinement
  std::size_t max_grid = 1u << 16;
  std::size_t k_check = 4;
  double gap_tol = 1e-8;

  /// Sets epsilon and the matching C_eps.
  TrackerConfig& with_epsilon(double eps) {
    epsilon = eps;
    c_eps = sensitivity_constant(eps);
    return *this;
  }
};

/// Gap between lambda and the rest of the spectrum of A, relative to |A|_F.
inline double relative_gap(const Vector& eigenvalues, Eigen::Index j, double norm_a) {
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k)
    if (k != j) gap = std::min(gap, std::abs(eigenvalues(k) - eigenvalues(j)));
  return gap / norm_a;
}

/// Eigentriple of A continuing (lambda_prev, v_prev): best eigenvector overlap, then nearest lambda.
inline EigenTriple continue_triple(const Matrix& a, cplx lambda_prev, const Vector& v_prev,
                                   Field field, double gap_tol) {
  Eigen::ComplexEigenSolver<Matrix> es(a);
  const Vector vp = v_prev / v_prev.norm();
  const Eigen::Index n = a.rows();
  std::vector<double> score(n);
  double best = -1.0;
  for (Eigen::Index j = 0; j < n; ++j) {
    const Vector vj = es.eigenvectors().col(j);
    score[j] = std::abs(inner(vj / vj.norm(), vp));
    best = std::max(best, score[j]);
  }
  Eigen::Index pick = -1;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (score[j] < best - 1e-8) continue;
    if (pick < 0 ||
        std::abs(es.eigenvalues()(j) - lambda_prev) < std::abs(es.eigenvalues()(pick) - lambda_prev))
      pick = j;
  }
  const double na = a.norm();
  if (relative_gap(es.eigenvalues(), pick, na) < gap_tol)
    throw Error(ErrorCode::PathLeavesW, "continued eigenvalue collides with another");
  EigenTriple t{a, es.eigenvalues()(pick), es.eigenvectors().col(pick), field};
  if (field == Field::Real) {
    if (std::abs(t.lambda.imag()) > 1e-10 * na)
      throw Error(ErrorCode::PathLeavesW, "real eigenvalue left the real line");
    t.lambda = t.lambda.real();
    t.v = t.v / t.v.norm();
    const Vector w = phase_normalized(t.v);
    t.v = w.real().cast<cplx>();
  }
  // Newton polish; keep only improvements.
  for (int k = 0; k < 2; ++k) {
    try {
      const auto p = renormalized(newton_step(a, t.lambda, t.v));
      EigenTriple c{a, p.lambda, p.v, field};
      if (c.residual() < t.residual()) t = c;
    } catch (const Error&) {
      throw Error(ErrorCode::PathLeavesW, "continued eigenvalue is not simple");
    }
  }
  t = normalize(t);
  if (!is_well_posed(t)) throw Error(ErrorCode::PathLeavesW, "continued triple is ill-posed");
  return t;
}

/// Speed of the lifted path in the unitarily invariant metric for a matrix velocity Adot.
inline double path_speed(const EigenTriple& t, const Matrix& adot_tangent) {
  const Matrix b = project_orthogonal(adot_tangent, t.A);
  if (b.norm() == 0.0) return 0.0;
  const ConditionTangent ct = condition_operator(t, b);
  const double pair = (ct.Adot.squaredNorm() + std::norm(ct.lambdadot)) /
                      (t.A.squaredNorm() + std::norm(t.lambda));
  const double vel = ct.vdot.squaredNorm() / t.v.squaredNorm();
  return std::sqrt(pair + vel);
}

/// Dense reference lift of a matrix path through a chosen starting eigentriple.
struct LiftedPath {
  MatrixPath path;
  std::vector<double> ts;
  std::vector<EigenTriple> triples;
  std::vector<double> mus;
  std::vector<double> speeds;
  double gap_tol = 1e-8;

  std::size_t size() const { return ts.size(); }

  /// Continued triple at an arbitrary t, matched from the grid sample to its left.
  EigenTriple sample_at(double t) const {
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    std::size_t i = static_cast<std::size_t>(it - ts.begin());
    i = i == 0 ? 0 : i - 1;
    if (ts[i] == t) return triples[i];
    const auto& p = triples[i];
    return continue_triple(path.at(t), p.lambda, p.v, p.field, gap_tol);
  }
};

inline void fill_integrand(LiftedPath& lp) {
  lp.mus.resize(lp.size());
  lp.speeds.resize(lp.size());
  for (std::size_t i = 0; i < lp.size(); ++i) {
    lp.mus[i] = mu(lp.triples[i]);
    lp.speeds[i] = path_speed(lp.triples[i], lp.path.derivative(lp.ts[i]));
  }
}

inline bool continuity_holds(const LiftedPath& lp) {
  for (std::size_t i = 1; i < lp.size(); ++i)
    if (!(dist_p2(lp.triples[i - 1], lp.triples[i]) < std::numbers::pi / 8)) return false;
  return true;
}

inline LiftedPath lift_path(const MatrixPath& path, const EigenTriple& start, std::size_t grid,
                            double gap_tol = 1e-8, std::size_t max_grid = 1u << 16) {
  if (start.n() != path.n()) throw Error(ErrorCode::DimensionMismatch, "start vs path");
  const EigenTriple s = normalize(start);
  const Matrix a0 = path.at(0.0);
  if (dist_p(s.A, a0) > 1e-10 || !s.on_variety())
    throw Error(ErrorCode::OutOfRange, "start triple does not lie over A(0)");
  grid = std::max<std::size_t>(grid, 1);
  for (; grid <= max_grid; grid *= 2) {
    LiftedPath lp{path, {}, {}, {}, {}, gap_tol};
    cplx lam = s.lambda;
    Vector v = s.v;
    for (std::size_t i = 0; i <= grid; ++i) {
      const double t = static_cast<double>(i) / static_cast<double>(grid);
      EigenTriple tr = continue_triple(path.at(t), lam, v, s.field, gap_tol);
      lam = tr.lambda;
      v = tr.v;
      lp.ts.push_back(t);
      lp.triples.push_back(std::move(tr));
    }
    if (continuity_holds(lp)) {
      fill_integrand(lp);
      return lp;
    }
  }
  throw Error(ErrorCode::PathLeavesW, "lift did not resolve within the grid limit");
}

/// Inserts the midpoint of every grid interval.
inline LiftedPath densify(const LiftedPath& lp) {
  LiftedPath out{lp.path, {}, {}, {}, {}, lp.gap_tol};
  for (std::size_t i = 0; i < lp.size(); ++i) {
    out.ts.push_back(lp.ts[i]);
    out.triples.push_back(lp.triples[i]);
    out.mus.push_back(lp.mus[i]);
    out.speeds.push_back(lp.speeds[i]);
    if (i + 1 == lp.size()) break;
    const double t = 0.5 * (lp.ts[i] + lp.ts[i + 1]);
    const auto& p = lp.triples[i];
    EigenTriple m = continue_triple(lp.path.at(t), p.lambda, p.v, p.field, lp.gap_tol);
    out.mus.push_back(mu(m));
    out.speeds.push_back(path_speed(m, lp.path.derivative(t)));
    out.ts.push_back(t);
    out.triples.push_back(std::move(m));
  }
  return out;
}

/// Composite Simpson on a uniform grid with an even number of intervals; trapezoid otherwise.
inline double simpson(const std::vector<double>& ts, const std::vector<double>& f) {
  const std::size_t m = ts.size() - 1;
  if (m == 0) return 0.0;
  const double h = (ts.back() - ts.front()) / static_cast<double>(m);
  if (m % 2 == 1) {
    double s = 0.0;
    for (std::size_t i = 0; i < m; ++i) s += 0.5 * h * (f[i] + f[i + 1]);
    return s;
  }
  double s = f.front() + f.back();
  for (std::size_t i = 1; i < m; ++i) s += (i % 2 ? 4.0 : 2.0) * f[i];
  return s * h / 3.0;
}

inline double condition_integral(const LiftedPath& lp) {
  std::vector<double> f(lp.size());
  for (std::size_t i = 0; i < lp.size(); ++i) f[i] = lp.speeds[i] * lp.mus[i];
  return simpson(lp.ts, f);
}

struct RefinedLength {
  LiftedPath lifted;
  double ell_mu;
  bool converged;
};

/// Doubles the grid until successive Simpson estimates of the condition length agree.
inline RefinedLength refine_condition_length(const LiftedPath& lp, double tol = 1e-6,
                                             std::size_t max_grid = 1u << 16) {
  LiftedPath cur = lp;
  if (cur.size() % 2 == 0) cur = densify(cur);  // odd node count keeps Simpson usable
  double prev = condition_integral(cur);
  for (;;) {
    if (cur.size() - 1 >= max_grid) return {std::move(cur), prev, false};
    LiftedPath next = densify(cur);
    const double est = condition_integral(next);
    const double scale = std::max(std::abs(est), 1e-300);
    if (std::abs(est - prev) <= tol * scale || (est == 0.0 && prev == 0.0))
      return {std::move(next), est, true};
    prev = est;
    cur = std::move(next);
  }
}

inline double condition_length(const LiftedPath& lp, double tol = 1e-6) {
  return refine_condition_length(lp, tol).ell_mu;
}

/// Cumulative arc length S(t), cubic Hermite between grid nodes with S' = speed.
/// Node values use the four-point rule h/24 (-f0 + 13 f1 + 13 f2 - f3) on the uniform grid,
/// and the one-sided cubic rule h/24 (9 f0 + 19 f1 - 5 f2 + f3) on the end cells.
class ArcLength {
 public:
  explicit ArcLength(const LiftedPath& lp) : ts_(lp.ts), sp_(lp.speeds), cum_(lp.size(), 0.0) {
    const std::size_t m = ts_.size() - 1;
    for (std::size_t i = 1; i <= m; ++i) {
      const double h = ts_[i] - ts_[i - 1];
      const std::size_t a = i - 1;
      double cell;
      if (m < 3) {
        cell = 0.5 * h * (sp_[a] + sp_[i]);
      } else if (a == 0) {
        cell = h / 24.0 * (9 * sp_[0] + 19 * sp_[1] - 5 * sp_[2] + sp_[3]);
      } else if (i == m) {
        cell = h / 24.0 * (9 * sp_[m] + 19 * sp_[m - 1] - 5 * sp_[m - 2] + sp_[m - 3]);
      } else {
        cell = h / 24.0 * (-sp_[a - 1] + 13 * sp_[a] + 13 * sp_[i] - sp_[i + 1]);
      }
      cum_[i] = cum_[i - 1] + cell;
    }
  }

  double total() const { return cum_.back(); }

  double operator()(double t) const {
    if (t <= ts_.front()) return 0.0;
    if (t >= ts_.back()) return cum_.back();
    auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - ts_.begin()) - 1;
    const double h = ts_[i + 1] - ts_[i];
    const double s = (t - ts_[i]) / h;
    const double h00 = 2 * s * s * s - 3 * s * s + 1;
    const double h10 = s * s * s - 2 * s * s + s;
    const double h01 = -2 * s * s * s + 3 * s * s;
    const double h11 = s * s * s - s * s;
    return h00 * cum_[i] + h10 * h * sp_[i] + h01 * cum_[i + 1] + h11 * h * sp_[i + 1];
  }

 private:
  std::vector<double> ts_;
  std::vector<double> sp_;
  std::vector<double> cum_;
};

struct Mesh {
  std::vector<double> ts;
  std::vector<double> mus;  // mu of the reference triple at each mesh point
  std::vector<EigenTriple> references;
  std::size_t K() const { return ts.size() - 1; }
};

/// t_k solves mu(t_{k-1}) (S(t_k) - S(t_{k-1})) = C_eps; the last step ends at 1.
inline Mesh build_mesh(const LiftedPath& lp, const TrackerConfig& cfg) {
  const ArcLength arc(lp);
  Mesh mesh;
  double t = 0.0;
  auto push = [&](double t, EigenTriple ref) {
    mesh.ts.push_back(t);
    mesh.mus.push_back(mu(ref));
    mesh.references.push_back(std::move(ref));
  };
  push(0.0, lp.triples.front());
  for (std::size_t guard = 0; guard < 100000000; ++guard) {
    const double m = mesh.mus.back();
    const double s0 = arc(t);
    if (m * (arc.total() - s0) <= cfg.c_eps) break;
    const double target = s0 + cfg.c_eps / m;
    double lo = t;
    double hi = 1.0;
    while (hi - lo > 1e-15) {
      const double mid = 0.5 * (lo + hi);
      (arc(mid) < target ? lo : hi) = mid;
    }
    const double tk = 0.5 * (lo + hi);
    if (!(tk > t)) throw Error(ErrorCode::IllPosed, "mesh step collapsed");
    t = tk;
    push(t, lp.sample_at(t));
  }
  push(1.0, lp.sample_at(1.0));
  return mesh;
}

struct TrackerRun {
  std::vector<double> mesh;
  std::vector<NewtonPoint> triples;
  std::vector<EigenTriple> references;
  std::vector<double> mus;
  std::vector<bool> certified;
  std::size_t K = 0;
  double ell_mu = 0.0;
  bool quadrature_converged = true;
  bool bound_satisfied = false;
  double epsilon = 0.0;
  double c_eps = 0.0;

  bool all_certified() const {
    return std::all_of(certified.begin(), certified.end(), [](bool b) { return b; });
  }
  double sharp_bound() const { return (1.0 + epsilon) / c_eps * ell_mu + 1.0; }
};

/// Predictor-corrector over the condition-length mesh of the reference lift.
inline TrackerRun track(const MatrixPath& path, const EigenTriple& start, const TrackerConfig& cfg) {
  const LiftedPath lifted = lift_path(path, start, cfg.grid, cfg.gap_tol, cfg.max_grid);
  RefinedLength rl = refine_condition_length(lifted, cfg.quadrature_tol, cfg.max_grid);
  const Mesh mesh = build_mesh(rl.lifted, cfg);

  TrackerRun run;
  run.mesh = mesh.ts;
  run.mus = mesh.mus;
  run.K = mesh.K();
  run.ell_mu = rl.ell_mu;
  run.quadrature_converged = rl.converged;
  run.epsilon = cfg.epsilon;
  run.c_eps = cfg.c_eps;

  const EigenTriple s = normalize(start);
  NewtonPoint cur{s.lambda, s.v};
  for (std::size_t k = 0; k < mesh.ts.size(); ++k) {
    const Matrix a = path.at(mesh.ts[k]);
    if (k > 0) {
      try {
        cur = renormalized(newton_step(a, cur.lambda, cur.v));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotInvertible) throw;
        throw Error(ErrorCode::StepNotDefined, "Newton step undefined", k);
      }
    }
    const EigenTriple& ref = mesh.references[k];
    run.triples.push_back(cur);
    run.references.push_back(ref);
    run.certified.push_back(certify_approximate_solution(a, cur.lambda, cur.v, ref, cfg.k_check));
  }
  run.bound_satisfied = static_cast<double>(run.K) <= constants::C * run.ell_mu + 1.0;
  return run;
}

inline EigenTriple starting_rank_one(const Vector& v) {
  const double nv2 = v.squaredNorm();
  if (!(nv2 > 0.0)) throw Error(ErrorCode::ZeroVector, "starting_rank_one");
  const Field f = is_real(v) ? Field::Real : Field::Complex;
  return normalize(EigenTriple{v * v.adjoint(), nv2, v, f});
}

inline Vector roots_of_unity(Eigen::Index n) {
  Vector z(n);
  for (Eigen::Index k = 0; k < n; ++k)
    z(k) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
  if (n == 2) z(1) = -1.0;  // exact in real mode
  return z;
}

inline EigenTriple starting_roots_of_unity(Eigen::Index n, Eigen::Index j,
                                           Field field = Field::Complex) {
  if (n < 2) throw Error(ErrorCode::OutOfRange, "n must be at least 2");
  if (j < 0 || j >= n) throw Error(ErrorCode::OutOfRange, "index j outside [0, n)");
  if (field == Field::Real && n >= 3)
    throw Error(ErrorCode::Unsupported, "roots of unity are not real for n >= 3");
  const double s = std::sqrt(static_cast<double>(n));
  const Vector z = roots_of_unity(n);
  return {Matrix(z.asDiagonal()) / s, z(j) / s, unit_vector(n, j), field};
}

/// Closed-form mu for the roots-of-unity start.
inline double roots_of_unity_mu(Eigen::Index n) {
  return std::sqrt(static_cast<double>(n)) / (2.0 * std::sin(std::numbers::pi / static_cast<double>(n)));
}

struct ProjectionStart {
  EigenTriple triple;
  bool well_posed;
};

/// Zeroes the first column below the diagonal; (A(0), a11, e1) is an eigentriple.
inline ProjectionStart starting_projection(const Matrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::DimensionMismatch, "starting_projection");
  if (!(a.norm() > 0.0)) throw Error(ErrorCode::ZeroVector, "starting_projection");
  Matrix a0 = a;
  for (Eigen::Index i = 1; i < a.rows(); ++i) a0(i, 0) = 0.0;
  const Field f = is_real(a) ? Field::Real : Field::Complex;
  EigenTriple t{a0, a(0, 0), unit_vector(a.rows(), 0), f};
  return {t, is_well_posed(t)};
}

}  // namespace eigenpath
