#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "eigenpath/tracker.hpp"

namespace eigenpath::io {

using json = nlohmann::ordered_json;

[[noreturn]] inline void parse_fail(const std::string& what) { throw Error(ErrorCode::Parse, what); }

/// Infinite or NaN reals serialize as null.
inline json real(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

inline json scalar_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx scalar_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    parse_fail("scalar must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(scalar_to_json(v(i)));
  return out;
}

inline Vector vector_from_json(const json& j) {
  if (!j.is_array()) parse_fail("vector must be an array of [re, im]");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = scalar_from_json(j[i]);
  return v;
}

inline json matrix_to_json(const Matrix& m, std::optional<Field> field = std::nullopt) {
  const Field f = field.value_or(is_real(m) ? Field::Real : Field::Complex);
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) entries.push_back(scalar_to_json(m(i, k)));
  return json{{"n", m.rows()}, {"field", to_string(f)}, {"entries", entries}};
}

inline Field field_from_json(const json& j) {
  if (!j.contains("field")) return Field::Complex;
  const auto s = j.at("field").get<std::string>();
  if (s == "real") return Field::Real;
  if (s == "complex") return Field::Complex;
  parse_fail("field must be \"real\" or \"complex\"");
}

inline Matrix matrix_from_json(const json& j, Field* field_out = nullptr) {
  try {
    if (!j.is_object()) parse_fail("matrix literal must be an object");
    const auto n = j.at("n").get<long long>();
    if (n < 1) parse_fail("matrix size must be positive");
    const Field f = field_from_json(j);
    const json& e = j.at("entries");
    if (!e.is_array() || e.size() != static_cast<std::size_t>(n * n))
      parse_fail("entries must hold n*n scalars");
    Matrix m(n, n);
    for (long long i = 0; i < n; ++i)
      for (long long k = 0; k < n; ++k) m(i, k) = scalar_from_json(e[static_cast<std::size_t>(i * n + k)]);
    if (f == Field::Real && !is_real(m)) parse_fail("real matrix with nonzero imaginary part");
    if (!m.allFinite()) parse_fail("matrix entries must be finite");
    if (field_out) *field_out = f;
    return m;
  } catch (const json::exception& ex) {
    parse_fail(std::string("matrix literal: ") + ex.what());
  }
}

inline json triple_to_json(const EigenTriple& t) {
  return json{{"A", matrix_to_json(t.A, t.field)},
              {"lambda", scalar_to_json(t.lambda)},
              {"v", vector_to_json(t.v)}};
}

/// Reads, validates the residual, and normalizes.
inline EigenTriple triple_from_json(const json& j, double tol = 1e-10) {
  try {
    Field f = Field::Complex;
    EigenTriple t{matrix_from_json(j.at("A"), &f), scalar_from_json(j.at("lambda")),
                  vector_from_json(j.at("v")), f};
    if (t.v.size() != t.A.rows()) parse_fail("v length does not match n");
    if (f == Field::Real && (t.lambda.imag() != 0.0 || !is_real(t.v)))
      parse_fail("real triple with complex lambda or v");
    if (!(t.A.norm() > 0.0) || !(t.v.norm() > 0.0)) parse_fail("A and v must be nonzero");
    if (!t.on_variety(tol)) parse_fail("triple is not an eigentriple: residual too large");
    return normalize(t);
  } catch (const json::exception& ex) {
    parse_fail(std::string("eigentriple: ") + ex.what());
  }
}

inline json path_to_json(const MatrixPath& p) {
  const auto& m = p.matrices();
  switch (p.kind()) {
    case PathKind::Linear:
      return json{{"kind", "linear"}, {"A0", matrix_to_json(m[0])}, {"A1", matrix_to_json(m[1])}};
    case PathKind::UnitaryOrbit:
      return json{{"kind", "unitary-orbit"}, {"A", matrix_to_json(m[0])},
                  {"generator", matrix_to_json(m[1])}};
    case PathKind::Sampled: {
      json as = json::array();
      for (const auto& a : m) as.push_back(matrix_to_json(a));
      return json{{"kind", "sampled"}, {"ts", p.times()}, {"As", as}};
    }
  }
  return {};
}

inline MatrixPath path_from_json(const json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "linear") return MatrixPath::linear(matrix_from_json(j.at("A0")), matrix_from_json(j.at("A1")));
    if (kind == "unitary-orbit")
      return MatrixPath::unitary_orbit(matrix_from_json(j.at("A")), matrix_from_json(j.at("generator")));
    if (kind == "sampled") {
      std::vector<Matrix> as;
      for (const auto& a : j.at("As")) as.push_back(matrix_from_json(a));
      return MatrixPath::sampled(j.at("ts").get<std::vector<double>>(), std::move(as));
    }
    parse_fail("unknown path kind \"" + kind + "\"");
  } catch (const json::exception& ex) {
    parse_fail(std::string("path: ") + ex.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    parse_fail(std::string("path: ") + e.what());
  }
}

inline json condition_to_json(const ConditionReport& r) {
  return json{{"well_posed", r.well_posed},
              {"mu_lambda", real(r.mu_lambda)},
              {"mu_v", real(r.mu_v)},
              {"mu", real(r.mu)},
              {"dist_to_illposed_fiber_affine", r.well_posed ? real(r.dist_to_illposed_fiber_affine) : json(nullptr)},
              {"left_eigenvector", vector_to_json(r.left_eigenvector)}};
}

inline json newton_to_json(const NewtonTrace& tr) {
  json its = json::array();
  for (const auto& p : tr.iterates)
    its.push_back(json{{"lambda", scalar_to_json(p.lambda)}, {"v", vector_to_json(p.v)}});
  json out{{"iterates", its}, {"defined", tr.defined_flags}};
  json d = json::array();
  for (double x : tr.distances_to_target) d.push_back(real(x));
  out["distances_to_target"] = d;
  out["failed_step"] = tr.failed_step ? json(*tr.failed_step) : json(nullptr);
  return out;
}

inline json run_to_json(const TrackerRun& r) {
  json tri = json::array();
  for (const auto& p : r.triples)
    tri.push_back(json{{"lambda", scalar_to_json(p.lambda)}, {"v", vector_to_json(p.v)}});
  return json{{"K", r.K},
              {"ell_mu", real(r.ell_mu)},
              {"bound_satisfied", r.bound_satisfied},
              {"sharp_bound", real(r.sharp_bound())},
              {"all_certified", r.all_certified()},
              {"quadrature_converged", r.quadrature_converged},
              {"epsilon", r.epsilon},
              {"c_eps", r.c_eps},
              {"mesh", r.mesh},
              {"mu", r.mus},
              {"certified", r.certified},
              {"triples", tri}};
}

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// One row per mesh point: t, lambda re, lambda im, mu, certified.
inline std::string run_to_csv(const TrackerRun& r) {
  std::ostringstream os;
  os << "t,lambda_re,lambda_im,mu,certified\n";
  for (std::size_t k = 0; k < r.mesh.size(); ++k) {
    os << fmt17(r.mesh[k]) << ',' << fmt17(r.triples[k].lambda.real()) << ','
       << fmt17(r.triples[k].lambda.imag()) << ',' << fmt17(r.mus[k]) << ','
       << (r.certified[k] ? 1 : 0) << '\n';
  }
  return os.str();
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    parse_fail(path + ": " + ex.what());
  }
}

}  // namespace eigenpath::io
