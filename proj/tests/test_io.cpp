#include <gtest/gtest.h>

#include "eigenpath/io.hpp"
#include "eigenpath/random.hpp"

using namespace eigenpath;
using io::json;

namespace {

std::optional<ErrorCode> code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST(Io, MatrixRoundTripIsExact) {
  Rng rng(80);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = rng.matrix(1 + trial % 6);
    Field f = Field::Real;
    const Matrix b = io::matrix_from_json(json::parse(io::matrix_to_json(a).dump()), &f);
    EXPECT_EQ(a, b);
    EXPECT_EQ(f, Field::Complex);
  }
  const Matrix r = rng.matrix(3, Field::Real);
  const json j = io::matrix_to_json(r);
  EXPECT_EQ(j.at("field"), "real");
  Field f = Field::Complex;
  EXPECT_EQ(io::matrix_from_json(j, &f), r);
  EXPECT_EQ(f, Field::Real);
}

TEST(Io, RowMajorEntries) {
  const json j = json::parse(R"({"n": 2, "entries": [1, [2, 0], 3, [0, 4]]})");
  const Matrix m = io::matrix_from_json(j);
  EXPECT_EQ(m(0, 1), cplx(2, 0));
  EXPECT_EQ(m(1, 0), cplx(3, 0));
  EXPECT_EQ(m(1, 1), cplx(0, 4));
}

TEST(Io, TripleRoundTripNormalizes) {
  Rng rng(81);
  const EigenTriple t = random_well_posed_triple(rng, 4);
  const EigenTriple u = io::triple_from_json(json::parse(io::triple_to_json(t).dump()));
  EXPECT_EQ(u.A, t.A);
  EXPECT_EQ(u.lambda, t.lambda);
  EXPECT_EQ(u.v, t.v);

  const json raw = json::parse(R"({"A": {"n": 2, "field": "real", "entries": [3, 0, 0, -4]},
                                   "lambda": 3, "v": [2, 0]})");
  const EigenTriple n = io::triple_from_json(raw);
  EXPECT_DOUBLE_EQ(n.A.norm(), 1.0);
  EXPECT_DOUBLE_EQ(n.lambda.real(), 0.6);
  EXPECT_EQ(n.v, unit_vector(2, 0));
  EXPECT_EQ(n.field, Field::Real);
}

TEST(Io, PathRoundTrip) {
  Rng rng(82);
  const Matrix a0 = rng.matrix(3);
  const Matrix a1 = rng.matrix(3);
  const Matrix g = (a0 - a0.adjoint()) / 2.0;
  const MatrixPath sampled = MatrixPath::sampled({0.0, 0.3, 1.0}, {a0, a1, a0});
  for (const MatrixPath& p : {MatrixPath::linear(a0, a1), MatrixPath::unitary_orbit(a1, g), sampled}) {
    const MatrixPath q = io::path_from_json(json::parse(io::path_to_json(p).dump()));
    EXPECT_EQ(q.kind(), p.kind());
    for (double t : {0.0, 0.25, 0.6, 1.0}) EXPECT_EQ(q.at(t), p.at(t));
  }
}

TEST(Io, ParseErrors) {
  auto matrix = [](const char* s) { return [s] { io::matrix_from_json(json::parse(s)); }; };
  EXPECT_EQ(code_of(matrix(R"({"n": 2, "entries": [1, 2, 3]})")), ErrorCode::Parse);
  EXPECT_EQ(code_of(matrix(R"({"n": 0, "entries": []})")), ErrorCode::Parse);
  EXPECT_EQ(code_of(matrix(R"({"entries": [1]})")), ErrorCode::Parse);
  EXPECT_EQ(code_of(matrix(R"({"n": 1, "field": "quaternion", "entries": [1]})")), ErrorCode::Parse);
  EXPECT_EQ(code_of(matrix(R"({"n": 1, "field": "real", "entries": [[1, 1]]})")), ErrorCode::Parse);
  EXPECT_EQ(code_of(matrix(R"({"n": 1, "entries": [[1, 2, 3]]})")), ErrorCode::Parse);
  EXPECT_EQ(code_of(matrix(R"([1, 2])")), ErrorCode::Parse);

  auto triple = [](const char* s) { return [s] { io::triple_from_json(json::parse(s)); }; };
  // not an eigentriple
  EXPECT_EQ(code_of(triple(R"({"A": {"n": 2, "entries": [1, 0, 0, 2]}, "lambda": 1, "v": [0, 1]})")),
            ErrorCode::Parse);
  EXPECT_EQ(code_of(triple(R"({"A": {"n": 2, "entries": [1, 0, 0, 2]}, "lambda": 1, "v": [1]})")),
            ErrorCode::Parse);
  EXPECT_EQ(code_of(triple(R"({"A": {"n": 2, "entries": [1, 0, 0, 2]}, "lambda": 1, "v": [0, 0]})")),
            ErrorCode::Parse);
  EXPECT_EQ(code_of(triple(R"({"A": {"n": 1, "entries": [1]}, "v": [1]})")), ErrorCode::Parse);

  auto path = [](const char* s) { return [s] { io::path_from_json(json::parse(s)); }; };
  EXPECT_EQ(code_of(path(R"({"kind": "spline"})")), ErrorCode::Parse);
  EXPECT_EQ(code_of(path(R"({"kind": "linear", "A0": {"n": 1, "entries": [1]},
                              "A1": {"n": 2, "entries": [1, 0, 0, 1]}})")),
            ErrorCode::Parse);
  EXPECT_EQ(code_of(path(R"({"kind": "sampled", "ts": [0, 0.5],
                              "As": [{"n": 1, "entries": [1]}, {"n": 1, "entries": [2]}]})")),
            ErrorCode::Parse);
  EXPECT_EQ(code_of(path(R"({"kind": "unitary-orbit", "A": {"n": 1, "entries": [1]},
                              "generator": {"n": 1, "entries": [1]}})")),
            ErrorCode::Parse);
  EXPECT_EQ(code_of([] { io::read_json_file("/nonexistent/eigenpath.json"); }), ErrorCode::Parse);
}

TEST(Io, NonFiniteSerializesAsNull) {
  EXPECT_TRUE(io::real(std::numeric_limits<double>::infinity()).is_null());
  EXPECT_TRUE(io::real(std::nan("")).is_null());
  EXPECT_EQ(io::real(0.5), json(0.5));
  const ConditionReport r = condition_report({Matrix::Identity(2, 2), 1.0, unit_vector(2, 0)});
  const json j = io::condition_to_json(r);
  EXPECT_FALSE(j.at("well_posed").get<bool>());
  EXPECT_TRUE(j.at("mu").is_null());
  EXPECT_TRUE(j.at("dist_to_illposed_fiber_affine").is_null());
}

TEST(Io, CsvTable) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = -1.0;
  const TrackerRun run = track(MatrixPath::linear(a, a), normalize({a, 1.0, unit_vector(2, 0)}), {});
  const std::string csv = io::run_to_csv(run);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,lambda_re,lambda_im,mu,certified");
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), run.mesh.size() + 1);
  EXPECT_NE(csv.find("\n1,"), std::string::npos);
}
