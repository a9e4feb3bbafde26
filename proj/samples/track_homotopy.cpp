// Follows one eigenpair from diag(roots of unity) to a random matrix and prints the mesh.
//   track_homotopy [n] [seed]

#include <cstdio>
#include <cstdlib>

#include "eigenpath/eigenpath.hpp"

using namespace eigenpath;

int main(int argc, char** argv) {
  const Eigen::Index n = argc > 1 ? std::atoi(argv[1]) : 4;
  Rng rng(argc > 2 ? std::strtoull(argv[2], nullptr, 10) : kDefaultSeed);
  const EigenTriple start = starting_roots_of_unity(n, 0);
  const MatrixPath path = MatrixPath::linear(start.A, rng.matrix(n));
  const TrackerRun run = track(path, start, TrackerConfig{});

  const std::size_t stride = run.K / 10 + 1;
  std::printf("%-8s %-12s %-24s %-10s %s\n", "k", "t", "lambda", "mu", "certified");
  auto row = [&](std::size_t k) {
    const cplx l = run.triples[k].lambda;
    std::printf("%-8zu %-12.6f %+.6f%+.6fi      %-10.4f %s\n", k, run.mesh[k], l.real(), l.imag(), run.mus[k],
                run.certified[k] ? "yes" : "no");
  };
  for (std::size_t k = 0; k < run.K; k += stride) row(k);
  row(run.K);
  std::printf("K = %zu, ell_mu = %.6f, K <= 100 ell_mu + 1: %s\n", run.K, run.ell_mu,
              run.bound_satisfied ? "yes" : "no");
}
