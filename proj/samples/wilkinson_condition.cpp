// Condition numbers of the Wilkinson matrix [[1, eps], [1, 1]] as eps shrinks.

#include <cstdio>

#include "eigenpath/eigenpath.hpp"

using namespace eigenpath;

int main() {
  std::printf("%-10s %-14s %-14s %-14s\n", "eps", "lambda", "mu_lambda", "mu_v");
  for (double eps : {0.25, 0.04, 1e-2, 1e-4, 1e-6}) {
    Matrix a(2, 2);
    a << 1, eps, 1, 1;
    const double s = std::sqrt(eps);
    Vector v(2);
    v << s, 1;
    const EigenTriple t = normalize({a, 1 + s, v});
    std::printf("%-10g %-14.8g %-14.8g %-14.8g\n", eps, t.lambda.real() * a.norm(), mu_lambda(t), mu_v(t));
  }
}
