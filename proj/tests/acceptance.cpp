// Acceptance driver: one PASS/FAIL line per criterion, failing checks listed beneath.
//   acceptance [constants | 1..11]...   (no arguments runs everything)

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "eigenpath/verify.hpp"

using namespace eigenpath;

namespace {

bool report(const verify::Criterion& c) {
  const std::string label = c.id == 0 ? "constants" : "criterion " + std::to_string(c.id);
  std::cout << (c.passed() ? "[PASS] " : "[FAIL] ") << label << ": " << c.title << '\n';
  for (const auto& check : c.checks)
    if (!check.passed) std::cout << "    " << verify::describe(check) << '\n';
  return c.passed();
}

}  // namespace

int main(int argc, char** argv) {
  verify::Options opt;
  if (const char* env = std::getenv("EIGENPATH_SEED")) opt.seed = std::stoull(env);

  std::vector<std::string> ids(argv + 1, argv + argc);
  if (ids.empty()) {
    ids.push_back("constants");
    for (int i = 1; i <= 11; ++i) ids.push_back(std::to_string(i));
  }

  bool ok = true;
  for (const auto& id : ids) {
    try {
      ok = report(id == "constants" ? verify::constants_suite() : verify::run_criterion(std::stoi(id), opt)) && ok;
    } catch (const std::exception& e) {
      std::cout << "[FAIL] criterion " << id << ": " << e.what() << '\n';
      ok = false;
    }
  }
  return ok ? 0 : 1;
}
