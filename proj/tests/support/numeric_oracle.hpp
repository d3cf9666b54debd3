#pragma once

// Floating-point singular-point hunter used to cross-check the exact
// smoothness verdicts. A point is only reported when the gradient norm at a
// unit-norm x is below the tolerance, so "singular" answers are reliable;
// "smooth" means no restart found one.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "ijo/delsarte.hpp"

namespace ijo::testing {

struct NumericSingularPoint {
  std::vector<std::complex<double>> x;  // unit norm
  double gradient_norm = 0.0;
};

struct OracleOptions {
  int restarts_per_support = 12;
  int iterations = 200;
  double tolerance = 1e-10;
  std::uint64_t seed = 20240617;
};

std::optional<NumericSingularPoint> find_singular_point(const ExponentMatrix& m, const OracleOptions& opt = {});

}  // namespace ijo::testing
