#pragma once

#include <cstdint>
#include <vector>

namespace ppot::cli {

struct IdentityCase {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  double p = 2.0;
  /// |<f, Delta_p f> + D_p(f)| / (1 + D_p(f))
  double identity_residual = 0.0;
  /// |analytic - centered difference| / |analytic|
  double derivative_error = 0.0;
  /// |D_p(c f) - |c|^p D_p(f)| / (|c|^p D_p(f))
  double homogeneity_error = 0.0;
  bool pass = false;
};

struct IdentityTolerances {
  double identity = 1e-10;
  double derivative = 1e-5;
  double homogeneity = 1e-12;
  double step = 1e-6;
};

/// `count` random instances with 2..max_vertices vertices, cycling through
/// the exponents 1.5, 2, 3, 4.
std::vector<IdentityCase> run_identity_suite(std::size_t count, std::uint64_t seed, std::size_t max_vertices = 100,
                                             const IdentityTolerances& tol = {});

}  // namespace ppot::cli
