#pragma once

// Discrete Grover iteration from the uniform state, for side-by-side
// comparison with the adiabatic running times. Iterations count oracle
// queries; they are not in the same units as the adiabatic time T.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>

#include "adiasearch/errors.hpp"

namespace adiasearch {

struct GroverRun {
  std::size_t n_total = 0;
  std::size_t iterations = 0;
  double success_prob = 0.0;
};

/// sin^2((2k + 1) theta), theta = asin(1 / sqrt(N)).
inline double grover_closed_form(std::size_t n_total, std::size_t iterations) {
  detail::require(n_total >= 2, "Grover search needs N >= 2");
  const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(n_total)));
  const double x = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta);
  return x * x;
}

/// Runs k oracle + diffusion rounds on the two distinct amplitudes of the
/// state (marked item, any unmarked item).
inline GroverRun grover_simulate(std::size_t n_total, std::size_t iterations) {
  detail::require(n_total >= 2, "Grover search needs N >= 2");
  const double n = static_cast<double>(n_total);
  double marked = 1.0 / std::sqrt(n);
  double unmarked = marked;
  for (std::size_t k = 0; k < iterations; ++k) {
    marked = -marked;
    const double mean = (marked + (n - 1.0) * unmarked) / n;
    marked = 2.0 * mean - marked;
    unmarked = 2.0 * mean - unmarked;
  }
  return {n_total, iterations, marked * marked};
}

/// Iteration count with the highest success probability. Ties (within 1e-12)
/// go to the smaller k.
inline std::size_t grover_optimal_iterations(std::size_t n_total) {
  detail::require(n_total >= 2, "Grover search needs N >= 2");
  const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(n_total)));
  const auto center = static_cast<std::int64_t>(std::llround(std::numbers::pi / (4.0 * theta) - 0.5));
  std::size_t best = 0;
  double best_prob = -1.0;
  for (std::int64_t k = std::max<std::int64_t>(0, center - 2); k <= center + 2; ++k) {
    const double p = grover_closed_form(n_total, static_cast<std::size_t>(k));
    if (p > best_prob + 1e-12) {
      best_prob = p;
      best = static_cast<std::size_t>(k);
    }
  }
  return best;
}

}  // namespace adiasearch
