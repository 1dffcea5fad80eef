#pragma once

// Schrodinger evolution i d|psi>/dt = H(s(t)) |psi> (hbar = 1) with classic
// fixed-step RK4. Step counts are doubled until the final fidelity moves by
// less than kLadderTolerance and the norm drift stays below kNormDriftLimit.
// The state is never renormalized; norm drift is reported as the error signal.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "adiasearch/errors.hpp"
#include "adiasearch/model.hpp"
#include "adiasearch/schedule.hpp"
#include "adiasearch/spectral.hpp"

namespace adiasearch {

inline constexpr double kLadderTolerance = 1e-8;
inline constexpr double kNormDriftLimit = 1e-9;
inline constexpr std::size_t kMaxSteps = std::size_t{1} << 26;

using QuantumState2D = Eigen::Vector2cd;

struct TracePoint {
  double t = 0.0;
  double s = 0.0;
  double overlap = 0.0;  // |<E0(s)|psi(t)>|^2
};

struct EvolutionResult {
  Eigen::VectorXcd final_state;  // length 2 for effective runs, N for full-space runs
  double fidelity = 0.0;         // |<m|psi(T)>|^2
  double norm_drift = 0.0;       // max_t | ||psi(t)||^2 - 1 |
  double min_overlap = 1.0;      // min_t |<E0(s(t))|psi(t)>|^2
  double leakage = 0.0;          // full space only: max_t ||(1 - P) psi(t)||, P onto span{|m>, |psi0>}
  double total_time = 0.0;
  std::size_t steps = 0;
  std::vector<TracePoint> trace;
};

struct EvolveOptions {
  std::size_t steps_hint = 0;    // first rung of the ladder; 0 picks one from T and c
  std::size_t trace_samples = 0; // number of trace points (>= 2 to enable)
};

/// s as a function of the time fraction t/T.
using Protocol = std::function<double(double)>;

namespace detail {

inline std::size_t initial_rung(double total_time, double scale, std::size_t hint) {
  // Start near h * c = 0.05; the ladder refines from there.
  const double guess = std::ceil(total_time * scale / 0.05);
  const auto base = static_cast<std::size_t>(std::clamp(guess, 16.0, static_cast<double>(kMaxSteps / 2)));
  return std::max(hint, base);
}

// RK4 over [0, T] with `steps` equal steps. `apply(s, psi)` returns H(s) psi;
// `observe(k, t, s, psi)` is called after every step k (and once at k = 0).
template <typename Vec, typename Apply, typename Observe>
Vec rk4_propagate(Vec psi, const Protocol& protocol, double total_time, std::size_t steps, Apply&& apply,
                  Observe&& observe) {
  const std::complex<double> minus_i(0.0, -1.0);
  const double h = total_time / static_cast<double>(steps);
  const double dx = 1.0 / static_cast<double>(steps);
  observe(std::size_t{0}, 0.0, protocol(0.0), psi);
  for (std::size_t k = 0; k < steps; ++k) {
    const double x0 = static_cast<double>(k) * dx;
    const double x_mid = (static_cast<double>(k) + 0.5) * dx;
    const double x1 = k + 1 == steps ? 1.0 : static_cast<double>(k + 1) * dx;
    const double s0 = protocol(x0);
    const double s_mid = protocol(x_mid);
    const double s1 = protocol(x1);
    const Vec k1 = minus_i * apply(s0, psi);
    const Vec k2 = minus_i * apply(s_mid, Vec(psi + (0.5 * h) * k1));
    const Vec k3 = minus_i * apply(s_mid, Vec(psi + (0.5 * h) * k2));
    const Vec k4 = minus_i * apply(s1, Vec(psi + h * k3));
    psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    observe(k + 1, x1 * total_time, s1, psi);
  }
  return psi;
}

template <typename Run>
EvolutionResult run_ladder(double total_time, double scale, std::size_t hint, Run&& run) {
  std::size_t steps = initial_rung(total_time, scale, hint);
  EvolutionResult coarse = run(steps);
  while (true) {
    if (steps * 2 > kMaxSteps)
      throw ConvergenceError("step ladder did not converge within " + std::to_string(kMaxSteps) + " steps");
    steps *= 2;
    EvolutionResult fine = run(steps);
    if (std::abs(fine.fidelity - coarse.fidelity) < kLadderTolerance && fine.norm_drift < kNormDriftLimit)
      return fine;
    coarse = std::move(fine);
  }
}

inline bool is_trace_step(std::size_t k, std::size_t steps, std::size_t samples) {
  if (samples < 2) return false;
  if (k == 0 || k == steps) return true;
  // Step k is the nearest step to each of `samples` evenly spaced times.
  const auto prev = (k - 1) * (samples - 1) / steps;
  const auto here = k * (samples - 1) / steps;
  return here != prev;
}

}  // namespace detail

/// Exact ground state of H(0) in the effective basis: |psi0> = (a, b).
inline QuantumState2D initial_state_2d(const EffectiveHamiltonian& h) {
  return QuantumState2D(h.a_m, h.b());
}

/// Fixed step-count evolution in the effective 2-D space under an arbitrary
/// protocol. No ladder; evolve() builds on this.
inline EvolutionResult propagate_2d(const EffectiveHamiltonian& h, const Protocol& protocol, double total_time,
                                    std::size_t steps, const QuantumState2D& psi_init,
                                    std::size_t trace_samples = 0) {
  detail::require(steps >= 1, "need at least one step");
  detail::require(std::isfinite(total_time) && total_time > 0.0, "total time must be positive");
  EvolutionResult result;
  result.total_time = total_time;
  result.steps = steps;
  auto apply = [&](double s, const QuantumState2D& psi) -> QuantumState2D { return matrix_2d(h, s) * psi; };
  auto observe = [&](std::size_t k, double t, double s, const QuantumState2D& psi) {
    result.norm_drift = std::max(result.norm_drift, std::abs(psi.squaredNorm() - 1.0));
    const Eigen::Vector2d ground = eigenvectors_2d(h, s).col(0);
    const double overlap = std::norm(ground(0) * psi(0) + ground(1) * psi(1));
    result.min_overlap = std::min(result.min_overlap, overlap);
    if (detail::is_trace_step(k, steps, trace_samples)) result.trace.push_back({t, s, overlap});
  };
  const QuantumState2D final_state = detail::rk4_propagate(psi_init, protocol, total_time, steps, apply, observe);
  result.final_state = final_state;
  result.fidelity = std::norm(final_state(0));
  return result;
}

inline Protocol protocol_of(const Schedule& schedule) {
  return [schedule](double x) { return schedule.s_of_fraction(x); };
}

/// Evolves |psi0> under `schedule` in the effective basis and returns the
/// success probability |<m|psi(T)>|^2. Exact for any N.
inline EvolutionResult evolve(const EffectiveHamiltonian& h, const Schedule& schedule, EvolveOptions options = {}) {
  detail::require(h.a_m == schedule.a_m() && h.scale == schedule.scale(),
                  "Hamiltonian and schedule disagree on a_m or scale");
  const Protocol protocol = protocol_of(schedule);
  const double total = schedule.total_time();
  return detail::run_ladder(total, h.scale, options.steps_hint, [&](std::size_t steps) {
    return propagate_2d(h, protocol, total, steps, initial_state_2d(h), options.trace_samples);
  });
}

inline EvolutionResult evolve(const EffectiveHamiltonian& h, const Schedule& schedule, std::size_t steps_hint) {
  return evolve(h, schedule, EvolveOptions{steps_hint, 0});
}

/// Fixed step-count evolution in the full N-dimensional space using the dense
/// oracle matrices. `psi_init` defaults to the state's own amplitudes.
inline EvolutionResult propagate_full(const InitialState& state, double c, const Protocol& protocol,
                                      double total_time, std::size_t steps,
                                      const Eigen::VectorXcd* psi_init = nullptr, std::size_t trace_samples = 0) {
  detail::require(steps >= 1, "need at least one step");
  detail::require(std::isfinite(total_time) && total_time > 0.0, "total time must be positive");
  const Eigen::MatrixXd h_initial = full_matrix(state, 0.0, c);
  const Eigen::MatrixXd h_final = full_matrix(state, 1.0, c);
  const auto n = static_cast<Eigen::Index>(state.size());
  const auto m = static_cast<Eigen::Index>(state.marked_index());
  const Eigen::Map<const Eigen::VectorXd> psi0(state.amplitudes().data(), n);

  // Orthonormal basis of the invariant plane: e_m and alpha2 = (psi0 - a e_m) / b.
  const EffectiveHamiltonian effective(state.marked_amplitude(), c);
  Eigen::VectorXd alpha2 = psi0;
  alpha2(m) -= effective.a_m;
  alpha2 /= effective.b();

  Eigen::VectorXcd start = psi_init ? *psi_init : Eigen::VectorXcd(psi0.cast<std::complex<double>>());
  detail::require(start.size() == n, "initial vector has the wrong dimension");

  EvolutionResult result;
  result.total_time = total_time;
  result.steps = steps;
  auto apply = [&](double s, const Eigen::VectorXcd& psi) -> Eigen::VectorXcd {
    return (1.0 - s) * (h_initial * psi) + s * (h_final * psi);
  };
  auto observe = [&](std::size_t k, double t, double s, const Eigen::VectorXcd& psi) {
    result.norm_drift = std::max(result.norm_drift, std::abs(psi.squaredNorm() - 1.0));
    const std::complex<double> c1 = psi(m);
    const std::complex<double> c2 = alpha2.cast<std::complex<double>>().dot(psi);
    Eigen::VectorXcd outside = psi - alpha2.cast<std::complex<double>>() * c2;
    outside(m) -= c1;
    result.leakage = std::max(result.leakage, outside.norm());
    const Eigen::Vector2d ground = eigenvectors_2d(effective, s).col(0);
    const double overlap = std::norm(ground(0) * c1 + ground(1) * c2);
    result.min_overlap = std::min(result.min_overlap, overlap);
    if (detail::is_trace_step(k, steps, trace_samples)) result.trace.push_back({t, s, overlap});
  };
  result.final_state = detail::rk4_propagate(start, protocol, total_time, steps, apply, observe);
  result.fidelity = std::norm(result.final_state(m));
  return result;
}

/// Full-space counterpart of evolve(); N is limited by oracle_cap().
inline EvolutionResult evolve_full(const InitialState& state, const Schedule& schedule, double c,
                                   EvolveOptions options = {}) {
  detail::require(state.size() <= oracle_cap(), "N exceeds the full-space oracle cap");
  detail::require(state.marked_amplitude() == schedule.a_m() && c == schedule.scale(),
                  "initial state and schedule disagree on a_m or scale");
  const Protocol protocol = protocol_of(schedule);
  const double total = schedule.total_time();
  return detail::run_ladder(total, c, options.steps_hint, [&](std::size_t steps) {
    return propagate_full(state, c, protocol, total, steps, nullptr, options.trace_samples);
  });
}

struct FidelityPoint {
  double epsilon = 0.0;
  double infidelity = 0.0;
};

/// 1 - fidelity of the local schedule at each epsilon (given in descending order).
inline std::vector<FidelityPoint> fidelity_sweep(const EffectiveHamiltonian& h, const std::vector<double>& epsilons) {
  detail::require(!epsilons.empty(), "epsilon list is empty");
  for (std::size_t i = 1; i < epsilons.size(); ++i)
    detail::require(epsilons[i] < epsilons[i - 1], "epsilons must be strictly descending");
  std::vector<FidelityPoint> out;
  out.reserve(epsilons.size());
  for (double eps : epsilons) {
    const auto result = evolve(h, Schedule::local(h, eps));
    out.push_back({eps, 1.0 - result.fidelity});
  }
  return out;
}

/// Per-amplitude distance after removing the global phase, aligned on the
/// largest-magnitude amplitude of `reference`.
inline double phase_aligned_distance(const Eigen::VectorXcd& reference, const Eigen::VectorXcd& other) {
  detail::require(reference.size() == other.size(), "state dimensions differ");
  Eigen::Index pivot = 0;
  reference.cwiseAbs().maxCoeff(&pivot);
  const std::complex<double> ref = reference(pivot);
  const std::complex<double> oth = other(pivot);
  std::complex<double> phase(1.0, 0.0);
  if (std::abs(oth) > 0.0) phase = (ref / std::abs(ref)) / (oth / std::abs(oth));
  return (reference - phase * other).cwiseAbs().maxCoeff();
}

}  // namespace adiasearch
