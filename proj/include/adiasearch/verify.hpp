#pragma once

// Invariant suites runnable from the CLI (`adiasearch verify <suite>`).
// Every check reports the measured worst case next to its threshold.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Eigenvalues>

#include "adiasearch/baseline.hpp"
#include "adiasearch/dynamics.hpp"
#include "adiasearch/errors.hpp"
#include "adiasearch/model.hpp"
#include "adiasearch/schedule.hpp"
#include "adiasearch/spectral.hpp"

namespace adiasearch {

enum class VerifySuite { spectral, schedule, dynamics, theorems, all };

inline VerifySuite parse_verify_suite(std::string_view text) {
  if (text == "spectral") return VerifySuite::spectral;
  if (text == "schedule") return VerifySuite::schedule;
  if (text == "dynamics") return VerifySuite::dynamics;
  if (text == "theorems") return VerifySuite::theorems;
  if (text == "all") return VerifySuite::all;
  throw InvalidInput("unknown verify suite '" + std::string(text) + "'");
}

struct Check {
  std::string suite;
  std::string name;
  double measured = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct VerifyReport {
  std::vector<Check> checks;

  [[nodiscard]] bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

inline void print(std::ostream& out, const VerifyReport& report) {
  for (const auto& c : report.checks) {
    out << (c.passed ? "PASS " : "FAIL ") << c.suite << '/' << c.name << "  measured=" << c.measured
        << "  threshold=" << c.threshold << '\n';
  }
  const auto failed = std::count_if(report.checks.begin(), report.checks.end(), [](const Check& c) { return !c.passed; });
  out << report.checks.size() - static_cast<std::size_t>(failed) << '/' << report.checks.size() << " checks passed\n";
}

namespace detail {

struct CheckSink {
  std::string suite;
  VerifyReport& report;

  // measured <= threshold passes.
  void at_most(std::string name, double measured, double threshold) {
    report.checks.push_back({suite, std::move(name), measured, threshold, measured <= threshold});
  }
  void holds(std::string name, bool condition) {
    report.checks.push_back({suite, std::move(name), condition ? 1.0 : 0.0, 1.0, condition});
  }
};

inline double relative(double value, double reference) {
  return std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
}

inline void verify_spectral(VerifyReport& report) {
  CheckSink sink{"spectral", report};
  const std::size_t n = 64;
  const auto state = uniform_state(n, 5);
  double eig_err = 0.0;
  for (double c : {1.0, 2.5}) {
    const EffectiveHamiltonian h(state.marked_amplitude(), c);
    for (double s : {0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0}) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(full_matrix(state, s, c), Eigen::EigenvaluesOnly);
      const auto& ev = solver.eigenvalues();
      const auto [l1, l2] = eigenvalues(h, s);
      // Ascending: l1, then either l2 or the degenerate c sector (l2 <= c always).
      eig_err = std::max(eig_err, std::abs(ev(0) - l1));
      eig_err = std::max(eig_err, std::abs(ev(1) - l2));
      for (Eigen::Index i = 2; i < ev.size(); ++i) eig_err = std::max(eig_err, std::abs(ev(i) - c));
    }
  }
  sink.at_most("full-space eigenvalues match closed form (N=64)", eig_err, 1e-10);

  double sym_err = 0.0;
  double trace_err = 0.0;
  double scaling_err = 0.0;
  bool min_at_half = true;
  for (double a : {0.02, 0.1, 0.5, 0.9}) {
    const EffectiveHamiltonian h1(a, 1.0);
    const EffectiveHamiltonian h3(a, 3.0);
    const double g_half = gap(h3, 0.5);
    min_at_half = min_at_half && std::abs(g_half - 3.0 * a) <= 1e-14;
    for (int i = 0; i <= 200; ++i) {
      const double s = i / 200.0;
      sym_err = std::max(sym_err, std::abs(gap(h3, s) - gap(h3, 1.0 - s)));
      const auto [l1, l2] = eigenvalues(h3, s);
      trace_err = std::max(trace_err, std::abs(l1 + l2 - 3.0));
      const auto [u1, u2] = eigenvalues(h1, s);
      scaling_err = std::max({scaling_err, std::abs(l1 - 3.0 * u1), std::abs(l2 - 3.0 * u2)});
      min_at_half = min_at_half && gap(h3, s) >= g_half;
    }
  }
  sink.at_most("gap symmetric under s -> 1-s", sym_err, 1e-14);
  sink.holds("gap minimum c*a_m at s = 1/2", min_at_half);
  sink.at_most("lambda1 + lambda2 = c", trace_err, 1e-14);
  sink.at_most("eigenvalues scale linearly with c", scaling_err, 1e-14);
}

inline void verify_schedule(VerifyReport& report) {
  CheckSink sink{"schedule", report};
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> amp(0.01, 0.95);
  std::uniform_real_distribution<double> eps_dist(0.005, 0.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double quad_err = 0.0;
  double scale_err = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double a = amp(rng);
    const double eps = eps_dist(rng);
    quad_err = std::max(quad_err, relative(total_time(a, eps), local_time_of_s_numeric(a, eps, 1.0, 1.0)));
    for (double c : {0.5, 2.0, 10.0}) scale_err = std::max(scale_err, relative(total_time(a, eps, c) * c, total_time(a, eps)));
  }
  sink.at_most("closed-form T matches quadrature", quad_err, 1e-8);
  sink.at_most("T(c) * c = T(1)", scale_err, 1e-12);

  const double a = 0.1;
  const double eps = 0.05;
  const double total = total_time(a, eps);
  double sym_err = 0.0;
  double fd_err = 0.0;
  for (int i = 1; i < 100; ++i) {
    const double s = i / 100.0;
    sym_err = std::max(sym_err, relative(local_time_of_s(a, eps, 1.0, s) + local_time_of_s(a, eps, 1.0, 1.0 - s), total));
    const double h = 1e-5;
    const double fd = (local_time_of_s(a, eps, 1.0, s + h) - local_time_of_s(a, eps, 1.0, s - h)) / (2.0 * h);
    const double g = gap(EffectiveHamiltonian(a), s);
    fd_err = std::max(fd_err, relative(fd, 1.0 / (eps * g * g)));
  }
  sink.at_most("t(s) + t(1-s) = T", sym_err, 1e-12);
  sink.at_most("dt/ds = 1/(eps g^2) by finite differences", fd_err, 1e-6);

  const auto schedule = Schedule::local(EffectiveHamiltonian(a), eps);
  double trip_err = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double s = unit(rng);
    trip_err = std::max(trip_err, std::abs(schedule.s_of_t(schedule.time_of_s(s)) - s));
  }
  sink.at_most("s_of_t inverts t(s)", trip_err, 1e-10);

  double worst = 0.0;
  for (double am : {0.01, 0.1, 0.5}) {
    const auto report_local = adiabaticity_report(Schedule::local(EffectiveHamiltonian(am, 2.0), 0.1), 1001);
    worst = std::max(worst, report_local.worst_local_ratio);
  }
  sink.at_most("local schedule satisfies the per-s adiabatic condition", worst, 1.0 + 1e-12);
}

inline void verify_dynamics(VerifyReport& report) {
  CheckSink sink{"dynamics", report};
  const EffectiveHamiltonian h64(0.125);
  const auto run = evolve(h64, Schedule::local(h64, 0.05));
  sink.at_most("norm drift (N=64, eps=0.05)", run.norm_drift, kNormDriftLimit);

  const auto state = uniform_state(16, 3);
  const EffectiveHamiltonian h16(state.marked_amplitude());
  const auto schedule16 = Schedule::local(h16, 0.05);
  const auto effective = evolve(h16, schedule16);
  const auto full = evolve_full(state, schedule16, 1.0);
  sink.at_most("full vs effective fidelity (N=16)", std::abs(full.fidelity - effective.fidelity), 1e-8);
  sink.at_most("leakage out of span{m, psi0} (N=16)", full.leakage, 1e-9);

  const EffectiveHamiltonian h5(0.125, 5.0);
  const auto scaled = evolve(h5, Schedule::local(h5, 0.05));
  sink.at_most("psi_cH(T/c) = psi_H(T) (c=5)", phase_aligned_distance(run.final_state, scaled.final_state), 1e-10);

  const auto points = fidelity_sweep(h64, {0.1, 0.05, 0.025});
  bool monotone = true;
  for (std::size_t i = 1; i < points.size(); ++i) monotone = monotone && points[i].infidelity < points[i - 1].infidelity;
  sink.holds("infidelity decreases with eps (N=64)", monotone);
}

inline void verify_theorems(VerifyReport& report) {
  CheckSink sink{"theorems", report};
  // Equal marked amplitude 1/4 with two different spreads of the rest.
  const std::size_t n = 16;
  std::vector<double> lopsided(n, 0.0);
  lopsided[0] = 0.25;
  double rest = 0.0;
  for (std::size_t i = 1; i < n; ++i) rest += static_cast<double>(i * i);
  for (std::size_t i = 1; i < n; ++i) lopsided[i] = std::sqrt((1.0 - 0.0625) * static_cast<double>(i * i) / rest);
  const InitialState skewed(lopsided, 0);
  const auto uniform = uniform_state(n, 0);
  const auto schedule_a = Schedule::local(EffectiveHamiltonian(skewed.marked_amplitude()), 0.05);
  const auto schedule_b = Schedule::local(EffectiveHamiltonian(uniform.marked_amplitude()), 0.05);
  sink.holds("equal a_m gives bit-identical T", schedule_a.total_time() == schedule_b.total_time());
  const auto run_a = evolve_full(skewed, schedule_a, 1.0);
  const auto run_b = evolve_full(uniform, schedule_b, 1.0);
  sink.at_most("equal a_m gives equal fidelity (full space, N=16)", std::abs(run_a.fidelity - run_b.fidelity), 1e-8);

  std::mt19937_64 rng(7);
  const std::size_t big_n = 1024;
  const double eps = 0.05;
  const double bound = no_prior_time(big_n, eps);
  double worst_excess = -1e300;
  double worst_equality = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 10)(rng);
    std::vector<std::size_t> cuts;
    std::uniform_int_distribution<std::size_t> cut(1, big_n - 1);
    while (cuts.size() + 1 < k) {
      const auto c = cut(rng);
      if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::size_t> counts;
    std::size_t prev = 0;
    for (auto c : cuts) {
      counts.push_back(c - prev);
      prev = c;
    }
    counts.push_back(big_n - prev);
    std::vector<double> weights(counts.size());
    double total = 0.0;
    for (auto& w : weights) total += (w = std::uniform_real_distribution<double>(0.01, 1.0)(rng));
    std::vector<Subset> subsets;
    for (std::size_t i = 0; i < counts.size(); ++i) subsets.push_back({counts[i], weights[i] / total});
    // Absorb the rounding of the normalization into the last subset.
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < subsets.size(); ++i) sum += subsets[i].probability;
    subsets.back().probability = 1.0 - sum;
    worst_excess = std::max(worst_excess, mean_time(PriorPartition(subsets), eps) - bound);
    worst_equality = std::max(worst_equality, std::abs(mean_time(PriorPartition::proportional(counts), eps) - bound));
  }
  sink.at_most("mean time <= no-prior time (Cauchy-Schwarz)", worst_excess, 1e-9);
  sink.at_most("equality for proportional priors", worst_equality, 1e-9);

  double scale_err = 0.0;
  for (double c : {0.5, 1.0, 2.0, 10.0, 32.0}) scale_err = std::max(scale_err, relative(total_time(1.0 / 32.0, eps, c) * c, total_time(1.0 / 32.0, eps)));
  sink.at_most("T scales as 1/c", scale_err, 1e-12);

  // With c = sqrt(N), T / (pi / 2 eps) = atan(b/a) 2 / (pi b), which lies in [1 - 2a/pi, 1].
  double worst_tail = 0.0;
  for (std::size_t big : {64u, 256u, 1024u, 4096u}) {
    const double am = 1.0 / std::sqrt(static_cast<double>(big));
    const double ratio = total_time(am, eps, std::sqrt(static_cast<double>(big))) / (std::numbers::pi / (2.0 * eps));
    worst_tail = std::max(worst_tail, (1.0 - ratio) / (2.0 * am / std::numbers::pi));
  }
  sink.at_most("c = sqrt(N): T approaches pi/(2 eps) within 2 a_m / pi", worst_tail, 1.0);

  double grover_err = 0.0;
  for (std::size_t big : {2u, 3u, 4u, 16u, 100u, 256u})
    for (std::size_t k = 0; k <= 48; ++k)
      grover_err = std::max(grover_err, std::abs(grover_simulate(big, k).success_prob - grover_closed_form(big, k)));
  sink.at_most("Grover iteration matches sin^2((2k+1) theta)", grover_err, 1e-12);
}

}  // namespace detail

inline VerifyReport verify(VerifySuite suite) {
  VerifyReport report;
  const bool all = suite == VerifySuite::all;
  if (all || suite == VerifySuite::spectral) detail::verify_spectral(report);
  if (all || suite == VerifySuite::schedule) detail::verify_schedule(report);
  if (all || suite == VerifySuite::dynamics) detail::verify_dynamics(report);
  if (all || suite == VerifySuite::theorems) detail::verify_theorems(report);
  return report;
}

}  // namespace adiasearch
