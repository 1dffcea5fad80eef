// Acceptance checks. Usage: adiasearch_acceptance [criterion...]; no argument runs all.
// One PASS/FAIL line per criterion, plus indented detail lines.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "adiasearch/adiasearch.hpp"
#include "oracles.hpp"

using namespace adiasearch;

namespace {

void note(const char* fmt, auto... args) {
  std::printf("    ");
  std::printf(fmt, args...);
  std::printf("\n");
}

double rel(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

// Closed-form running time against quadrature; small-a approximation.
bool criterion_1() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> log_a(std::log(1e-3), std::log(0.9));
  std::uniform_real_distribution<double> eps_dist(0.005, 0.5);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double a = std::exp(log_a(rng));
    const double eps = eps_dist(rng);
    worst = std::max(worst, rel(total_time(a, eps), oracle::local_running_time(a, eps)));
  }
  double worst_approx = 0.0;
  for (double a : {0.001, 0.005, 0.01, 0.02, 0.03, 0.05})
    worst_approx = std::max(worst_approx, rel(approximate_total_time(a, 0.1), total_time(a, 0.1)));
  note("closed form vs quadrature: max rel err %.3e (limit 1e-8)", worst);
  note("approximation for a <= 0.05: max rel err %.4f (limit 0.033)", worst_approx);
  return worst < 1e-8 && worst_approx < 0.033;
}

// T(4N)/T(N) for the uniform prior.
bool criterion_2() {
  bool ok = true;
  const double eps = 0.05;
  for (std::size_t n : {16u, 64u, 256u, 1024u, 4096u}) {
    const double t1 = total_time(1.0 / std::sqrt(static_cast<double>(n)), eps);
    const double t4 = total_time(1.0 / std::sqrt(static_cast<double>(4 * n)), eps);
    const double ratio = t4 / t1;
    const bool in = ratio >= 1.98 && ratio <= 2.02;
    ok = ok && in;
    note("N=%zu: T(4N)/T(N) = %.6f %s", n, ratio, in ? "in [1.98, 2.02]" : "OUTSIDE [1.98, 2.02]");
  }
  return ok;
}

// Only a_m matters: different N = 16 states with a_m = 0.25.
bool criterion_3() {
  const std::size_t n = 16;
  const double eps = 0.05;
  std::vector<double> amps(n);
  amps[5] = 0.25;
  double weight = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (i != 5) weight += static_cast<double>(i * i + 1);
  for (std::size_t i = 0; i < n; ++i)
    if (i != 5) amps[i] = std::sqrt((1.0 - 0.0625) * static_cast<double>(i * i + 1) / weight);
  const InitialState skewed(amps, 5);
  const auto uniform = uniform_state(n, 0);
  const auto prior = build_prior_state(PriorPartition({{4, 0.25}, {12, 0.75}}), 0);
  bool ok = true;
  const auto reference = Schedule::local(EffectiveHamiltonian(uniform.marked_amplitude()), eps);
  const auto ref_run = evolve_full(uniform, reference, 1.0);
  for (const InitialState* state : {&skewed, &prior}) {
    const EffectiveHamiltonian h(state->marked_amplitude());
    const auto schedule = Schedule::local(h, eps);
    const bool same_t = schedule.total_time() == reference.total_time();
    const auto run = evolve_full(*state, schedule, 1.0);
    const double diff = std::abs(run.fidelity - ref_run.fidelity);
    note("a_m=%.17g T equal bitwise: %s, fidelity diff %.2e", state->marked_amplitude(), same_t ? "yes" : "no", diff);
    ok = ok && same_t && diff < 1e-8;
  }
  return ok;
}

// 80/20 prior over N = 1000.
bool criterion_4() {
  const auto report = reproduce_paper(0.05);
  const double cond = report.find("prior-80/20", "conditional_ratio").value;
  const double mean = report.find("prior-80/20", "mean_ratio").value;
  note("conditional ratio %.6f (target 0.7906 +- 1e-4)", cond);
  note("mean ratio %.6f (target 0.9487 +- 1e-4)", mean);
  return std::abs(cond - 0.7906) <= 1e-4 && std::abs(mean - 0.9487) <= 1e-4;
}

// Mean time never exceeds the no-prior time; equality iff the prior is proportional.
bool criterion_5() {
  const std::size_t n = 1024;
  const double eps = 0.05;
  const double bound = no_prior_time(n, eps);
  std::mt19937_64 rng(5);
  double worst_excess = -1e300;
  double min_gap_nonprop = 1e300;
  double worst_prop = 0.0;
  bool ok = true;
  for (int i = 0; i < 1000; ++i) {
    auto partition = oracle::random_partition(rng, n, 10);
    const bool proportional = (i % 10 == 0);
    if (proportional) partition = PriorPartition::proportional([&] {
        std::vector<std::size_t> counts;
        for (const auto& s : partition.subsets()) counts.push_back(s.count);
        return counts;
      }());
    const double t = mean_time(partition, eps);
    worst_excess = std::max(worst_excess, t - bound);
    if (t > bound + 1e-9) ok = false;
    bool is_prop = true;
    for (const auto& s : partition.subsets())
      is_prop = is_prop && std::abs(s.probability - static_cast<double>(s.count) / n) < 1e-12;
    if (is_prop) {
      worst_prop = std::max(worst_prop, std::abs(t - bound));
      if (std::abs(t - bound) > 1e-9) ok = false;
    } else {
      min_gap_nonprop = std::min(min_gap_nonprop, bound - t);
      if (bound - t <= 1e-9) ok = false;
    }
  }
  note("max(mean - bound) = %.3e (limit 1e-9)", worst_excess);
  note("proportional priors: max |mean - bound| = %.3e", worst_prop);
  note("other priors: min (bound - mean) = %.3e", min_gap_nonprop);
  return ok;
}

// Scaling H by c rescales time only; constant-time regime at c = sqrt(N).
bool criterion_6() {
  bool ok = true;
  const std::size_t n = 64;
  const auto state = uniform_state(n, 0);
  const double a = state.marked_amplitude();
  const double eps = 0.05;
  const double base = total_time(a, eps, 1.0);
  double worst_tc = 0.0;
  for (double c : {0.5, 1.0, 2.0, 10.0, std::sqrt(static_cast<double>(n))})
    worst_tc = std::max(worst_tc, rel(total_time(a, eps, c) * c, base));
  note("T*c spread: max rel dev %.3e (limit 1e-12)", worst_tc);
  ok = ok && worst_tc <= 1e-12;

  const auto r1 = evolve_full(state, Schedule::local(EffectiveHamiltonian(a, 1.0), eps), 1.0);
  double worst_psi = 0.0;
  for (double c : {0.5, 2.0, 10.0}) {
    const auto rc = evolve_full(state, Schedule::local(EffectiveHamiltonian(a, c), eps), c);
    worst_psi = std::max(worst_psi, phase_aligned_distance(r1.final_state, rc.final_state));
  }
  note("final state under cH vs H at N=64: max amplitude diff %.3e (limit 1e-10)", worst_psi);
  ok = ok && worst_psi <= 1e-10;

  const double unit = std::numbers::pi / (2.0 * eps);
  for (std::size_t m : {64u, 256u, 1024u}) {
    const double root = std::sqrt(static_cast<double>(m));
    const double t = total_time(1.0 / root, eps, root);
    const double ratio = t / unit;
    const bool in = std::abs(ratio - 1.0) <= 0.02;
    ok = ok && in;
    note("N=%zu c=sqrt(N): T/(pi/2eps) = %.6f %s", m, ratio, in ? "within 2%" : "NOT within 2%");
  }
  return ok;
}

// Infidelity decreases with epsilon.
bool criterion_7() {
  const EffectiveHamiltonian h(1.0 / 8.0);
  const auto points = fidelity_sweep(h, {0.1, 0.05, 0.025, 0.0125});
  bool ok = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    note("eps=%.4f infidelity %.3e", points[i].epsilon, points[i].infidelity);
    if (i > 0 && !(points[i].infidelity < points[i - 1].infidelity)) ok = false;
  }
  const double last = points.back().infidelity;
  const double limit = 4.0 * 0.0125 * 0.0125;
  note("infidelity(0.0125) = %.3e vs 4 eps^2 = %.3e", last, limit);
  return ok && last < limit;
}

// Full N-dimensional evolution agrees with the 2-D reduction.
bool criterion_8() {
  bool ok = true;
  for (std::size_t n : {2u, 4u, 16u, 64u}) {
    const auto state = uniform_state(n, n - 1);
    const EffectiveHamiltonian h(state.marked_amplitude());
    const auto schedule = Schedule::local(h, 0.05);
    const auto reduced = evolve(h, schedule);
    const auto full = evolve_full(state, schedule, 1.0);
    double spec_err = 0.0;
    for (double s : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(full_matrix(state, s, 1.0), Eigen::EigenvaluesOnly);
      const auto [l1, l2] = eigenvalues(h, s);
      const auto& ev = solver.eigenvalues();
      spec_err = std::max({spec_err, std::abs(ev(0) - l1), std::abs(ev(1) - l2)});
      for (Eigen::Index i = 2; i < ev.size(); ++i) spec_err = std::max(spec_err, std::abs(ev(i) - 1.0));
    }
    const double diff = std::abs(full.fidelity - reduced.fidelity);
    note("N=%zu: fidelity diff %.2e, leakage %.2e, spectrum err %.2e", n, diff, full.leakage, spec_err);
    ok = ok && diff < 1e-8 && full.leakage < 1e-9 && spec_err < 1e-10;
  }
  return ok;
}

// Grover baseline.
bool criterion_9() {
  const double p4 = grover_simulate(4, 1).success_prob;
  double worst = 0.0;
  for (std::size_t n = 2; n <= 256; ++n) {
    const auto limit = static_cast<std::size_t>(3.0 * std::sqrt(static_cast<double>(n)));
    for (std::size_t k = 0; k <= limit; ++k)
      worst = std::max(worst, std::abs(grover_closed_form(n, k) - oracle::grover_state_vector(n, k)));
  }
  note("N=4, k=1: success %.17g (expected exactly 1)", p4);
  note("closed form vs state iteration, N <= 256: max diff %.3e (limit 1e-12)", worst);
  return p4 == 1.0 && worst <= 1e-12;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<bool()>> criteria = {criterion_1, criterion_2, criterion_3,
                                                       criterion_4, criterion_5, criterion_6,
                                                       criterion_7, criterion_8, criterion_9};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) {
    const int c = std::atoi(argv[i]);
    if (c < 1 || c > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion: %s\n", argv[i]);
      return 2;
    }
    selected.push_back(c);
  }
  if (selected.empty())
    for (int c = 1; c <= static_cast<int>(criteria.size()); ++c) selected.push_back(c);
  int failures = 0;
  for (int c : selected) {
    bool passed = false;
    try {
      passed = criteria[c - 1]();
    } catch (const std::exception& e) {
      note("exception: %s", e.what());
    }
    std::printf("criterion %d: %s\n", c, passed ? "PASS" : "FAIL");
    std::fflush(stdout);
    if (!passed) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
