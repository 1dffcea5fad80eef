#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "adiasearch/schedule.hpp"
#include "oracles.hpp"

namespace adiasearch {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(LocalTimeOfS, Endpoints) {
  const double total = total_time(0.1, 0.05);
  EXPECT_EQ(local_time_of_s(0.1, 0.05, 1.0, 0.0), 0.0);
  EXPECT_NEAR(local_time_of_s(0.1, 0.05, 1.0, 0.5), total / 2.0, 1e-12 * total);
  EXPECT_NEAR(local_time_of_s(0.1, 0.05, 1.0, 1.0), total, 1e-12 * total);
}

TEST(LocalTimeOfS, EqualAmplitudesGivePiOverTwoEps) {
  // a = b = 1/sqrt(2): ab = 1/2 and atan(1) = pi/4.
  for (double eps : {0.01, 0.1, 0.5}) {
    const double expected = kPi / (2.0 * eps);
    EXPECT_NEAR(local_time_of_s(1.0 / std::sqrt(2.0), eps, 1.0, 1.0), expected, 1e-13 * expected);
    EXPECT_NEAR(oracle::local_running_time(1.0 / std::sqrt(2.0), eps), expected, 1e-10 * expected);
  }
}

TEST(LocalTimeOfS, RejectsDomainViolations) {
  EXPECT_THROW(local_time_of_s(0.0, 0.1, 1.0, 0.5), InvalidInput);
  EXPECT_THROW(local_time_of_s(1.0, 0.1, 1.0, 0.5), InvalidInput);
  EXPECT_THROW(local_time_of_s(0.5, 0.0, 1.0, 0.5), InvalidInput);
  EXPECT_THROW(local_time_of_s(0.5, 0.6, 1.0, 0.5), InvalidInput);
  EXPECT_THROW(local_time_of_s(0.5, 0.1, -1.0, 0.5), InvalidInput);
  EXPECT_THROW(local_time_of_s(0.5, 0.1, 1.0, 1.5), InvalidInput);
}

TEST(TotalTime, FrozenExampleMatchesQuadrature) {
  // a_m = 0.1, eps = 0.1: atan(9.94987) / (0.1 * 0.0994987) = 147.80.
  const double exact = total_time(0.1, 0.1);
  EXPECT_NEAR(exact, 147.8037662374774, 1e-9);
  EXPECT_NEAR(oracle::local_running_time(0.1, 0.1), exact, 1e-9 * exact);
}

TEST(TotalTime, UniformApproachesSqrtNScaling) {
  for (std::size_t n : {1u << 10, 1u << 16, 1u << 20}) {
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    const double sqrt_n_time = kPi / (2.0 * 0.05) * std::sqrt(static_cast<double>(n));
    // atan(b/a) = pi/2 - atan(a/b): the leading correction is relative 2a/pi.
    const double rel = std::abs(total_time(a, 0.05) - sqrt_n_time) / sqrt_n_time;
    EXPECT_LT(rel, 2.0 * a / kPi);
    EXPECT_DOUBLE_EQ(approximate_total_time(a, 0.05), kPi / (2.0 * 0.05) / a);
  }
}

TEST(TotalTime, ConstantTimeWithSqrtNScale) {
  const double unit = kPi / (2.0 * 0.05);
  for (std::size_t n : {64u, 1024u, 1u << 20}) {
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    const double c = std::sqrt(static_cast<double>(n));
    EXPECT_NEAR(approximate_total_time(a, 0.05, c), unit, 1e-12 * unit);
    const double ratio = total_time(a, 0.05, c) / unit;
    EXPECT_LE(ratio, 1.0);
    EXPECT_GE(ratio, 1.0 - 2.0 * a / kPi);
  }
}

TEST(TotalTime, NumericFallbackAgrees) {
  for (double a : {0.003, 0.05, 0.3, 0.8})
    for (double eps : {0.01, 0.2}) {
      const double exact = total_time(a, eps, 2.0);
      EXPECT_NEAR(local_time_of_s_numeric(a, eps, 2.0, 1.0), exact, 1e-10 * exact);
      EXPECT_NEAR(local_time_of_s_numeric(a, eps, 2.0, 0.3), local_time_of_s(a, eps, 2.0, 0.3), 1e-10 * exact);
    }
}

TEST(ScheduleProperty, SymmetryAndDerivative) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = 0.01 + 0.9 * unit(rng);
    const double eps = 0.01 + 0.4 * unit(rng);
    const double c = 0.5 + 4.0 * unit(rng);
    const double total = total_time(a, eps, c);
    for (int i = 1; i < 100; ++i) {
      const double s = i / 100.0;
      EXPECT_NEAR(local_time_of_s(a, eps, c, s) + local_time_of_s(a, eps, c, 1.0 - s), total, 1e-12 * total);
      const double h = 1e-6;
      const double fd = (local_time_of_s(a, eps, c, s + h) - local_time_of_s(a, eps, c, s - h)) / (2.0 * h);
      const double g = gap(EffectiveHamiltonian(a, c), s);
      // dt/ds = 1 / (eps c g1^2) = c / (eps g^2) with g the scaled gap.
      const double expected = c / (eps * g * g);
      EXPECT_NEAR(fd, expected, 1e-6 * expected);
    }
  }
}

TEST(ScheduleProperty, RescalingIsExact) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double a = 0.001 + 0.99 * unit(rng);
    const double eps = 0.001 + 0.49 * unit(rng);
    const double c = 0.01 + 100.0 * unit(rng);
    const double t1 = total_time(a, eps, 1.0);
    EXPECT_NEAR(total_time(a, eps, c) * c, t1, 1e-14 * t1);
  }
}

TEST(ScheduleProperty, DependsOnlyOnMarkedAmplitude) {
  const auto uniform = uniform_state(16, 0);
  std::vector<double> lopsided(16, 0.0);
  lopsided[5] = 0.25;
  lopsided[0] = std::sqrt(1.0 - 0.0625);
  const InitialState other(lopsided, 5);
  const auto a = Schedule::local(EffectiveHamiltonian(uniform.marked_amplitude()), 0.05);
  const auto b = Schedule::local(EffectiveHamiltonian(other.marked_amplitude()), 0.05);
  EXPECT_EQ(a.total_time(), b.total_time());
  for (int i = 0; i <= 10; ++i) EXPECT_EQ(a.s_of_fraction(i / 10.0), b.s_of_fraction(i / 10.0));
}

TEST(ScheduleProperty, ScalingRatioTendsToTwo) {
  // T(4N)/T(N) decreases monotonically towards 2 from above.
  double previous = 1e9;
  for (std::size_t n = 16; n <= (1u << 22); n *= 4) {
    const double ratio = total_time(1.0 / std::sqrt(4.0 * n), 0.05) / total_time(1.0 / std::sqrt(double(n)), 0.05);
    EXPECT_GT(ratio, 2.0);
    EXPECT_LT(ratio, previous);
    previous = ratio;
    if (n >= 1024) {
      EXPECT_LT(ratio, 2.02);
    }
  }
}

TEST(SOfT, Examples) {
  const auto local = Schedule::local(EffectiveHamiltonian(0.05), 0.1);
  const double total = local.total_time();
  EXPECT_EQ(local.s_of_t(0.0), 0.0);
  EXPECT_EQ(local.s_of_t(total), 1.0);
  EXPECT_NEAR(local.s_of_t(total / 2.0), 0.5, 1e-15);
  const auto linear = Schedule::linear(EffectiveHamiltonian(0.05), 0.1, 10.0);
  EXPECT_NEAR(linear.s_of_t(3.0), 0.3, 1e-15);
  EXPECT_THROW((void)local.s_of_t(-1.0), InvalidInput);
  EXPECT_THROW((void)local.s_of_t(total * 1.01), InvalidInput);
}

TEST(SOfT, RoundTripAndBisection) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (double a : {0.001, 0.05, 0.5, 0.95}) {
    const auto schedule = Schedule::local(EffectiveHamiltonian(a, 1.7), 0.05);
    for (int i = 0; i < 1000; ++i) {
      const double s = unit(rng);
      const double t = local_time_of_s(a, 0.05, 1.7, s);
      EXPECT_NEAR(schedule.s_of_t(t), s, 1e-10);
      if (i % 50 == 0) {
        EXPECT_NEAR(schedule.s_of_t_bisection(t), s, 1e-10);
      }
    }
  }
}

TEST(SOfT, MonotoneOnFineGrid) {
  const auto schedule = Schedule::local(EffectiveHamiltonian(0.01), 0.05);
  double previous = -1.0;
  for (int i = 0; i <= 100000; ++i) {
    const double s = schedule.s_of_fraction(i / 100000.0);
    EXPECT_GE(s, previous);
    previous = s;
  }
}

TEST(PriorTime, SingleSubsetIsNoPriorTime) {
  const auto partition = PriorPartition::uniform(1000);
  EXPECT_NEAR(theorem2_time(partition, 0, 0.05), no_prior_time(1000, 0.05), 1e-10);
  EXPECT_NEAR(mean_time(partition, 0.05), no_prior_time(1000, 0.05), 1e-10);
}

TEST(PriorTime, EightyTwentyExample) {
  const PriorPartition partition({{500, 0.8}, {500, 0.2}});
  const double conditional = theorem2_time(partition, 0, 0.05);
  EXPECT_NEAR(conditional, 25.0 * kPi / 0.1, 1e-10);
  EXPECT_NEAR(conditional, 785.40, 0.005);
  EXPECT_NEAR(no_prior_time(1000, 0.05), 993.46, 0.005);
  EXPECT_NEAR(conditional / no_prior_time(1000, 0.05), std::sqrt(0.5 / 0.8), 1e-14);
  EXPECT_NEAR(conditional / no_prior_time(1000, 0.05), 0.7906, 1e-4);
  EXPECT_TRUE(prior_assumption_holds(partition, 0));
  EXPECT_NEAR(theorem2_exact_time(partition, 0, 0.05), total_time(0.04, 0.05), 1e-12);
}

TEST(PriorTime, DegenerateAndWarnings) {
  EXPECT_THROW(theorem2_time(PriorPartition({{1, 1.0}}), 0, 0.1), InvalidInput);
  EXPECT_THROW(theorem2_time(PriorPartition({{2, 1.0}}), 1, 0.1), InvalidInput);
  EXPECT_FALSE(prior_assumption_holds(PriorPartition({{2, 0.5}, {2, 0.5}}), 0));
}

TEST(MeanTime, Examples) {
  const PriorPartition partition({{500, 0.8}, {500, 0.2}});
  EXPECT_NEAR(mean_time(partition, 0.05), 30.0 * kPi / 0.1, 1e-10);
  EXPECT_NEAR(mean_time(partition, 0.05), 942.48, 0.005);
  EXPECT_NEAR(mean_time(partition, 0.05) / no_prior_time(1000, 0.05), 0.94868, 1e-5);
  const auto proportional = PriorPartition::proportional({100, 300, 624});
  EXPECT_NEAR(mean_time(proportional, 0.05), no_prior_time(1024, 0.05), 1e-9);
}

TEST(MeanTimeProperty, CauchySchwarzBound) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto partition = oracle::random_partition(rng, 1024, 10);
    const double bound = no_prior_time(1024, 0.05);
    EXPECT_LE(mean_time(partition, 0.05), bound + 1e-9);
    std::vector<std::size_t> counts;
    for (const auto& s : partition.subsets()) counts.push_back(s.count);
    EXPECT_NEAR(mean_time(PriorPartition::proportional(counts), 0.05), bound, 1e-9);
  }
}

TEST(Adiabaticity, LocalScheduleSaturatesConservativeBound) {
  for (double a : {0.01, 0.1, 0.5})
    for (double c : {1.0, 4.0}) {
      const auto report = adiabaticity_report(Schedule::local(EffectiveHamiltonian(a, c), 0.05), 2001);
      EXPECT_TRUE(report.local_valid);
      EXPECT_LE(report.worst_local_ratio, 1.0 + 1e-12);
      EXPECT_NEAR(report.g_min, c * a, 1e-15);
      EXPECT_DOUBLE_EQ(report.epsilon_budget, 0.05);
    }
}

TEST(Adiabaticity, CouplingElementBoundedByOne) {
  for (double a : {0.001, 0.1, 0.7})
    for (int i = 0; i <= 1000; ++i) EXPECT_LE(coupling_matrix_element(EffectiveHamiltonian(a), i / 1000.0), 1.0 + 1e-15);
}

TEST(Adiabaticity, LinearScheduleViolatesNearGapMinimum) {
  const EffectiveHamiltonian h(0.1);
  const auto linear = Schedule::linear(h, 0.1);
  const auto report = adiabaticity_report(linear, 1001);
  EXPECT_FALSE(report.local_valid);
  EXPECT_NEAR(report.worst_s, 0.5, 1e-9);
  EXPECT_DOUBLE_EQ(report.g_min, 0.1);
  // At s = 1/2 the coupling element equals b, so the ratio is b / (T eps a^2).
  EXPECT_NEAR(coupling_matrix_element(h, 0.5), h.b(), 1e-15);
  EXPECT_NEAR(report.worst_local_ratio, h.b() / (linear.total_time() * 0.1 * 0.01), 1e-9);
}

TEST(Adiabaticity, GlobalRatioIsDmaxOverGminSquared) {
  const auto report = adiabaticity_report(Schedule::local(EffectiveHamiltonian(0.2), 0.05), 101);
  EXPECT_NEAR(report.ratio, report.d_max / (0.2 * 0.2), 1e-15);
  EXPECT_EQ(report.global_valid, report.ratio <= 0.05);
}

TEST(SampleSchedule, Rows) {
  const auto schedule = Schedule::local(EffectiveHamiltonian(0.125), 0.1);
  const auto rows = sample_schedule(schedule, 5);
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows.front().s, 0.0);
  EXPECT_EQ(rows.back().s, 1.0);
  EXPECT_EQ(rows.back().t, schedule.total_time());
  EXPECT_NEAR(rows[2].s, 0.5, 1e-15);
  EXPECT_NEAR(rows[2].ds_dt, 0.1 * 0.125 * 0.125, 1e-15);
  EXPECT_NEAR(rows[0].ds_dt, 0.1, 1e-15);
  EXPECT_THROW(sample_schedule(schedule, 1), InvalidInput);
}

}  // namespace
}  // namespace adiasearch
