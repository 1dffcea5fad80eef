#pragma once

// Evolution schedules s(t) and running-time formulas.
//
// The local schedule saturates ds/dt = eps * g(s)^2 / c (g the scaled gap),
// i.e. it uses the bound |<E1|dH/ds|E0>| <= c instead of the exact matrix
// element. Integrating 1/(eps c g1^2) gives
//
//   t(s) = [atan(r(2s-1)) + atan(r)] / (2 eps a b c),   r = b/a,
//   T    = atan(r) / (eps a b c).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "adiasearch/errors.hpp"
#include "adiasearch/model.hpp"
#include "adiasearch/spectral.hpp"

namespace adiasearch {

inline constexpr double kMaxEpsilon = 0.5;
// p_M / n_M above this breaks the small-amplitude assumption behind the sqrt(n/p) estimate.
inline constexpr double kPriorAssumptionLimit = 0.01;

namespace detail {

inline void require_epsilon(double epsilon) {
  require(std::isfinite(epsilon) && epsilon > 0.0 && epsilon <= kMaxEpsilon, "epsilon must lie in (0, 0.5]");
}

inline void require_scale(double c) { require(std::isfinite(c) && c > 0.0, "scale factor must be positive"); }

inline void require_amplitude(double a) {
  require(a > kAmplitudeGuard && a < 1.0 - kAmplitudeGuard, "a_m must lie strictly inside (0, 1)");
}

}  // namespace detail

inline double local_time_of_s(double a_m, double epsilon, double c, double s) {
  detail::require_amplitude(a_m);
  detail::require_epsilon(epsilon);
  detail::require_scale(c);
  detail::require_unit_interval(s);
  const double b = std::sqrt(1.0 - a_m * a_m);
  const double r = b / a_m;
  return (std::atan(r * (2.0 * s - 1.0)) + std::atan(r)) / (2.0 * epsilon * a_m * b) / c;
}

/// Running time of the local schedule, exact closed form. T(c) = T(1) / c.
inline double total_time(double a_m, double epsilon, double c = 1.0) {
  detail::require_amplitude(a_m);
  detail::require_epsilon(epsilon);
  detail::require_scale(c);
  const double b = std::sqrt(1.0 - a_m * a_m);
  return std::atan(b / a_m) / (epsilon * a_m * b) / c;
}

/// Small-a_m form of total_time: (pi / 2 eps) / a_m / c.
inline double approximate_total_time(double a_m, double epsilon, double c = 1.0) {
  detail::require_amplitude(a_m);
  detail::require_epsilon(epsilon);
  detail::require_scale(c);
  return std::numbers::pi / (2.0 * epsilon) / a_m / c;
}

/// Reference time of the search with no prior knowledge, (pi / 2 eps) sqrt(N).
inline double no_prior_time(std::size_t n_total, double epsilon) {
  detail::require_epsilon(epsilon);
  return std::numbers::pi / (2.0 * epsilon) * std::sqrt(static_cast<double>(n_total));
}

/// sqrt(n_M / p_M) * pi / (2 eps): the running time when the marked item sits
/// in subset `marked_subset`. Only meaningful when p_M / n_M << 1, see
/// prior_assumption_holds().
inline double theorem2_time(const PriorPartition& partition, std::size_t marked_subset, double epsilon) {
  detail::require_epsilon(epsilon);
  detail::require(marked_subset < partition.size(), "marked subset index out of range");
  const double w = partition.weight(marked_subset);
  detail::require(std::sqrt(w) < 1.0 - kAmplitudeGuard, "marked amplitude of 1 is degenerate");
  return std::numbers::pi / (2.0 * epsilon) / std::sqrt(w);
}

/// Exact counterpart of theorem2_time via the closed form at a_m = sqrt(p_M / n_M).
inline double theorem2_exact_time(const PriorPartition& partition, std::size_t marked_subset, double epsilon) {
  detail::require(marked_subset < partition.size(), "marked subset index out of range");
  return total_time(std::sqrt(partition.weight(marked_subset)), epsilon, 1.0);
}

inline bool prior_assumption_holds(const PriorPartition& partition, std::size_t marked_subset) {
  return partition.weight(marked_subset) <= kPriorAssumptionLimit;
}

/// Expected running time over the prior: (pi / 2 eps) * sum_i sqrt(p_i n_i).
/// Never exceeds no_prior_time(N, eps); equal iff p_i = n_i / N for all i.
inline double mean_time(const PriorPartition& partition, double epsilon) {
  detail::require_epsilon(epsilon);
  double sum = 0.0;
  for (const auto& s : partition.subsets()) sum += std::sqrt(s.probability * static_cast<double>(s.count));
  return std::numbers::pi / (2.0 * epsilon) * sum;
}

/// Adaptive Gauss-Kronrod evaluation of t(s) = int_0^s ds' / (eps c g1(s')^2).
/// Validation path for local_time_of_s; not used by the schedule itself.
inline double local_time_of_s_numeric(double a_m, double epsilon, double c, double s, double tolerance = 1e-12) {
  detail::require_amplitude(a_m);
  detail::require_epsilon(epsilon);
  detail::require_scale(c);
  detail::require_unit_interval(s);
  if (s == 0.0) return 0.0;
  auto integrand = [&](double x) { return 1.0 / (epsilon * c * detail::unscaled_gap_squared(a_m, x)); };
  using boost::math::quadrature::gauss_kronrod;
  // Split at the gap minimum so the peak of the integrand is a panel edge.
  if (s <= 0.5) return gauss_kronrod<double, 31>::integrate(integrand, 0.0, s, 30, tolerance);
  return gauss_kronrod<double, 31>::integrate(integrand, 0.0, 0.5, 30, tolerance) +
         gauss_kronrod<double, 31>::integrate(integrand, 0.5, s, 30, tolerance);
}

enum class ScheduleKind { local, linear };

inline std::string_view to_string(ScheduleKind kind) { return kind == ScheduleKind::local ? "local" : "linear"; }

inline ScheduleKind parse_schedule_kind(std::string_view text) {
  if (text == "local") return ScheduleKind::local;
  if (text == "linear") return ScheduleKind::linear;
  throw InvalidInput("unknown schedule kind '" + std::string(text) + "' (expected local or linear)");
}

/// A monotone map s(t) on [0, T] with s(0) = 0 and s(T) = 1.
class Schedule {
 public:
  /// Local adiabatic schedule; T is the closed-form total_time.
  static Schedule local(const EffectiveHamiltonian& h, double epsilon) {
    return Schedule(ScheduleKind::local, h, epsilon, adiasearch::total_time(h.a_m, epsilon, h.scale));
  }

  /// Linear ramp s = t / T. Defaults to the local schedule's running time.
  static Schedule linear(const EffectiveHamiltonian& h, double epsilon, double total = 0.0) {
    if (total == 0.0) total = adiasearch::total_time(h.a_m, epsilon, h.scale);
    return Schedule(ScheduleKind::linear, h, epsilon, total);
  }

  static Schedule make(ScheduleKind kind, const EffectiveHamiltonian& h, double epsilon) {
    return kind == ScheduleKind::local ? local(h, epsilon) : linear(h, epsilon);
  }

  [[nodiscard]] ScheduleKind kind() const noexcept { return kind_; }
  [[nodiscard]] double epsilon() const noexcept { return epsilon_; }
  [[nodiscard]] double a_m() const noexcept { return h_.a_m; }
  [[nodiscard]] double scale() const noexcept { return h_.scale; }
  [[nodiscard]] double total_time() const noexcept { return total_; }
  [[nodiscard]] const EffectiveHamiltonian& hamiltonian() const noexcept { return h_; }

  [[nodiscard]] double s_of_t(double t) const {
    detail::require(t >= 0.0 && t <= total_, "t must lie in [0, T]");
    if (t == total_) return 1.0;
    return s_of_fraction(t / total_);
  }

  /// s as a function of x = t / T. The local inverse depends on x alone, so
  /// schedules that differ only in c give bit-identical s at equal x.
  [[nodiscard]] double s_of_fraction(double x) const {
    detail::require(x >= 0.0 && x <= 1.0, "time fraction must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    if (kind_ == ScheduleKind::linear) return x;
    const double a = h_.a_m;
    const double b = h_.b();
    const double s = 0.5 + a / (2.0 * b) * std::tan(std::atan(b / a) * (2.0 * x - 1.0));
    return std::clamp(s, 0.0, 1.0);
  }

  /// Inverse of t(s) by bisection on the monotone closed form; cross-check
  /// for the analytic inverse.
  [[nodiscard]] double s_of_t_bisection(double t, double tolerance = 1e-12) const {
    detail::require(t >= 0.0 && t <= total_, "t must lie in [0, T]");
    double lo = 0.0;
    double hi = 1.0;
    while (hi - lo > tolerance) {
      const double mid = 0.5 * (lo + hi);
      (time_of_s(mid) < t ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  }

  [[nodiscard]] double time_of_s(double s) const {
    if (kind_ == ScheduleKind::linear) {
      detail::require_unit_interval(s);
      return s * total_;
    }
    return local_time_of_s(h_.a_m, epsilon_, h_.scale, s);
  }

  /// ds/dt at interpolation parameter s.
  [[nodiscard]] double ds_dt_at_s(double s) const {
    if (kind_ == ScheduleKind::linear) {
      detail::require_unit_interval(s);
      return 1.0 / total_;
    }
    const double g = gap(h_, s);
    return epsilon_ * g * g / h_.scale;
  }

  [[nodiscard]] double ds_dt(double t) const { return ds_dt_at_s(s_of_t(t)); }

 private:
  Schedule(ScheduleKind kind, const EffectiveHamiltonian& h, double epsilon, double total)
      : kind_(kind), h_(h), epsilon_(epsilon), total_(total) {
    detail::require_epsilon(epsilon);
    detail::require(std::isfinite(total) && total > 0.0, "total time must be positive");
  }

  ScheduleKind kind_;
  EffectiveHamiltonian h_;
  double epsilon_;
  double total_;
};

struct ScheduleSample {
  double t = 0.0;
  double s = 0.0;
  double gap = 0.0;
  double ds_dt = 0.0;
};

/// `samples` points uniformly spaced in t over [0, T], endpoints included.
inline std::vector<ScheduleSample> sample_schedule(const Schedule& schedule, std::size_t samples) {
  detail::require(samples >= 2, "need at least two samples");
  std::vector<ScheduleSample> out;
  out.reserve(samples);
  const double total = schedule.total_time();
  for (std::size_t i = 0; i < samples; ++i) {
    const double t = i + 1 == samples ? total : total * static_cast<double>(i) / static_cast<double>(samples - 1);
    const double s = schedule.s_of_t(t);
    out.push_back({t, s, gap(schedule.hamiltonian(), s), schedule.ds_dt_at_s(s)});
  }
  return out;
}

/// |<E1(s)| dH/ds |E0(s)>| for the unscaled Hamiltonian, dH/ds = |psi0><psi0| - |m><m|.
/// Bounded by 1; multiply by c for the scaled operator.
inline double coupling_matrix_element(const EffectiveHamiltonian& h, double s) {
  const Eigen::Matrix2d vecs = eigenvectors_2d(h, s);
  const double a = h.a_m;
  const double b = h.b();
  Eigen::Matrix2d dh;
  dh << a * a - 1.0, a * b, a * b, b * b;
  return std::abs(vecs.col(1).dot(dh * vecs.col(0)));
}

/// Global (D_max / g_min^2 <= eps) and local (|ds/dt| <= eps g^2 / |<dH/ds>_10|
/// at every sample) adiabaticity diagnostics.
struct AdiabaticityReport {
  double g_min = 0.0;
  double d_max = 0.0;
  double ratio = 0.0;           // D_max / g_min^2
  double epsilon_budget = 0.0;  // the schedule's epsilon
  bool global_valid = false;
  // max over samples of |ds/dt| |<dH/ds>_10| / (eps g^2); <= 1 means the local condition holds.
  double worst_local_ratio = 0.0;
  double worst_s = 0.0;
  bool local_valid = false;
  std::size_t samples = 0;
};

inline AdiabaticityReport adiabaticity_report(const Schedule& schedule, std::size_t samples) {
  detail::require(samples >= 2, "need at least two samples");
  const auto& h = schedule.hamiltonian();
  const double eps = schedule.epsilon();
  AdiabaticityReport report;
  report.g_min = h.scale * h.a_m;
  report.epsilon_budget = eps;
  report.samples = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(samples - 1);
    const double rate = std::abs(schedule.ds_dt_at_s(s));
    const double element = h.scale * coupling_matrix_element(h, s);
    const double g = gap(h, s);
    report.d_max = std::max(report.d_max, rate * element);
    const double local = rate * element / (eps * g * g);
    if (local > report.worst_local_ratio) {
      report.worst_local_ratio = local;
      report.worst_s = s;
    }
  }
  report.ratio = report.d_max / (report.g_min * report.g_min);
  report.global_valid = report.ratio <= eps;
  // Slack of a few ulps: the local schedule saturates the bound when the element reaches 1.
  report.local_valid = report.worst_local_ratio <= 1.0 + 1e-12;
  return report;
}

}  // namespace adiasearch
