#pragma once

// H(s) = c[(1-s)(I - |psi0><psi0|) + s(I - |m><m|)] in two representations:
// the exact 2x2 block on span{|m>, |psi0>} and the dense N x N oracle.
//
// Effective basis: |alpha1> = |m>, |alpha2> = (|psi0> - a|m>) / b with
// a = a_m and b = sqrt(1 - a^2), so |psi0> = (a, b).

#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <utility>

#include <Eigen/Dense>

#include "adiasearch/errors.hpp"
#include "adiasearch/model.hpp"

namespace adiasearch {

inline constexpr std::size_t kDefaultOracleCap = 256;

/// Largest N accepted by the dense full-space routines. `ADIASEARCH_ORACLE_CAP`
/// overrides the default of 256.
inline std::size_t oracle_cap() {
  if (const char* env = std::getenv("ADIASEARCH_ORACLE_CAP"); env && *env) {
    try {
      const long long cap = std::stoll(env);
      if (cap >= 2) return static_cast<std::size_t>(cap);
    } catch (const std::exception&) {
    }
    throw InvalidInput(std::string("ADIASEARCH_ORACLE_CAP is not an integer >= 2: ") + env);
  }
  return kDefaultOracleCap;
}

struct EffectiveHamiltonian {
  double a_m = 0.5;
  double scale = 1.0;

  EffectiveHamiltonian() = default;
  EffectiveHamiltonian(double marked_amplitude, double scale_c = 1.0) : a_m(marked_amplitude), scale(scale_c) {
    detail::require(a_m > kAmplitudeGuard && a_m < 1.0 - kAmplitudeGuard, "a_m must lie strictly inside (0, 1)");
    detail::require(std::isfinite(scale) && scale > 0.0, "scale factor must be positive");
  }

  [[nodiscard]] double b() const noexcept { return std::sqrt(1.0 - a_m * a_m); }
};

struct SpectralSample {
  double s = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double gap = 0.0;
};

namespace detail {

inline void require_unit_interval(double s) {
  require(s >= 0.0 && s <= 1.0, "interpolation parameter s must lie in [0, 1]");
}

// 1 - 4(1-a^2)s(1-s), written as a^2 + b^2(2s-1)^2 to avoid cancellation near s = 1/2.
inline double unscaled_gap_squared(double a, double s) noexcept {
  const double u = 2.0 * s - 1.0;
  return a * a + (1.0 - a * a) * u * u;
}

}  // namespace detail

inline Eigen::Matrix2d matrix_2d(const EffectiveHamiltonian& h, double s) {
  detail::require_unit_interval(s);
  const double a = h.a_m;
  const double b = h.b();
  Eigen::Matrix2d m;
  m(0, 0) = a * a * (s - 1.0) - s + 1.0;
  m(0, 1) = a * b * (s - 1.0);
  m(1, 0) = m(0, 1);
  m(1, 1) = (1.0 - a * a) * (s - 1.0) + 1.0;
  return h.scale * m;
}

/// c * sqrt(1 - 4(1 - a_m^2) s (1 - s)); minimum c * a_m at s = 1/2.
inline double gap(const EffectiveHamiltonian& h, double s) {
  detail::require_unit_interval(s);
  return h.scale * std::sqrt(detail::unscaled_gap_squared(h.a_m, s));
}

/// The two eigenvalues of the effective block, ascending. The remaining
/// N - 2 eigenvalues of the full operator all equal c.
inline std::pair<double, double> eigenvalues(const EffectiveHamiltonian& h, double s) {
  const double g = gap(h, s) / h.scale;
  return {h.scale * 0.5 * (1.0 - g), h.scale * 0.5 * (1.0 + g)};
}

inline SpectralSample spectral_sample(const EffectiveHamiltonian& h, double s) {
  const auto [l1, l2] = eigenvalues(h, s);
  return {s, l1, l2, gap(h, s)};
}

/// Instantaneous eigenvectors of the 2x2 block: column 0 is the ground state,
/// column 1 the excited state. Independent of c. Signs follow the convention
/// that the ground state at s = 0 is exactly (a, b).
inline Eigen::Matrix2d eigenvectors_2d(const EffectiveHamiltonian& h, double s) {
  detail::require_unit_interval(s);
  const double a = h.a_m;
  const double b = h.b();
  const double g = std::sqrt(detail::unscaled_gap_squared(a, s));
  // Unscaled block [[p, q], [q, r]] with q = ab(s-1) <= 0.
  const double p = a * a * (s - 1.0) - s + 1.0;
  const double q = a * b * (s - 1.0);
  const double r = 1.0 - p;
  const double lambda1 = 0.5 * (1.0 - g);
  // Two algebraically equivalent null vectors of (H - lambda1); pick the better conditioned one.
  Eigen::Vector2d v1(-q, p - lambda1);
  Eigen::Vector2d v2(r - lambda1, -q);
  Eigen::Vector2d ground = v1.squaredNorm() >= v2.squaredNorm() ? v1 : v2;
  if (ground.squaredNorm() == 0.0) {
    // s = 1 exactly: H = diag(0, 1), ground state |m>.
    ground = Eigen::Vector2d(1.0, 0.0);
  }
  ground.normalize();
  if (ground(0) + ground(1) < 0.0 || (ground(0) + ground(1) == 0.0 && ground(0) < 0.0)) ground = -ground;
  Eigen::Matrix2d vecs;
  vecs.col(0) = ground;
  vecs.col(1) = Eigen::Vector2d(-ground(1), ground(0));
  return vecs;
}

/// Dense c[(1-s)(I - psi0 psi0^T) + s(I - e_m e_m^T)]. Test oracle only; N is
/// capped by oracle_cap().
inline Eigen::MatrixXd full_matrix(const InitialState& state, double s, double c) {
  detail::require_unit_interval(s);
  detail::require(std::isfinite(c) && c > 0.0, "scale factor must be positive");
  const auto n = state.size();
  detail::require(n <= oracle_cap(),
                  "N = " + std::to_string(n) + " exceeds the full-space oracle cap of " + std::to_string(oracle_cap()));
  const Eigen::Map<const Eigen::VectorXd> psi0(state.amplitudes().data(), static_cast<Eigen::Index>(n));
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - (1.0 - s) * psi0 * psi0.transpose();
  const auto m = static_cast<Eigen::Index>(state.marked_index());
  h(m, m) -= s;
  return c * h;
}

}  // namespace adiasearch
