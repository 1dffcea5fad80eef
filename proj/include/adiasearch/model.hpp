#pragma once

// Database model: prior partitions over {0..N-1} and the initial states
// built from them. Indices are zero-based throughout.

#include <cmath>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "adiasearch/errors.hpp"

namespace adiasearch {

inline constexpr double kProbabilitySumTolerance = 1e-12;
inline constexpr double kNormTolerance = 1e-12;
// Marked amplitudes closer than this to 0 or 1 are rejected.
inline constexpr double kAmplitudeGuard = 1e-9;

/// One block of a prior partition: `count` consecutive items that together
/// hold the marked item with probability `probability`.
struct Subset {
  std::size_t count = 0;
  double probability = 0.0;

  friend bool operator==(const Subset&, const Subset&) = default;
};

/// A partition of the database into consecutive blocks with known
/// probabilities of containing the marked item.
class PriorPartition {
 public:
  explicit PriorPartition(std::vector<Subset> subsets) : subsets_(std::move(subsets)) {
    detail::require(!subsets_.empty(), "partition must contain at least one subset");
    double total_p = 0.0;
    for (const auto& s : subsets_) {
      detail::require(s.count >= 1, "every subset must contain at least one item");
      detail::require(std::isfinite(s.probability) && s.probability > 0.0 && s.probability <= 1.0,
                      "subset probabilities must lie in (0, 1]");
      n_total_ += s.count;
      total_p += s.probability;
    }
    detail::require(std::abs(total_p - 1.0) <= kProbabilitySumTolerance,
                    "subset probabilities must sum to 1");
  }

  /// Single subset covering all N items with probability 1 (no prior knowledge).
  static PriorPartition uniform(std::size_t n_total) {
    return PriorPartition({Subset{n_total, 1.0}});
  }

  /// Subsets whose probabilities equal their share of the database.
  static PriorPartition proportional(const std::vector<std::size_t>& counts) {
    const auto n = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
    std::vector<Subset> subsets;
    subsets.reserve(counts.size());
    for (auto c : counts) subsets.push_back({c, static_cast<double>(c) / static_cast<double>(n)});
    return PriorPartition(std::move(subsets));
  }

  [[nodiscard]] std::size_t n_total() const noexcept { return n_total_; }
  [[nodiscard]] std::size_t size() const noexcept { return subsets_.size(); }
  [[nodiscard]] const std::vector<Subset>& subsets() const noexcept { return subsets_; }
  [[nodiscard]] const Subset& operator[](std::size_t i) const { return subsets_.at(i); }

  /// First item index of subset `i`; blocks are laid out consecutively.
  [[nodiscard]] std::size_t begin_index(std::size_t i) const {
    detail::require(i < subsets_.size(), "subset index out of range");
    std::size_t begin = 0;
    for (std::size_t j = 0; j < i; ++j) begin += subsets_[j].count;
    return begin;
  }

  [[nodiscard]] std::size_t subset_of(std::size_t index) const {
    detail::require(index < n_total_, "item index out of range");
    std::size_t end = 0;
    for (std::size_t i = 0; i < subsets_.size(); ++i) {
      end += subsets_[i].count;
      if (index < end) return i;
    }
    return subsets_.size() - 1;  // unreachable
  }

  /// p_i / n_i, the squared amplitude of every item in subset `i`.
  [[nodiscard]] double weight(std::size_t i) const {
    const auto& s = subsets_.at(i);
    return s.probability / static_cast<double>(s.count);
  }

 private:
  std::vector<Subset> subsets_;
  std::size_t n_total_ = 0;
};

/// Parses `p:n` pairs separated by commas, e.g. `0.8:500,0.2:500`.
inline PriorPartition parse_partition(std::string_view text) {
  std::vector<Subset> subsets;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string item(text.substr(pos, comma - pos));
    const auto colon = item.find(':');
    detail::require(colon != std::string::npos, "partition entry '" + item + "' is not of the form p:n");
    try {
      std::size_t used_p = 0;
      std::size_t used_n = 0;
      const std::string p_text = item.substr(0, colon);
      const std::string n_text = item.substr(colon + 1);
      const double p = std::stod(p_text, &used_p);
      const long long n = std::stoll(n_text, &used_n);
      detail::require(used_p == p_text.size() && used_n == n_text.size() && n > 0,
                      "malformed partition entry '" + item + "'");
      subsets.push_back({static_cast<std::size_t>(n), p});
    } catch (const std::logic_error&) {
      throw InvalidInput("malformed partition entry '" + item + "'");
    }
    pos = comma + 1;
  }
  return PriorPartition(std::move(subsets));
}

inline std::string to_string(const PriorPartition& partition) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t i = 0; i < partition.size(); ++i) {
    if (i) out << ',';
    out << partition[i].probability << ':' << partition[i].count;
  }
  return out.str();
}

/// Accepts a JSON array of `{"p": ..., "n": ...}` objects.
inline PriorPartition partition_from_json(const nlohmann::json& j) {
  detail::require(j.is_array(), "partition JSON must be an array of {p, n} objects");
  std::vector<Subset> subsets;
  for (const auto& item : j) {
    detail::require(item.is_object() && item.contains("p") && item.contains("n"),
                    "partition JSON entries need fields p and n");
    detail::require(item["p"].is_number() && item["n"].is_number_integer() && item["n"].get<long long>() > 0,
                    "partition JSON entry has wrong field types");
    subsets.push_back({item["n"].get<std::size_t>(), item["p"].get<double>()});
  }
  return PriorPartition(std::move(subsets));
}

inline nlohmann::json to_json(const PriorPartition& partition) {
  auto out = nlohmann::json::array();
  for (const auto& s : partition.subsets()) out.push_back({{"p", s.probability}, {"n", s.count}});
  return out;
}

/// Real amplitude vector of the starting state together with the index of
/// the marked item.
class InitialState {
 public:
  InitialState(std::vector<double> amplitudes, std::size_t marked_index)
      : amplitudes_(std::move(amplitudes)), marked_(marked_index) {
    detail::require(amplitudes_.size() >= 2, "database must hold at least two items");
    detail::require(marked_ < amplitudes_.size(), "marked index out of range");
    // Compensated sum; N can be large enough for naive summation to drift past the tolerance.
    double norm2 = 0.0;
    double carry = 0.0;
    for (double a : amplitudes_) {
      detail::require(std::isfinite(a), "amplitudes must be finite");
      const double y = a * a - carry;
      const double t = norm2 + y;
      carry = (t - norm2) - y;
      norm2 = t;
    }
    detail::require(std::abs(norm2 - 1.0) <= kNormTolerance, "initial state is not normalized");
    const double am = amplitudes_[marked_];
    detail::require(am > kAmplitudeGuard && am < 1.0 - kAmplitudeGuard,
                    "marked amplitude must lie strictly inside (0, 1)");
  }

  [[nodiscard]] std::size_t size() const noexcept { return amplitudes_.size(); }
  [[nodiscard]] std::size_t marked_index() const noexcept { return marked_; }
  [[nodiscard]] const std::vector<double>& amplitudes() const noexcept { return amplitudes_; }
  [[nodiscard]] double marked_amplitude() const noexcept { return amplitudes_[marked_]; }

 private:
  std::vector<double> amplitudes_;
  std::size_t marked_;
};

inline double marked_amplitude(const InitialState& state) noexcept { return state.marked_amplitude(); }

inline InitialState uniform_state(std::size_t n_total, std::size_t marked_index) {
  detail::require(n_total >= 2, "uniform state needs N >= 2");
  return InitialState(std::vector<double>(n_total, 1.0 / std::sqrt(static_cast<double>(n_total))), marked_index);
}

/// Spreads each subset's probability evenly over its items: a_x = sqrt(p_i / n_i).
inline InitialState build_prior_state(const PriorPartition& partition, std::size_t marked_index,
                                      std::size_t marked_subset) {
  detail::require(marked_subset < partition.size(), "marked subset index out of range");
  detail::require(marked_index < partition.n_total() && partition.subset_of(marked_index) == marked_subset,
                  "marked index does not lie inside the claimed subset");
  std::vector<double> amplitudes;
  amplitudes.reserve(partition.n_total());
  for (std::size_t i = 0; i < partition.size(); ++i)
    amplitudes.insert(amplitudes.end(), partition[i].count, std::sqrt(partition.weight(i)));
  return InitialState(std::move(amplitudes), marked_index);
}

/// Convenience overload: the marked item is the first item of `marked_subset`.
inline InitialState build_prior_state(const PriorPartition& partition, std::size_t marked_subset) {
  return build_prior_state(partition, partition.begin_index(marked_subset), marked_subset);
}

}  // namespace adiasearch
