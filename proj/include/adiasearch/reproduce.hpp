#pragma once

// Reproduction table for the headline claims: sqrt(N) scaling of the uniform
// search, the 80/20 two-half prior, and the constant-time c = sqrt(N) variant.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "adiasearch/baseline.hpp"
#include "adiasearch/model.hpp"
#include "adiasearch/schedule.hpp"

namespace adiasearch {

struct ReportRow {
  std::string section;
  std::string quantity;
  double value = 0.0;
  std::optional<double> reference;
};

struct PaperReport {
  double epsilon = 0.05;
  std::vector<ReportRow> rows;

  /// First row whose section and quantity match; throws if absent.
  [[nodiscard]] const ReportRow& find(const std::string& section, const std::string& quantity) const {
    for (const auto& r : rows)
      if (r.section == section && r.quantity == quantity) return r;
    throw InvalidInput("no report row " + section + "/" + quantity);
  }
};

/// Two-half prior used by the 80/20 example: subsets of n/2 items with
/// probabilities p and 1 - p.
inline PriorPartition two_half_prior(std::size_t n_total, double p_first) {
  return PriorPartition({{n_total / 2, p_first}, {n_total - n_total / 2, 1.0 - p_first}});
}

inline PaperReport reproduce_paper(double epsilon = 0.05) {
  PaperReport report;
  report.epsilon = epsilon;
  auto add = [&](std::string section, std::string quantity, double value, std::optional<double> reference = {}) {
    report.rows.push_back({std::move(section), std::move(quantity), value, reference});
  };
  const double unit = std::numbers::pi / (2.0 * epsilon);

  for (std::size_t n : {64u, 256u, 1024u, 4096u}) {
    const std::string tag = "N=" + std::to_string(n);
    const double am = marked_amplitude(uniform_state(n, 0));
    const double exact = total_time(am, epsilon);
    add("uniform", tag + " T_exact", exact, no_prior_time(n, epsilon));
    add("uniform", tag + " T_exact/T_sqrtN", exact / no_prior_time(n, epsilon), 1.0);
    add("uniform", tag + " grover_iterations", static_cast<double>(grover_optimal_iterations(n)));
  }

  const std::size_t n = 1000;
  const auto prior = two_half_prior(n, 0.8);
  const double no_prior = no_prior_time(n, epsilon);
  const double conditional = theorem2_time(prior, 0, epsilon);
  const double mean = mean_time(prior, epsilon);
  add("prior-80/20", "T_no_prior", no_prior);
  add("prior-80/20", "T_marked_in_A1", conditional);
  add("prior-80/20", "T_marked_in_A2", theorem2_time(prior, 1, epsilon));
  add("prior-80/20", "T_mean", mean);
  add("prior-80/20", "conditional_ratio", conditional / no_prior, std::sqrt(0.5 / 0.8));
  add("prior-80/20", "mean_ratio", mean / no_prior, (std::sqrt(0.4) + std::sqrt(0.1)) / std::sqrt(1.0));
  add("prior-80/20", "T_exact_marked_in_A1", theorem2_exact_time(prior, 0, epsilon));
  add("prior-80/20", "T_exact_no_prior", total_time(marked_amplitude(uniform_state(n, 0)), epsilon));
  add("prior-80/20", "k=1 T_mean", mean_time(PriorPartition::uniform(n), epsilon), no_prior);

  for (std::size_t big : {64u, 256u, 1024u}) {
    const double c = std::sqrt(static_cast<double>(big));
    const double am = marked_amplitude(uniform_state(big, 0));
    const std::string tag = "N=" + std::to_string(big);
    add("constant-time", tag + " T_exact", total_time(am, epsilon, c), unit);
    add("constant-time", tag + " T_approx", approximate_total_time(am, epsilon, c), unit);
  }
  return report;
}

inline void print(std::ostream& out, const PaperReport& report) {
  char line[160];
  std::snprintf(line, sizeof line, "%-15s %-28s %16s %16s\n", "section", "quantity", "value", "reference");
  out << "# eps = " << report.epsilon << '\n' << line;
  for (const auto& r : report.rows) {
    char ref[32] = "-";
    if (r.reference) std::snprintf(ref, sizeof ref, "%.6f", *r.reference);
    std::snprintf(line, sizeof line, "%-15s %-28s %16.6f %16s\n", r.section.c_str(), r.quantity.c_str(), r.value, ref);
    out << line;
  }
}

inline nlohmann::json to_json(const PaperReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json row = {{"section", r.section}, {"quantity", r.quantity}, {"value", r.value}};
    row["reference"] = r.reference ? nlohmann::json(*r.reference) : nlohmann::json(nullptr);
    rows.push_back(std::move(row));
  }
  return {{"eps", report.epsilon}, {"rows", rows}};
}

}  // namespace adiasearch
