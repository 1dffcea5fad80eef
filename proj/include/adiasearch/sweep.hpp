#pragma once

// Parameter sweeps over N, epsilon, the scale factor c, or the skew of a
// two-half prior. Rows are computed in parallel and emitted in input order.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "adiasearch/baseline.hpp"
#include "adiasearch/dynamics.hpp"
#include "adiasearch/errors.hpp"
#include "adiasearch/model.hpp"
#include "adiasearch/schedule.hpp"

namespace adiasearch {

enum class SweepVariable { n, eps, scale, partition_skew };

inline std::string_view to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::n: return "n";
    case SweepVariable::eps: return "eps";
    case SweepVariable::scale: return "scale";
    case SweepVariable::partition_skew: return "partition-skew";
  }
  return "n";
}

inline SweepVariable parse_sweep_variable(std::string_view text) {
  if (text == "n") return SweepVariable::n;
  if (text == "eps") return SweepVariable::eps;
  if (text == "scale") return SweepVariable::scale;
  if (text == "partition-skew") return SweepVariable::partition_skew;
  throw InvalidInput("unknown sweep variable '" + std::string(text) + "' (expected n, eps, scale or partition-skew)");
}

struct ExperimentSpec {
  SweepVariable variable = SweepVariable::n;
  std::vector<double> values;
  std::size_t n = 1024;
  double epsilon = 0.05;
  double scale = 1.0;
  ScheduleKind kind = ScheduleKind::local;
  // Prior for eps / scale sweeps; the marked item is the first item of `marked_subset`.
  std::optional<PriorPartition> partition;
  std::size_t marked_subset = 0;
  bool with_fidelity = true;
  std::string output;  // empty: stdout
  std::size_t parallelism = 1;
};

inline void validate(const ExperimentSpec& spec) {
  detail::require(!spec.values.empty(), "sweep value list is empty");
  detail::require(spec.parallelism >= 1, "parallelism must be at least 1");
  detail::require(!(spec.partition && (spec.variable == SweepVariable::n ||
                                       spec.variable == SweepVariable::partition_skew)),
                  "a fixed partition only combines with eps or scale sweeps");
  for (double v : spec.values) detail::require(std::isfinite(v), "sweep values must be finite");
}

/// Reads the JSON form of an experiment spec. Unknown keys are rejected.
inline ExperimentSpec experiment_spec_from_json(const nlohmann::json& j) {
  detail::require(j.is_object(), "experiment spec must be a JSON object");
  static const std::vector<std::string> known = {"variable", "values", "n", "eps", "scale", "kind", "partition",
                                                 "marked_subset", "fidelity", "output", "parallelism"};
  for (const auto& [key, _] : j.items())
    detail::require(std::find(known.begin(), known.end(), key) != known.end(), "unknown spec key '" + key + "'");
  ExperimentSpec spec;
  try {
    if (j.contains("variable")) spec.variable = parse_sweep_variable(j["variable"].get<std::string>());
    if (j.contains("values")) spec.values = j["values"].get<std::vector<double>>();
    if (j.contains("n")) spec.n = j["n"].get<std::size_t>();
    if (j.contains("eps")) spec.epsilon = j["eps"].get<double>();
    if (j.contains("scale")) spec.scale = j["scale"].get<double>();
    if (j.contains("kind")) spec.kind = parse_schedule_kind(j["kind"].get<std::string>());
    if (j.contains("partition")) {
      const auto& p = j["partition"];
      spec.partition = p.is_string() ? parse_partition(p.get<std::string>()) : partition_from_json(p);
    }
    if (j.contains("marked_subset")) spec.marked_subset = j["marked_subset"].get<std::size_t>();
    if (j.contains("fidelity")) spec.with_fidelity = j["fidelity"].get<bool>();
    if (j.contains("output")) spec.output = j["output"].get<std::string>();
    if (j.contains("parallelism")) spec.parallelism = j["parallelism"].get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad experiment spec: ") + e.what());
  }
  return spec;
}

struct SweepRow {
  SweepVariable variable = SweepVariable::n;
  double value = 0.0;
  std::size_t n = 0;
  double epsilon = 0.0;
  double scale = 0.0;
  ScheduleKind kind = ScheduleKind::local;
  double a_m = 0.0;
  double t_exact = 0.0;
  double t_approx = 0.0;
  std::optional<double> fidelity;
  std::optional<double> norm_drift;
  std::optional<double> mean_time;
  std::size_t grover_iterations = 0;
  std::string error;  // empty on success

  [[nodiscard]] bool ok() const noexcept { return error.empty(); }
};

inline constexpr std::string_view kSweepCsvVersion = "# adiasearch sweep v1";
inline constexpr std::string_view kSweepCsvHeader =
    "variable,value,n,eps,scale,kind,a_m,T_exact,T_approx,fidelity,norm_drift,mean_time,grover_iterations,error";

namespace detail {

inline std::size_t as_count(double v, const char* what) {
  require(v >= 2.0 && v == std::floor(v) && v < 1e15, std::string(what) + " must be an integer >= 2");
  return static_cast<std::size_t>(v);
}

inline SweepRow compute_row(const ExperimentSpec& spec, double value) {
  SweepRow row;
  row.variable = spec.variable;
  row.value = value;
  row.n = spec.n;
  row.epsilon = spec.epsilon;
  row.scale = spec.scale;
  row.kind = spec.kind;
  try {
    std::optional<PriorPartition> partition = spec.partition;
    std::size_t marked_subset = spec.marked_subset;
    switch (spec.variable) {
      case SweepVariable::n: row.n = as_count(value, "n"); break;
      case SweepVariable::eps: row.epsilon = value; break;
      case SweepVariable::scale: row.scale = value; break;
      case SweepVariable::partition_skew: {
        // Two halves of the database; the marked item lies in the first.
        const std::size_t first = spec.n / 2;
        require(first >= 1 && spec.n - first >= 1, "partition-skew needs n >= 2");
        require(value > 0.0 && value < 1.0, "partition-skew values must lie in (0, 1)");
        partition = PriorPartition({{first, value}, {spec.n - first, 1.0 - value}});
        marked_subset = 0;
        break;
      }
    }
    if (partition) {
      row.n = partition->n_total();
      require(marked_subset < partition->size(), "marked subset index out of range");
      row.a_m = marked_amplitude(build_prior_state(*partition, marked_subset));
      row.mean_time = mean_time(*partition, row.epsilon);
    } else {
      row.a_m = marked_amplitude(uniform_state(row.n, 0));
    }
    const EffectiveHamiltonian h(row.a_m, row.scale);
    const Schedule schedule = Schedule::make(row.kind, h, row.epsilon);
    row.t_exact = schedule.total_time();
    row.t_approx = approximate_total_time(row.a_m, row.epsilon, row.scale);
    row.grover_iterations = grover_optimal_iterations(row.n);
    if (spec.with_fidelity) {
      const auto result = evolve(h, schedule);
      row.fidelity = result.fidelity;
      row.norm_drift = result.norm_drift;
    }
    require(row.t_exact > 0.0 && std::isfinite(row.t_exact), "non-positive running time");
    if (row.fidelity) require(*row.fidelity >= -1e-12 && *row.fidelity <= 1.0 + 1e-9, "fidelity outside [0, 1]");
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

inline std::string format_number(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", v);
  return buffer;
}

inline std::string csv_escape(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + "\"";
}

}  // namespace detail

/// One row per value, in input order. Row failures are recorded in
/// SweepRow::error and do not stop the sweep.
inline std::vector<SweepRow> sweep(const ExperimentSpec& spec) {
  validate(spec);
  std::vector<SweepRow> rows(spec.values.size());
  const std::size_t workers = std::min(spec.parallelism, spec.values.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) rows[i] = detail::compute_row(spec, spec.values[i]);
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return rows;
}

inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  using detail::format_number;
  out << kSweepCsvVersion << '\n' << kSweepCsvHeader << '\n';
  auto optional_cell = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const auto& r : rows) {
    out << to_string(r.variable) << ',' << format_number(r.value) << ',' << r.n << ',' << format_number(r.epsilon)
        << ',' << format_number(r.scale) << ',' << to_string(r.kind) << ',';
    if (r.ok()) {
      out << format_number(r.a_m) << ',' << format_number(r.t_exact) << ',' << format_number(r.t_approx) << ','
          << optional_cell(r.fidelity) << ',' << optional_cell(r.norm_drift) << ',' << optional_cell(r.mean_time)
          << ',' << r.grover_iterations << ',';
    } else {
      out << ",,,,,,,";
    }
    out << detail::csv_escape(r.error) << '\n';
  }
}

inline bool all_rows_ok(const std::vector<SweepRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const SweepRow& r) { return r.ok(); });
}

}  // namespace adiasearch
