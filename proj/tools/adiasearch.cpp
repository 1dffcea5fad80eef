// Command-line front end for the adiabatic search toolkit.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "adiasearch/adiasearch.hpp"

namespace {

using namespace adiasearch;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInvalidInput = 2;

struct ProblemOptions {
  std::size_t n = 64;
  double eps = 0.05;
  std::optional<double> a_m;
  std::string scale = "1";
  std::string kind = "local";
  std::string partition;
  std::size_t subset = 0;
};

void add_problem_options(CLI::App* cmd, ProblemOptions& o, bool with_eps) {
  cmd->add_option("--n", o.n, "database size N")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  if (with_eps) cmd->add_option("--eps", o.eps, "adiabaticity parameter epsilon in (0, 0.5]");
  cmd->add_option("--a-m", o.a_m, "marked amplitude (overrides the uniform 1/sqrt(N))");
  cmd->add_option("--scale", o.scale, "Hamiltonian prefactor c, a number or 'sqrtN'");
  cmd->add_option("--partition", o.partition, "prior as p:n pairs, e.g. 0.8:500,0.2:500");
  cmd->add_option("--subset", o.subset, "zero-based subset holding the marked item (with --partition)");
}

double parse_scale(const std::string& text, std::size_t n) {
  if (text == "sqrtN" || text == "sqrt(N)") return std::sqrt(static_cast<double>(n));
  try {
    std::size_t used = 0;
    const double c = std::stod(text, &used);
    if (used == text.size()) return c;
  } catch (const std::exception&) {
  }
  throw InvalidInput("scale must be a number or 'sqrtN', got '" + text + "'");
}

struct Problem {
  std::size_t n;
  double a_m;
  double scale;
};

Problem resolve(const ProblemOptions& o) {
  if (!o.partition.empty()) {
    detail::require(!o.a_m, "--a-m and --partition are mutually exclusive");
    const auto partition = parse_partition(o.partition);
    if (!prior_assumption_holds(partition, o.subset))
      std::cerr << "warning: p_M/n_M = " << partition.weight(o.subset)
                << " exceeds 0.01; the sqrt(n_M/p_M) estimate assumes p_M/n_M << 1\n";
    const auto state = build_prior_state(partition, o.subset);
    return {partition.n_total(), state.marked_amplitude(), parse_scale(o.scale, partition.n_total())};
  }
  const double am = o.a_m ? *o.a_m : marked_amplitude(uniform_state(o.n, 0));
  return {o.n, am, parse_scale(o.scale, o.n)};
}

std::string num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.12g", v);
  return buffer;
}

int cmd_spectrum(const ProblemOptions& o, std::size_t samples) {
  detail::require(samples >= 2, "--samples must be at least 2");
  const auto p = resolve(o);
  const EffectiveHamiltonian h(p.a_m, p.scale);
  std::cout << "s,lambda1,lambda2,gap\n";
  for (std::size_t i = 0; i < samples; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(samples - 1);
    const auto sample = spectral_sample(h, s);
    std::cout << num(sample.s) << ',' << num(sample.lambda1) << ',' << num(sample.lambda2) << ',' << num(sample.gap)
              << '\n';
  }
  return 0;
}

int cmd_schedule(const ProblemOptions& o, std::size_t samples) {
  const auto p = resolve(o);
  const EffectiveHamiltonian h(p.a_m, p.scale);
  const auto schedule = Schedule::make(parse_schedule_kind(o.kind), h, o.eps);
  std::cout << "t,s,gap,ds_dt\n";
  for (const auto& row : sample_schedule(schedule, samples))
    std::cout << num(row.t) << ',' << num(row.s) << ',' << num(row.gap) << ',' << num(row.ds_dt) << '\n';
  return 0;
}

int cmd_run(const ProblemOptions& o, const std::string& trace_path, std::size_t trace_samples, bool full) {
  const auto p = resolve(o);
  const EffectiveHamiltonian h(p.a_m, p.scale);
  const auto kind = parse_schedule_kind(o.kind);
  const auto schedule = Schedule::make(kind, h, o.eps);
  EvolveOptions options;
  if (!trace_path.empty()) options.trace_samples = trace_samples;
  EvolutionResult result;
  if (full) {
    const auto state = o.partition.empty() ? uniform_state(p.n, 0) : build_prior_state(parse_partition(o.partition), o.subset);
    detail::require(!o.a_m, "--full builds the state from N or --partition; --a-m is not supported");
    result = evolve_full(state, schedule, p.scale, options);
  } else {
    result = evolve(h, schedule, options);
  }
  const nlohmann::json out = {{"n", p.n},
                              {"eps", o.eps},
                              {"a_m", p.a_m},
                              {"scale", p.scale},
                              {"kind", std::string(to_string(kind))},
                              {"T", schedule.total_time()},
                              {"fidelity", result.fidelity},
                              {"norm_drift", result.norm_drift},
                              {"min_overlap", result.min_overlap}};
  std::cout << out.dump() << '\n';
  if (!trace_path.empty()) {
    std::ofstream trace(trace_path);
    detail::require(static_cast<bool>(trace), "cannot open trace file " + trace_path);
    trace << "t,s,overlap\n";
    for (const auto& pt : result.trace) trace << num(pt.t) << ',' << num(pt.s) << ',' << num(pt.overlap) << '\n';
  }
  return 0;
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(item, &used));
      detail::require(used == item.size(), "");
    } catch (const std::exception&) {
      throw InvalidInput("bad sweep value '" + item + "'");
    }
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adiabatic quantum search: spectra, schedules, evolution, sweeps and checks"};
  app.require_subcommand(1);

  ProblemOptions spectrum_opts;
  std::size_t spectrum_samples = 101;
  auto* spectrum = app.add_subcommand("spectrum", "CSV of the two lowest eigenvalues and the gap over s");
  add_problem_options(spectrum, spectrum_opts, false);
  spectrum->add_option("--samples", spectrum_samples, "number of s samples (>= 2)");

  ProblemOptions schedule_opts;
  std::size_t schedule_samples = 101;
  auto* schedule = app.add_subcommand("schedule", "CSV of s(t), gap and ds/dt for a schedule");
  add_problem_options(schedule, schedule_opts, true);
  schedule->add_option("--kind", schedule_opts.kind, "local or linear")->check(CLI::IsMember({"local", "linear"}));
  schedule->add_option("--samples", schedule_samples, "number of time samples (>= 2)");

  ProblemOptions run_opts;
  std::string trace_path;
  std::size_t trace_samples = 201;
  bool run_full = false;
  auto* run = app.add_subcommand("run", "integrate the evolution and report the success probability as JSON");
  add_problem_options(run, run_opts, true);
  run->add_option("--kind", run_opts.kind, "local or linear")->check(CLI::IsMember({"local", "linear"}));
  run->add_option("--trace", trace_path, "write t,s,overlap CSV to this file");
  run->add_option("--trace-samples", trace_samples, "number of trace points");
  run->add_flag("--full", run_full, "integrate in the full N-dimensional space (N <= ADIASEARCH_ORACLE_CAP)");

  std::string spec_path;
  std::string sweep_variable;
  std::string sweep_values;
  std::size_t sweep_n = 0;
  double sweep_eps = 0.0;
  std::string sweep_scale;
  std::string sweep_kind;
  std::string sweep_partition;
  std::size_t sweep_subset = 0;
  std::string sweep_output;
  std::size_t sweep_jobs = 0;
  bool sweep_no_fidelity = false;
  auto* sweep_cmd = app.add_subcommand("sweep", "parameter sweep written as CSV");
  sweep_cmd->add_option("--spec", spec_path, "JSON experiment spec; flags override its fields");
  auto* o_var = sweep_cmd->add_option("--variable", sweep_variable, "n, eps, scale or partition-skew");
  auto* o_vals = sweep_cmd->add_option("--values", sweep_values, "comma-separated sweep values");
  auto* o_n = sweep_cmd->add_option("--n", sweep_n, "database size for non-n sweeps");
  auto* o_eps = sweep_cmd->add_option("--eps", sweep_eps, "epsilon for non-eps sweeps");
  auto* o_scale = sweep_cmd->add_option("--scale", sweep_scale, "scale c for non-scale sweeps (number or sqrtN)");
  auto* o_kind = sweep_cmd->add_option("--kind", sweep_kind, "local or linear");
  auto* o_part = sweep_cmd->add_option("--partition", sweep_partition, "fixed prior for eps/scale sweeps");
  auto* o_subset = sweep_cmd->add_option("--subset", sweep_subset, "subset holding the marked item");
  auto* o_out = sweep_cmd->add_option("--output", sweep_output, "CSV path (default stdout)");
  auto* o_jobs = sweep_cmd->add_option("--jobs", sweep_jobs, "parallel workers");
  auto* o_nofid = sweep_cmd->add_flag("--no-fidelity", sweep_no_fidelity, "skip the evolution column");

  std::size_t grover_n = 4;
  std::optional<std::size_t> grover_k;
  auto* grover = app.add_subcommand("grover", "discrete Grover search baseline as JSON");
  grover->add_option("--n", grover_n, "database size N")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
  grover->add_option("--k", grover_k, "iterations (default: optimal)");

  std::string suite = "all";
  auto* verify_cmd = app.add_subcommand("verify", "run invariant suites; exit 1 on any failure");
  verify_cmd->add_option("suite", suite, "spectral, schedule, dynamics, theorems or all")
      ->check(CLI::IsMember({"spectral", "schedule", "dynamics", "theorems", "all"}));

  double reproduce_eps = 0.05;
  bool reproduce_json = false;
  auto* reproduce = app.add_subcommand("reproduce-paper", "table of running-time claims");
  reproduce->add_option("--eps", reproduce_eps, "epsilon used for all rows");
  reproduce->add_flag("--json", reproduce_json, "emit JSON instead of a text table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidInput;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(spectrum_opts, spectrum_samples);
    if (schedule->parsed()) return cmd_schedule(schedule_opts, schedule_samples);
    if (run->parsed()) return cmd_run(run_opts, trace_path, trace_samples, run_full);

    if (sweep_cmd->parsed()) {
      ExperimentSpec spec;
      if (!spec_path.empty()) {
        std::ifstream in(spec_path);
        detail::require(static_cast<bool>(in), "cannot open spec file " + spec_path);
        nlohmann::json j;
        try {
          in >> j;
        } catch (const nlohmann::json::exception& e) {
          throw InvalidInput(std::string("spec file is not valid JSON: ") + e.what());
        }
        spec = experiment_spec_from_json(j);
      }
      if (o_var->count()) spec.variable = parse_sweep_variable(sweep_variable);
      if (o_vals->count()) spec.values = parse_values(sweep_values);
      if (o_n->count()) spec.n = sweep_n;
      if (o_eps->count()) spec.epsilon = sweep_eps;
      if (o_scale->count()) spec.scale = parse_scale(sweep_scale, spec.n);
      if (o_kind->count()) spec.kind = parse_schedule_kind(sweep_kind);
      if (o_part->count()) spec.partition = parse_partition(sweep_partition);
      if (o_subset->count()) spec.marked_subset = sweep_subset;
      if (o_out->count()) spec.output = sweep_output;
      if (o_jobs->count()) spec.parallelism = sweep_jobs;
      if (o_nofid->count()) spec.with_fidelity = !sweep_no_fidelity;
      const auto rows = sweep(spec);
      if (spec.output.empty()) {
        write_sweep_csv(std::cout, rows);
      } else {
        std::ofstream out(spec.output);
        detail::require(static_cast<bool>(out), "cannot open output file " + spec.output);
        write_sweep_csv(out, rows);
      }
      for (const auto& r : rows)
        if (!r.ok()) std::cerr << "row " << to_string(r.variable) << '=' << r.value << " failed: " << r.error << '\n';
      return all_rows_ok(rows) ? 0 : kExitInvalidInput;
    }

    if (grover->parsed()) {
      const std::size_t k = grover_k ? *grover_k : grover_optimal_iterations(grover_n);
      const auto result = grover_simulate(grover_n, k);
      std::cout << nlohmann::json{{"n", result.n_total}, {"k", result.iterations}, {"success_prob", result.success_prob}}
                       .dump()
                << '\n';
      return 0;
    }

    if (verify_cmd->parsed()) {
      const auto report = verify(parse_verify_suite(suite));
      print(std::cout, report);
      return report.passed() ? 0 : kExitVerifyFailed;
    }

    if (reproduce->parsed()) {
      const auto report = reproduce_paper(reproduce_eps);
      if (reproduce_json)
        std::cout << to_json(report).dump(2) << '\n';
      else
        print(std::cout, report);
      return 0;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
  return 0;
}
