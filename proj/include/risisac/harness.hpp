#ifndef RISISAC_HARNESS_HPP
#define RISISAC_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "risisac/jbrd.hpp"
#include "risisac/types.hpp"

namespace risisac::harness {

enum class SweepVariable {
  bs_power,
  gamma_echo,
  pe_power,
  ris_elements,
  ris_x_position,
  none  // single-point run (convergence experiment)
};

std::string to_string(SweepVariable v);
SweepVariable sweep_from_string(const std::string& name);

struct ExperimentSpec {
  SystemConfig base;
  jbrd::JbrdConfig jbrd;
  SweepVariable sweep = SweepVariable::none;
  std::vector<double> sweep_values;  // linear units after load
  std::vector<jbrd::Scheme> schemes{jbrd::Scheme::jbrd};
  std::vector<int> antenna_counts;   // empty -> {base.N}
  int trials = 20;
  std::uint64_t seed_base = 1;
  std::string output_path = "out";
  bool resample_users = true;
  bool write_traces = false;
  bool record_wall_time = false;
  int threads = 0;  // 0 = hardware concurrency
};

struct ResultRow {
  std::string sweep_name;
  double sweep_value = 0.0;
  std::string scheme;
  int N = 0;
  int M = 0;
  int trial_count = 0;
  double mean_sr = 0.0;
  double std_sr = 0.0;
  double mean_outer_iters = 0.0;
  double mean_wall_ms = 0.0;
  int infeasible_trials = 0;
  std::uint64_t seed_base = 0;
};

struct TrialRecord {
  double sweep_value = 0.0;
  std::string scheme;
  int N = 0;
  int trial = 0;
  double sr = 0.0;
  double sr_before_projection = 0.0;
  bool feasible = true;
  int outer_iterations = 0;
  jbrd::IterationTrace trace;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  std::vector<TrialRecord> trials;  // per-trial, deterministic order
  int infeasible_total = 0;
};

/// Parse a JSON experiment file. Keys with a `_dbm`/`_db` suffix carry
/// dBm/dB values and are converted to linear on load; plain keys are linear.
/// Throws ConfigError naming the offending key.
ExperimentSpec load_config(const std::string& path);
ExperimentSpec parse_config(const std::string& json_text);

/// Serialize back to JSON (linear units); load(dump(spec)) == spec.
std::string dump_config(const ExperimentSpec& spec);

ExperimentResult run_experiment(const ExperimentSpec& spec);

/// Fixed-schema CSV: 6 significant digits, LF endings, locale independent.
void emit_csv(const std::vector<ResultRow>& rows, const std::string& path);
std::string csv_string(const std::vector<ResultRow>& rows);

/// Per-iteration convergence traces for all recorded trials.
void emit_traces_csv(const std::vector<TrialRecord>& trials,
                     const std::string& path);

std::string format_double(double v);  // shared 6-sig-digit formatter

}  // namespace risisac::harness

#endif
