#include "risisac/harness.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "risisac/channel.hpp"

namespace risisac::harness {

using nlohmann::json;

namespace {

// ---- JSON helpers with key-path error reporting ----

std::string join_key(const std::string& scope, const std::string& key) {
  return scope.empty() ? key : scope + "." + key;
}

double require_number(const json& obj, const std::string& key,
                      const std::string& scope) {
  if (!obj.contains(key)) throw ConfigError(join_key(scope, key), "missing");
  if (!obj.at(key).is_number())
    throw ConfigError(join_key(scope, key), "expected a number");
  return obj.at(key).get<double>();
}

double number_or(const json& obj, const std::string& key, double fallback,
                 const std::string& scope) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number())
    throw ConfigError(join_key(scope, key), "expected a number");
  return obj.at(key).get<double>();
}

/// Linear value from either `key` (linear) or `key_<suffix>` (dB/dBm).
double unit_number_or(const json& obj, const std::string& key,
                      const std::string& suffix, double (*convert)(double),
                      double fallback, const std::string& scope) {
  const std::string skey = key + "_" + suffix;
  const bool has_lin = obj.contains(key);
  const bool has_log = obj.contains(skey);
  if (has_lin && has_log)
    throw ConfigError(join_key(scope, key),
                      "give either '" + key + "' or '" + skey + "', not both");
  if (has_log) return convert(require_number(obj, skey, scope));
  if (has_lin) return require_number(obj, key, scope);
  return fallback;
}

int int_or(const json& obj, const std::string& key, int fallback,
           const std::string& scope) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_number_integer())
    throw ConfigError(join_key(scope, key), "expected an integer");
  return obj.at(key).get<int>();
}

bool bool_or(const json& obj, const std::string& key, bool fallback,
             const std::string& scope) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean())
    throw ConfigError(join_key(scope, key), "expected a boolean");
  return obj.at(key).get<bool>();
}

Vec2 vec2_or(const json& obj, const std::string& key, const Vec2& fallback,
             const std::string& scope) {
  if (!obj.contains(key)) return fallback;
  const json& a = obj.at(key);
  if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
    throw ConfigError(join_key(scope, key), "expected [x, y]");
  return Vec2(a[0].get<double>(), a[1].get<double>());
}

SystemConfig parse_system(const json& sys) {
  SystemConfig c;
  const std::string scope = "system";
  c.K = int_or(sys, "K", c.K, scope);
  c.N = int_or(sys, "N", c.N, scope);
  c.M = int_or(sys, "M", c.M, scope);
  c.P = unit_number_or(sys, "P", "dbm", dbm_to_watts, c.P, scope);
  c.P_e = unit_number_or(sys, "P_e", "dbm", dbm_to_watts, c.P_e, scope);
  c.gamma_echo =
      unit_number_or(sys, "gamma_echo", "db", db_to_linear, c.gamma_echo, scope);
  c.sigma_k2 =
      unit_number_or(sys, "sigma_k2", "dbm", dbm_to_watts, c.sigma_k2, scope);
  c.sigma_ae2 =
      unit_number_or(sys, "sigma_ae2", "dbm", dbm_to_watts, c.sigma_ae2, scope);
  c.sigma_pe2 =
      unit_number_or(sys, "sigma_pe2", "dbm", dbm_to_watts, c.sigma_pe2, scope);
  c.sigma_s2 =
      unit_number_or(sys, "sigma_s2", "dbm", dbm_to_watts, c.sigma_s2, scope);
  c.zeta2 = number_or(sys, "zeta2", c.zeta2, scope);
  c.kappa = unit_number_or(sys, "kappa", "db", db_to_linear, c.kappa, scope);
  c.rho = number_or(sys, "rho", c.rho, scope);
  c.delta = number_or(sys, "delta", c.delta, scope);
  if (sys.contains("positions")) {
    const json& pos = sys.at("positions");
    const std::string pscope = "system.positions";
    c.positions.bs = vec2_or(pos, "bs", c.positions.bs, pscope);
    c.positions.ris = vec2_or(pos, "ris", c.positions.ris, pscope);
    c.positions.target = vec2_or(pos, "target", c.positions.target, pscope);
    c.positions.pe = vec2_or(pos, "pe", c.positions.pe, pscope);
  }
  c.user_circle_radius =
      number_or(sys, "user_circle_radius", c.user_circle_radius, scope);
  if (sys.contains("user_center") && !sys.at("user_center").is_null()) {
    c.user_center = vec2_or(sys, "user_center", Vec2(0, 0), scope);
  }
  if (sys.contains("path_loss")) {
    const json& pl = sys.at("path_loss");
    const std::string plscope = "system.path_loss";
    c.path_loss.C0 = unit_number_or(pl, "C0", "db", db_to_linear,
                                    c.path_loss.C0, plscope);
    c.path_loss.d0 = number_or(pl, "d0", c.path_loss.d0, plscope);
    c.path_loss.exp_bs_target =
        number_or(pl, "exp_bs_target", c.path_loss.exp_bs_target, plscope);
    c.path_loss.exp_bs_ris =
        number_or(pl, "exp_bs_ris", c.path_loss.exp_bs_ris, plscope);
    c.path_loss.exp_ris_user =
        number_or(pl, "exp_ris_user", c.path_loss.exp_ris_user, plscope);
    c.path_loss.exp_bs_user =
        number_or(pl, "exp_bs_user", c.path_loss.exp_bs_user, plscope);
    c.path_loss.exp_ae_user =
        number_or(pl, "exp_ae_user", c.path_loss.exp_ae_user, plscope);
  }
  c.element_spacing_ratio =
      number_or(sys, "element_spacing_ratio", c.element_spacing_ratio, scope);
  if (sys.contains("seed")) {
    if (!sys.at("seed").is_number_unsigned() && !sys.at("seed").is_number_integer())
      throw ConfigError("system.seed", "expected an unsigned integer");
    c.seed = sys.at("seed").get<std::uint64_t>();
  }
  c.validate();
  return c;
}

jbrd::JbrdConfig parse_jbrd(const json& j) {
  jbrd::JbrdConfig c;
  const std::string scope = "jbrd";
  c.delta = number_or(j, "delta", c.delta, scope);
  c.max_outer = int_or(j, "max_outer", c.max_outer, scope);
  c.max_inner_w = int_or(j, "max_inner_w", c.max_inner_w, scope);
  c.max_inner_phi = int_or(j, "max_inner_phi", c.max_inner_phi, scope);
  c.rho_scale = number_or(j, "rho_scale", c.rho_scale, scope);
  c.restarts = int_or(j, "restarts", c.restarts, scope);
  if (c.restarts < 1) throw ConfigError("jbrd.restarts", "must be >= 1");
  if (j.contains("init_policy")) {
    const std::string p = j.at("init_policy").get<std::string>();
    if (p == "mrt_aligned") c.init_policy = jbrd::InitPolicy::mrt_aligned;
    else if (p == "random") c.init_policy = jbrd::InitPolicy::random;
    else throw ConfigError("jbrd.init_policy", "expected mrt_aligned | random");
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    const std::string sscope = "jbrd.solver";
    auto& sp = c.solver;
    sp.max_inner_steps = int_or(s, "max_inner_steps", sp.max_inner_steps, sscope);
    sp.step_init = number_or(s, "step_init", sp.step_init, sscope);
    sp.backtrack = number_or(s, "backtrack", sp.backtrack, sscope);
    sp.armijo = number_or(s, "armijo", sp.armijo, sscope);
    sp.inner_tol = number_or(s, "inner_tol", sp.inner_tol, sscope);
    sp.max_backtracks = int_or(s, "max_backtracks", sp.max_backtracks, sscope);
    sp.dykstra_iters = int_or(s, "dykstra_iters", sp.dykstra_iters, sscope);
    sp.power_iters = int_or(s, "power_iters", sp.power_iters, sscope);
    if (!(sp.backtrack > 0.0 && sp.backtrack < 1.0))
      throw ConfigError("jbrd.solver.backtrack", "must lie in (0, 1)");
  }
  return c;
}

std::vector<double> parse_sweep_values(const json& exp) {
  const std::string scope = "experiment";
  const bool lin = exp.contains("sweep_values");
  const bool dbm = exp.contains("sweep_values_dbm");
  const bool db = exp.contains("sweep_values_db");
  if (lin + dbm + db > 1)
    throw ConfigError("experiment.sweep_values", "multiple unit variants given");
  std::vector<double> out;
  const char* key = lin ? "sweep_values" : dbm ? "sweep_values_dbm" : "sweep_values_db";
  if (!exp.contains(key)) return out;
  const json& arr = exp.at(key);
  if (!arr.is_array()) throw ConfigError(join_key(scope, key), "expected an array");
  for (const auto& v : arr) {
    if (!v.is_number()) throw ConfigError(join_key(scope, key), "expected numbers");
    double x = v.get<double>();
    if (dbm) x = dbm_to_watts(x);
    if (db) x = db_to_linear(x);
    out.push_back(x);
  }
  return out;
}

}  // namespace

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::bs_power: return "bs_power";
    case SweepVariable::gamma_echo: return "gamma_echo";
    case SweepVariable::pe_power: return "pe_power";
    case SweepVariable::ris_elements: return "ris_elements";
    case SweepVariable::ris_x_position: return "ris_x_position";
    case SweepVariable::none: return "none";
  }
  return "unknown";
}

SweepVariable sweep_from_string(const std::string& name) {
  if (name == "bs_power") return SweepVariable::bs_power;
  if (name == "gamma_echo") return SweepVariable::gamma_echo;
  if (name == "pe_power") return SweepVariable::pe_power;
  if (name == "ris_elements") return SweepVariable::ris_elements;
  if (name == "ris_x_position") return SweepVariable::ris_x_position;
  if (name == "none") return SweepVariable::none;
  throw ConfigError("experiment.sweep_variable", "unknown sweep '" + name + "'");
}

ExperimentSpec parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<document>", std::string("malformed JSON at byte ") +
                                        std::to_string(e.byte) + ": " + e.what());
  }
  ExperimentSpec spec;
  if (!root.contains("system"))
    throw ConfigError("system", "missing");
  spec.base = parse_system(root.at("system"));
  spec.jbrd.delta = spec.base.delta;  // system threshold unless overridden
  if (root.contains("jbrd")) {
    const double delta_default = spec.jbrd.delta;
    spec.jbrd = parse_jbrd(root.at("jbrd"));
    if (!root.at("jbrd").contains("delta")) spec.jbrd.delta = delta_default;
  }
  if (root.contains("experiment")) {
    const json& exp = root.at("experiment");
    const std::string scope = "experiment";
    if (exp.contains("sweep_variable"))
      spec.sweep = sweep_from_string(exp.at("sweep_variable").get<std::string>());
    spec.sweep_values = parse_sweep_values(exp);
    if (exp.contains("schemes")) {
      spec.schemes.clear();
      for (const auto& s : exp.at("schemes"))
        spec.schemes.push_back(jbrd::scheme_from_string(s.get<std::string>()));
      if (spec.schemes.empty())
        throw ConfigError("experiment.schemes", "must not be empty");
    }
    if (exp.contains("antenna_counts")) {
      spec.antenna_counts.clear();
      for (const auto& n : exp.at("antenna_counts"))
        spec.antenna_counts.push_back(n.get<int>());
    }
    spec.trials = int_or(exp, "trials", spec.trials, scope);
    if (spec.trials < 1) throw ConfigError("experiment.trials", "must be >= 1");
    if (exp.contains("seed_base"))
      spec.seed_base = exp.at("seed_base").get<std::uint64_t>();
    if (exp.contains("output_path"))
      spec.output_path = exp.at("output_path").get<std::string>();
    spec.resample_users = bool_or(exp, "resample_users", spec.resample_users, scope);
    spec.write_traces = bool_or(exp, "write_traces", spec.write_traces, scope);
    spec.record_wall_time =
        bool_or(exp, "record_wall_time", spec.record_wall_time, scope);
    spec.threads = int_or(exp, "threads", spec.threads, scope);
  }
  if (spec.sweep != SweepVariable::none && spec.sweep_values.empty())
    throw ConfigError("experiment.sweep_values", "required for a sweep");
  return spec;
}

ExperimentSpec load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("<file>", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const ExperimentSpec& spec) {
  json sys;
  const SystemConfig& c = spec.base;
  sys["K"] = c.K;
  sys["N"] = c.N;
  sys["M"] = c.M;
  sys["P"] = c.P;
  sys["P_e"] = c.P_e;
  sys["gamma_echo"] = c.gamma_echo;
  sys["sigma_k2"] = c.sigma_k2;
  sys["sigma_ae2"] = c.sigma_ae2;
  sys["sigma_pe2"] = c.sigma_pe2;
  sys["sigma_s2"] = c.sigma_s2;
  sys["zeta2"] = c.zeta2;
  sys["kappa"] = c.kappa;
  sys["rho"] = c.rho;
  sys["delta"] = c.delta;
  sys["positions"] = {{"bs", {c.positions.bs.x(), c.positions.bs.y()}},
                      {"ris", {c.positions.ris.x(), c.positions.ris.y()}},
                      {"target", {c.positions.target.x(), c.positions.target.y()}},
                      {"pe", {c.positions.pe.x(), c.positions.pe.y()}}};
  sys["user_circle_radius"] = c.user_circle_radius;
  if (c.user_center)
    sys["user_center"] = {c.user_center->x(), c.user_center->y()};
  sys["path_loss"] = {{"C0", c.path_loss.C0},
                      {"d0", c.path_loss.d0},
                      {"exp_bs_target", c.path_loss.exp_bs_target},
                      {"exp_bs_ris", c.path_loss.exp_bs_ris},
                      {"exp_ris_user", c.path_loss.exp_ris_user},
                      {"exp_bs_user", c.path_loss.exp_bs_user},
                      {"exp_ae_user", c.path_loss.exp_ae_user}};
  sys["element_spacing_ratio"] = c.element_spacing_ratio;
  sys["seed"] = c.seed;

  json jb;
  jb["delta"] = spec.jbrd.delta;
  jb["max_outer"] = spec.jbrd.max_outer;
  jb["max_inner_w"] = spec.jbrd.max_inner_w;
  jb["max_inner_phi"] = spec.jbrd.max_inner_phi;
  jb["rho_scale"] = spec.jbrd.rho_scale;
  jb["restarts"] = spec.jbrd.restarts;
  jb["init_policy"] = spec.jbrd.init_policy == jbrd::InitPolicy::mrt_aligned
                          ? "mrt_aligned"
                          : "random";
  jb["solver"] = {{"max_inner_steps", spec.jbrd.solver.max_inner_steps},
                  {"step_init", spec.jbrd.solver.step_init},
                  {"backtrack", spec.jbrd.solver.backtrack},
                  {"armijo", spec.jbrd.solver.armijo},
                  {"inner_tol", spec.jbrd.solver.inner_tol},
                  {"max_backtracks", spec.jbrd.solver.max_backtracks},
                  {"dykstra_iters", spec.jbrd.solver.dykstra_iters},
                  {"power_iters", spec.jbrd.solver.power_iters}};

  json exp;
  exp["sweep_variable"] = to_string(spec.sweep);
  exp["sweep_values"] = spec.sweep_values;
  json schemes = json::array();
  for (auto s : spec.schemes) schemes.push_back(jbrd::to_string(s));
  exp["schemes"] = schemes;
  exp["antenna_counts"] = spec.antenna_counts;
  exp["trials"] = spec.trials;
  exp["seed_base"] = spec.seed_base;
  exp["output_path"] = spec.output_path;
  exp["resample_users"] = spec.resample_users;
  exp["write_traces"] = spec.write_traces;
  exp["record_wall_time"] = spec.record_wall_time;
  exp["threads"] = spec.threads;

  json root;
  root["system"] = sys;
  root["jbrd"] = jb;
  root["experiment"] = exp;
  return root.dump(2) + "\n";
}

namespace {

void apply_sweep(SystemConfig& cfg, SweepVariable sweep, double value) {
  switch (sweep) {
    case SweepVariable::bs_power: cfg.P = value; break;
    case SweepVariable::gamma_echo: cfg.gamma_echo = value; break;
    case SweepVariable::pe_power: cfg.P_e = value; break;
    case SweepVariable::ris_elements:
      cfg.M = static_cast<int>(std::lround(value));
      break;
    case SweepVariable::ris_x_position: cfg.positions.ris.x() = value; break;
    case SweepVariable::none: break;
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  ExperimentResult out;
  const std::vector<double> values =
      spec.sweep == SweepVariable::none && spec.sweep_values.empty()
          ? std::vector<double>{0.0}
          : spec.sweep_values;
  const std::vector<int> antennas =
      spec.antenna_counts.empty() ? std::vector<int>{spec.base.N}
                                  : spec.antenna_counts;

  struct Task {
    double value;
    jbrd::Scheme scheme;
    int N;
    int trial;
  };
  std::vector<Task> tasks;
  for (double v : values)
    for (auto scheme : spec.schemes)
      for (int n : antennas)
        for (int t = 0; t < spec.trials; ++t) tasks.push_back({v, scheme, n, t});

  std::vector<TrialRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  unsigned nthreads = spec.threads > 0 ? static_cast<unsigned>(spec.threads) : hw;
  nthreads = std::min<unsigned>(nthreads, tasks.size() == 0 ? 1 : tasks.size());

  auto run_task = [&](std::size_t idx) {
    const Task& task = tasks[idx];
    SystemConfig cfg = spec.base;
    cfg.N = task.N;
    apply_sweep(cfg, spec.sweep, task.value);
    cfg.seed = spec.seed_base + static_cast<std::uint64_t>(task.trial);
    if (!spec.resample_users) cfg.user_seed = spec.seed_base;
    jbrd::JbrdConfig jcfg = spec.jbrd;
    jcfg.record_wall_time = spec.record_wall_time;

    const ChannelSet ch = channel::generate_scenario(cfg);
    jbrd::RunResult rr = jbrd::run_benchmark(ch, cfg, jcfg, task.scheme);

    TrialRecord rec;
    rec.sweep_value = task.value;
    rec.scheme = jbrd::to_string(task.scheme);
    rec.N = task.N;
    rec.trial = task.trial;
    rec.sr = rr.report.secrecy_rate;
    rec.sr_before_projection = rr.sr_before_projection;
    rec.feasible = rr.status != jbrd::RunStatus::infeasible;
    rec.outer_iterations = rr.outer_iterations;
    rec.trace = std::move(rr.trace);
    records[idx] = std::move(rec);
  };
  auto worker = [&]() {
    for (;;) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= tasks.size()) return;
      try {
        run_task(idx);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);

  // Deterministic aggregation in task order.
  const std::string sweep_name = to_string(spec.sweep);
  std::size_t idx = 0;
  for (double v : values) {
    for (auto scheme : spec.schemes) {
      for (int n : antennas) {
        ResultRow row;
        row.sweep_name = sweep_name;
        row.sweep_value = v;
        row.scheme = jbrd::to_string(scheme);
        row.N = n;
        row.M = spec.sweep == SweepVariable::ris_elements
                    ? static_cast<int>(std::lround(v))
                    : spec.base.M;
        row.trial_count = spec.trials;
        row.seed_base = spec.seed_base;
        double sum = 0.0, sum_sq = 0.0, sum_outer = 0.0, sum_wall = 0.0;
        for (int t = 0; t < spec.trials; ++t, ++idx) {
          const TrialRecord& rec = records[idx];
          sum += rec.sr;
          sum_sq += rec.sr * rec.sr;
          sum_outer += rec.outer_iterations;
          for (double w : rec.trace.wall_ms) sum_wall += w;
          if (!rec.feasible) ++row.infeasible_trials;
        }
        row.mean_sr = sum / spec.trials;
        row.std_sr = spec.trials > 1
                         ? std::sqrt(std::max(0.0, (sum_sq - sum * sum / spec.trials) /
                                                       (spec.trials - 1)))
                         : 0.0;
        row.mean_outer_iters = sum_outer / spec.trials;
        row.mean_wall_ms = sum_wall / spec.trials;
        out.infeasible_total += row.infeasible_trials;
        out.rows.push_back(std::move(row));
      }
    }
  }
  out.trials = std::move(records);
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
  return std::string(buf, ptr);
}

std::string csv_string(const std::vector<ResultRow>& rows) {
  std::string out =
      "sweep_name,sweep_value,scheme,N,M,trial_count,mean_sr_bps_hz,std_sr,"
      "mean_outer_iters,mean_wall_ms,infeasible_trials,seed_base\n";
  for (const auto& r : rows) {
    out += r.sweep_name;
    out += ',';
    out += format_double(r.sweep_value);
    out += ',';
    out += r.scheme;
    out += ',';
    out += std::to_string(r.N);
    out += ',';
    out += std::to_string(r.M);
    out += ',';
    out += std::to_string(r.trial_count);
    out += ',';
    out += format_double(r.mean_sr);
    out += ',';
    out += format_double(r.std_sr);
    out += ',';
    out += format_double(r.mean_outer_iters);
    out += ',';
    out += format_double(r.mean_wall_ms);
    out += ',';
    out += std::to_string(r.infeasible_trials);
    out += ',';
    out += std::to_string(r.seed_base);
    out += '\n';
  }
  return out;
}

void emit_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << csv_string(rows);
}

void emit_traces_csv(const std::vector<TrialRecord>& trials,
                     const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << "sweep_value,scheme,N,trial,iter,secrecy_rate_bps_hz,unclamped_sum,"
       "surrogate_obj,scnr_residual,power_used,max_modulus_dev,inner_w_iters,"
       "inner_phi_iters,wall_ms\n";
  for (const auto& rec : trials) {
    for (std::size_t i = 0; i < rec.trace.size(); ++i) {
      f << format_double(rec.sweep_value) << ',' << rec.scheme << ',' << rec.N
        << ',' << rec.trial << ',' << (i + 1) << ','
        << format_double(rec.trace.secrecy_rate[i]) << ','
        << format_double(rec.trace.unclamped_sum[i]) << ','
        << format_double(rec.trace.surrogate_objective[i]) << ','
        << format_double(rec.trace.scnr_residual[i]) << ','
        << format_double(rec.trace.power_used[i]) << ','
        << format_double(rec.trace.max_modulus_dev[i]) << ','
        << rec.trace.inner_w_iters[i] << ',' << rec.trace.inner_phi_iters[i]
        << ',' << format_double(rec.trace.wall_ms[i]) << '\n';
    }
  }
}

}  // namespace risisac::harness
