#include "risisac/jbrd.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "risisac/channel.hpp"
#include "risisac/rng.hpp"

namespace risisac::jbrd {

namespace {

using surrogate::AuxiliaryVars;
using surrogate::NoiseScale;

CVec random_unit_modulus(int m, Rng& rng) {
  CVec phi(m);
  for (int i = 0; i < m; ++i) phi(i) = std::polar(1.0, 2.0 * M_PI * rng.next_double());
  return phi;
}

CVec random_unit_vector(int n, Rng& rng) {
  CVec v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.next_cgaussian();
  const double norm = v.norm();
  return (norm > 0.0) ? CVec(v / norm) : CVec(CVec::Unit(n, 0));
}

/// Rescale so ||W||_F^2 equals `power` exactly.
void normalize_power(CMat& W, double power) {
  const double n = W.norm();
  if (n > 0.0) W *= std::sqrt(power) / n;
}

struct RunOptions {
  bool fixed_phi = false;
  bool fixed_u = false;
};

BeamformingState build_init(const ChannelSet& ch, const SystemConfig& cfg,
                            const JbrdConfig& jcfg, bool* feasible,
                            const CVec* phi_override,
                            const CVec* u_override = nullptr) {
  const int K = ch.K, N = ch.N, M = ch.M, L = K + N;
  const double target_power = 0.9 * cfg.P;
  BeamformingState s;

  // Reflect phases.
  if (phi_override) {
    s.phi = *phi_override;
  } else if (jcfg.init_policy == InitPolicy::random) {
    Rng rng = Rng::stream(cfg.seed, "init_random_phi");
    s.phi = random_unit_modulus(M, rng);
  } else {
    // Per-element phase alignment of the first user's cascaded path.
    s.phi.resize(M);
    if (M > 0) {
      const CVec cascade = ch.H_br * ch.g_b[0];
      for (int m = 0; m < M; ++m) {
        const cxd c = std::conj(ch.g_r[0](m)) * cascade(m);
        s.phi(m) = (std::abs(c) > 0.0) ? cxd(std::conj(c) / std::abs(c)) : cxd(1.0);
      }
    }
  }

  // Receive beamformer start: aligned with the target return.
  const double hn = ch.h_bt.norm();
  s.u = (hn > 0.0) ? CVec(ch.h_bt / hn) : CVec(CVec::Unit(N, 0));
  if (u_override) s.u = *u_override;

  // Transmit columns.
  const double col_power = target_power / L;
  CMat W_comm(N, L);
  Rng phase_rng = Rng::stream(cfg.seed, "init_radar_phase");
  std::vector<double> radar_phase(N);
  for (int j = 0; j < N; ++j) radar_phase[j] = 2.0 * M_PI * phase_rng.next_double();

  if (jcfg.init_policy == InitPolicy::random) {
    Rng rng = Rng::stream(cfg.seed, "init_random_w");
    for (int i = 0; i < L; ++i)
      for (int n = 0; n < N; ++n)
        W_comm(n, i) = std::polar(std::sqrt(col_power / N), 2.0 * M_PI * rng.next_double());
  } else {
    const CVec target_dir = (hn > 0.0) ? CVec(ch.h_bt / hn) : CVec(CVec::Unit(N, 0));
    for (int k = 0; k < K; ++k) {
      CVec dir = metrics::composite_user_channel(ch, s.phi, k).adjoint();
      const double dn = dir.norm();
      dir = (dn > 0.0) ? CVec(dir / dn) : target_dir;
      W_comm.col(k) = std::sqrt(col_power) * dir;
    }
    for (int j = 0; j < N; ++j) {
      W_comm.col(K + j) =
          std::sqrt(col_power) * std::polar(1.0, radar_phase[j]) * target_dir;
    }
  }
  normalize_power(W_comm, target_power);

  // Echo-power repair: blend toward all-columns-at-target until the SCNR
  // threshold is met. tau = 0 keeps the throughput-oriented start.
  s.W = W_comm;
  bool ok = false;
  if (hn > 0.0) {
    const CVec target_dir = ch.h_bt / hn;
    CMat W_sense(N, L);
    for (int i = 0; i < L; ++i) {
      W_sense.col(i) =
          std::sqrt(col_power) * std::polar(1.0, radar_phase[i % N]) * target_dir;
    }
    for (int step = 0; step <= 10; ++step) {
      const double tau = step / 10.0;
      CMat W = std::sqrt(1.0 - tau) * W_comm + std::sqrt(tau) * W_sense;
      normalize_power(W, target_power);
      s.W = W;
      if (metrics::scnr_echo(ch, s, cfg) >= cfg.gamma_echo) {
        ok = true;
        break;
      }
    }
  }
  if (feasible) *feasible = ok;
  return s;
}

RunResult run_loop(const ChannelSet& ch, const SystemConfig& cfg,
                   const JbrdConfig& jcfg, const RunOptions& opt,
                   const CVec* phi_override, const CVec* u_override) {
  using clock = std::chrono::steady_clock;
  const NoiseScale ns = NoiseScale::from_config(cfg);

  RunResult res;
  res.state = build_init(ch, cfg, jcfg, &res.init_feasible, phi_override, u_override);

  double rho = cfg.rho;  // 0 = derive from the first reflect surrogate value
  double obj_prev = metrics::unclamped_secrecy_sum(ch, res.state, cfg);
  bool infeasible_hit = false;

  int outer = 0;
  for (outer = 1; outer <= jcfg.max_outer; ++outer) {
    const auto t0 = clock::now();

    if (!opt.fixed_u) {
      res.state.u = solvers::solve_receive_beamformer(ch, res.state.W, cfg, ns,
                                                      jcfg.solver)
                        .u;
    }

    // Transmit-beamformer SCA.
    double surrogate_obj = 0.0;
    int n2 = 0;
    {
      double inner_prev = 0.0;
      for (n2 = 1; n2 <= jcfg.max_inner_w; ++n2) {
        const AuxiliaryVars aux = surrogate::compute_aux(ch, res.state, cfg, ns);
        auto sol = solvers::solve_w_subproblem(ch, res.state, aux, res.state.W,
                                               cfg, ns, jcfg.solver);
        if (sol.report.reason == solvers::Termination::infeasible) {
          infeasible_hit = true;
          break;
        }
        res.state.W = sol.W;
        const double v = sol.report.objective.back();
        surrogate_obj = v;
        if (n2 > 1 && variation_rate(v, inner_prev) <= jcfg.delta) break;
        inner_prev = v;
      }
    }

    // Reflect-vector SCA. The loop's variation rate is measured on the rate
    // part at the new anchor (tight there); the penalty term would otherwise
    // swamp the relative change and stop the loop early.
    int n3 = 0;
    if (!opt.fixed_phi && ch.M > 0 && !infeasible_hit) {
      const auto d = surrogate::ris_decompose(ch, res.state.W);
      const RVec c_ae = solvers::ae_rates_bits(ch, res.state.W, cfg);
      const RVec jam = solvers::jamming_terms(ch, cfg, ns);
      double inner_prev = 0.0;
      for (n3 = 1; n3 <= jcfg.max_inner_phi; ++n3) {
        const AuxiliaryVars aux = surrogate::compute_aux(ch, res.state, cfg, ns);
        if (rho == 0.0) {
          // First pass: size the penalty against the current objective.
          const double v0 = solvers::phi_surrogate_value(
              d, c_ae, jam, aux, res.state.phi, res.state.phi, 0.0, ns);
          rho = jcfg.rho_scale * std::max(std::abs(v0), 1.0) / ch.M;
        }
        auto sol = solvers::solve_phi_subproblem(ch, res.state, aux,
                                                 res.state.phi, rho, cfg, ns,
                                                 jcfg.solver);
        res.state.phi = sol.phi;
        const double v = solvers::phi_surrogate_value(
            d, c_ae, jam, aux, res.state.phi, res.state.phi, 0.0, ns);
        surrogate_obj = v;
        if (n3 > 1 && variation_rate(v, inner_prev) <= jcfg.delta) break;
        inner_prev = v;
      }
    }

    const double obj_new = metrics::unclamped_secrecy_sum(ch, res.state, cfg);
    const double wall_ms =
        jcfg.record_wall_time
            ? std::chrono::duration<double, std::milli>(clock::now() - t0).count()
            : 0.0;

    const auto rep = metrics::secrecy_rate(ch, res.state, cfg);
    res.trace.secrecy_rate.push_back(rep.secrecy_rate);
    res.trace.unclamped_sum.push_back(obj_new);
    res.trace.surrogate_objective.push_back(surrogate_obj);
    res.trace.scnr_residual.push_back(rep.scnr_slack);
    res.trace.power_used.push_back(res.state.W.squaredNorm());
    res.trace.max_modulus_dev.push_back(rep.max_modulus_dev);
    res.trace.inner_w_iters.push_back(n2);
    res.trace.inner_phi_iters.push_back(n3);
    res.trace.wall_ms.push_back(wall_ms);

    if (infeasible_hit) {
      res.status = RunStatus::infeasible;
      break;
    }
    if (variation_rate(obj_new, obj_prev) <= jcfg.delta) {
      res.status = RunStatus::converged;
      obj_prev = obj_new;
      break;
    }
    obj_prev = obj_new;
    if (outer == jcfg.max_outer) res.status = RunStatus::max_outer;
  }
  res.outer_iterations = static_cast<int>(res.trace.size());

  // Report on the unit-modulus-feasible state.
  res.sr_before_projection = metrics::secrecy_rate(ch, res.state, cfg).secrecy_rate;
  for (Eigen::Index m = 0; m < res.state.phi.size(); ++m) {
    const double a = std::abs(res.state.phi(m));
    res.state.phi(m) = (a > 0.0) ? cxd(res.state.phi(m) / a) : cxd(1.0);
  }
  if (!opt.fixed_u) {
    res.state.u =
        solvers::solve_receive_beamformer(ch, res.state.W, cfg, ns, jcfg.solver).u;
  }
  res.report = metrics::secrecy_rate(ch, res.state, cfg);
  return res;
}

RunResult run_with_restarts(const ChannelSet& ch, const SystemConfig& cfg,
                            const JbrdConfig& jcfg, const RunOptions& opt,
                            const CVec* phi_override, const CVec* u_override) {
  RunResult best = run_loop(ch, cfg, jcfg, opt, phi_override, u_override);
  for (int r = 1; r < jcfg.restarts; ++r) {
    SystemConfig cfg_r = cfg;
    cfg_r.seed =
        Rng::stream(cfg.seed, "restart_" + std::to_string(r)).next_u64();
    JbrdConfig jcfg_r = jcfg;
    jcfg_r.init_policy = InitPolicy::random;
    RunResult cand = run_loop(ch, cfg_r, jcfg_r, opt, phi_override, u_override);
    if (cand.report.secrecy_rate > best.report.secrecy_rate) {
      best = std::move(cand);
    }
  }
  return best;
}

}  // namespace

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::jbrd: return "jbrd";
    case Scheme::ris_random_phase: return "ris_random_phase";
    case Scheme::u_random: return "u_random";
    case Scheme::no_ris: return "no_ris";
  }
  return "unknown";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "jbrd") return Scheme::jbrd;
  if (name == "ris_random_phase") return Scheme::ris_random_phase;
  if (name == "u_random") return Scheme::u_random;
  if (name == "no_ris") return Scheme::no_ris;
  throw std::invalid_argument("unknown scheme: " + name);
}

double variation_rate(double obj_new, double obj_old) {
  return std::abs(obj_new - obj_old) / std::max(std::abs(obj_old), 1e-12);
}

BeamformingState init_state(const ChannelSet& ch, const SystemConfig& cfg,
                            const JbrdConfig& jcfg, bool* feasible) {
  return build_init(ch, cfg, jcfg, feasible, nullptr);
}

RunResult run_jbrd(const ChannelSet& ch, const SystemConfig& cfg,
                   const JbrdConfig& jcfg) {
  return run_with_restarts(ch, cfg, jcfg, RunOptions{}, nullptr, nullptr);
}

RunResult run_benchmark(const ChannelSet& ch, const SystemConfig& cfg,
                        const JbrdConfig& jcfg, Scheme scheme) {
  switch (scheme) {
    case Scheme::jbrd:
      return run_jbrd(ch, cfg, jcfg);
    case Scheme::ris_random_phase: {
      Rng rng = Rng::stream(cfg.seed, "bench_random_phi");
      const CVec phi = random_unit_modulus(ch.M, rng);
      RunOptions opt;
      opt.fixed_phi = true;
      return run_with_restarts(ch, cfg, jcfg, opt, &phi, nullptr);
    }
    case Scheme::u_random: {
      Rng rng = Rng::stream(cfg.seed, "bench_random_u");
      const CVec u = random_unit_vector(ch.N, rng);
      RunOptions opt;
      opt.fixed_u = true;
      return run_with_restarts(ch, cfg, jcfg, opt, nullptr, &u);
    }
    case Scheme::no_ris:
      return run_jbrd(channel::strip_ris(ch), cfg, jcfg);
  }
  throw std::logic_error("unreachable scheme");
}

}  // namespace risisac::jbrd
