#ifndef RISISAC_JBRD_HPP
#define RISISAC_JBRD_HPP

#include <string>
#include <vector>

#include "risisac/metrics.hpp"
#include "risisac/solvers.hpp"
#include "risisac/types.hpp"

namespace risisac::jbrd {

enum class InitPolicy { mrt_aligned, random };
enum class Scheme { jbrd, ris_random_phase, u_random, no_ris };
enum class RunStatus { converged, max_outer, infeasible };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& name);

struct JbrdConfig {
  double delta = 1e-3;     // variation-rate threshold, outer and inner
  int max_outer = 50;
  int max_inner_w = 12;
  int max_inner_phi = 12;
  double rho_scale = 10.0; // rho = rho_scale * |surrogate at init| / M
  InitPolicy init_policy = InitPolicy::mrt_aligned;
  // Runs beyond the first start from seeded random points; the best final
  // secrecy rate wins. The landscape is multi-modal at small N.
  int restarts = 1;
  solvers::SolverParams solver;
  bool record_wall_time = false;  // timings in traces break byte determinism
};

struct IterationTrace {
  std::vector<double> secrecy_rate;       // clamped, bits/s/Hz
  std::vector<double> unclamped_sum;
  std::vector<double> surrogate_objective;
  std::vector<double> scnr_residual;      // scnr - gamma_echo
  std::vector<double> power_used;         // ||W||_F^2
  std::vector<double> max_modulus_dev;
  std::vector<int> inner_w_iters;
  std::vector<int> inner_phi_iters;
  std::vector<double> wall_ms;
  std::size_t size() const { return secrecy_rate.size(); }
};

struct RunResult {
  BeamformingState state;
  IterationTrace trace;
  metrics::SecrecyReport report;  // final, after the hard phi projection
  RunStatus status = RunStatus::converged;
  bool init_feasible = true;
  double sr_before_projection = 0.0;
  int outer_iterations = 0;
};

/// |obj_new - obj_old| / max(|obj_old|, 1e-12).
double variation_rate(double obj_new, double obj_old);

/// Initial (W, phi, u). mrt_aligned points the communication columns at the
/// composite user channels, the radar columns at the target with random
/// phases, aligns the reflect phases on the first user's cascaded path, and
/// reallocates power toward the target until the echo constraint holds.
/// ||W||_F^2 = 0.9 P either way.
BeamformingState init_state(const ChannelSet& ch, const SystemConfig& cfg,
                            const JbrdConfig& jcfg, bool* feasible = nullptr);

/// Alternating optimization of u (Rayleigh quotient), W (inner SCA), and phi
/// (inner SCA with the quadratic penalty), until the unclamped secrecy sum's
/// variation rate drops below delta.
RunResult run_jbrd(const ChannelSet& ch, const SystemConfig& cfg,
                   const JbrdConfig& jcfg);

RunResult run_benchmark(const ChannelSet& ch, const SystemConfig& cfg,
                        const JbrdConfig& jcfg, Scheme scheme);

}  // namespace risisac::jbrd

#endif
