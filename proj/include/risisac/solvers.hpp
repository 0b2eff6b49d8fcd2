#ifndef RISISAC_SOLVERS_HPP
#define RISISAC_SOLVERS_HPP

#include <vector>

#include "risisac/surrogate.hpp"
#include "risisac/types.hpp"

namespace risisac::solvers {

struct SolverParams {
  int max_inner_steps = 80;
  double step_init = 1.0;      // relative to ||x|| / ||grad||
  double backtrack = 0.5;      // step shrink factor, in (0,1)
  double armijo = 1e-4;
  double inner_tol = 1e-8;     // relative objective change
  int max_backtracks = 40;
  int dykstra_iters = 400;
  double dykstra_tol = 1e-12;
  int power_iters = 10000;
  double power_tol = 1e-10;
};

enum class Termination { converged, max_steps, infeasible };

struct SubproblemReport {
  std::vector<double> objective;  // accepted iterates, non-decreasing
  int steps = 0;
  Termination reason = Termination::converged;
};

// ---- receive beamformer (generalized Rayleigh quotient) ----

struct PowerIterResult {
  CVec v;
  double value = 0.0;
  int iters = 0;
};

/// Dominant eigenvector of C by power iteration, phase-canonicalized so the
/// largest-magnitude entry is real nonnegative.
PowerIterResult power_iteration(const CMat& C, const CVec& v0, double tol,
                                int max_iters);

struct ReceiveBeamformer {
  CVec u;                  // unit norm
  bool degenerate = false; // W = 0: any direction in span(h_bt) works
};

/// Maximizes u^H A u / u^H B u with A = m_s zeta^2 H_bt (sum_i w_i w_i^H) H_bt^H
/// and B = I + m_s P_e h_bt h_bt^H, using the closed-form rank-one inverse of B.
ReceiveBeamformer solve_receive_beamformer(const ChannelSet& ch, const CMat& W,
                                           const SystemConfig& cfg,
                                           const surrogate::NoiseScale& ns,
                                           const SolverParams& params = {});

// ---- projections ----

/// Euclidean projection onto {||W||_F^2 <= P}.
CMat project_power_ball(const CMat& W, double P);

/// Per-element projection onto {|phi_m| <= 1}.
CVec project_unit_disks(const CVec& phi);

/// The linearized sensing constraint as an affine halfspace
/// Re tr(G^H W) >= b in the beamformer matrix.
struct SensingHalfspace {
  CMat G;
  double b = 0.0;

  static SensingHalfspace build(const ChannelSet& ch, const CMat& anchor_W,
                                const CVec& u, double gamma_echo,
                                const SystemConfig& cfg,
                                const surrogate::NoiseScale& ns);
  double value(const CMat& W) const;
  bool satisfied(const CMat& W, double tol = 1e-9) const;
};

struct HalfspaceProjection {
  CMat W;
  bool feasible = true;  // false: zero gradient with a violated constraint
};

HalfspaceProjection project_sensing_halfspace(const CMat& W, const CMat& anchor_W,
                                              const CVec& u, const ChannelSet& ch,
                                              double gamma_echo,
                                              const SystemConfig& cfg,
                                              const surrogate::NoiseScale& ns);

// ---- transmit beamformer subproblem ----

/// Concave surrogate objective (bits) of the transmit-beamformer subproblem:
/// sum_k [phi_hat_k - max(phi_hat_ae_k, phi_hat_pe_k)] / ln 2 with the
/// auxiliary upper-bound variables eliminated in closed form. Returns -inf
/// outside the log domain (possible far from the anchor).
double w_surrogate_value(const ChannelSet& ch, const BeamformingState& s,
                         const surrogate::AuxiliaryVars& aux, const CMat& anchor_W,
                         const CMat& W, const SystemConfig& cfg,
                         const surrogate::NoiseScale& ns);

/// Gradient G of w_surrogate_value with dF = Re tr(G^H dW). At a tie of the
/// AE/PE branches the AE-branch subgradient is returned.
CMat surrogate_gradient_w(const ChannelSet& ch, const BeamformingState& s,
                          const surrogate::AuxiliaryVars& aux, const CMat& anchor_W,
                          const CMat& W, const SystemConfig& cfg,
                          const surrogate::NoiseScale& ns);

struct WSolution {
  CMat W;
  SubproblemReport report;
};

/// Projected-ascent solve of the transmit subproblem over the intersection of
/// the power ball and the linearized sensing halfspace (Dykstra alternation).
WSolution solve_w_subproblem(const ChannelSet& ch, const BeamformingState& s,
                             const surrogate::AuxiliaryVars& aux,
                             const CMat& anchor_W, const SystemConfig& cfg,
                             const surrogate::NoiseScale& ns,
                             const SolverParams& params);

// ---- RIS reflection subproblem ----

/// Penalized concave surrogate (bits + penalty) of the reflection subproblem.
/// c_ae_bits holds the phi-independent AE rates R_ae,k.
double phi_surrogate_value(const surrogate::RisDecomposition& d,
                           const RVec& c_ae_bits, const RVec& jam,
                           const surrogate::AuxiliaryVars& aux,
                           const CVec& anchor_phi, const CVec& phi, double rho,
                           const surrogate::NoiseScale& ns);

CVec surrogate_gradient_phi(const surrogate::RisDecomposition& d,
                            const RVec& c_ae_bits, const RVec& jam,
                            const surrogate::AuxiliaryVars& aux,
                            const CVec& anchor_phi, const CVec& phi, double rho,
                            const surrogate::NoiseScale& ns);

struct PhiSolution {
  CVec phi;
  SubproblemReport report;
};

PhiSolution solve_phi_subproblem(const ChannelSet& ch, const BeamformingState& s,
                                 const surrogate::AuxiliaryVars& aux,
                                 const CVec& anchor_phi, double rho,
                                 const SystemConfig& cfg,
                                 const surrogate::NoiseScale& ns,
                                 const SolverParams& params);

/// m_k P_e |h_ae,k|^2 per user, the jamming floor inside the user terms.
RVec jamming_terms(const ChannelSet& ch, const SystemConfig& cfg,
                   const surrogate::NoiseScale& ns);

/// R_ae,k for all users (constant within the reflection subproblem).
RVec ae_rates_bits(const ChannelSet& ch, const CMat& W, const SystemConfig& cfg);

}  // namespace risisac::solvers

#endif
