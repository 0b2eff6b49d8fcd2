#ifndef RISISAC_METRICS_HPP
#define RISISAC_METRICS_HPP

#include "risisac/types.hpp"

namespace risisac::metrics {

/// g_k(Phi) = g_{b,k}^H + g_{r,k}^H diag(phi) H_br, 1 x N.
CRowVec composite_user_channel(const ChannelSet& ch, const CVec& phi, int k);

/// h_pe(Phi) = h_bp^H + h_rp^H diag(phi) H_br, 1 x N.
CRowVec composite_pe_channel(const ChannelSet& ch, const CVec& phi);

double sinr_user(const ChannelSet& ch, const BeamformingState& s,
                 const SystemConfig& cfg, int k);
double rate_user(const ChannelSet& ch, const BeamformingState& s,
                 const SystemConfig& cfg, int k);

/// Echo SCNR after receive beamforming; scale invariant in u.
/// Throws std::domain_error if u = 0.
double scnr_echo(const ChannelSet& ch, const BeamformingState& s,
                 const SystemConfig& cfg);

double sinr_ae(const ChannelSet& ch, const BeamformingState& s,
               const SystemConfig& cfg, int k);
double rate_ae(const ChannelSet& ch, const BeamformingState& s,
               const SystemConfig& cfg, int k);

double sinr_pe(const ChannelSet& ch, const BeamformingState& s,
               const SystemConfig& cfg, int k);
double rate_pe(const ChannelSet& ch, const BeamformingState& s,
               const SystemConfig& cfg, int k);

struct SecrecyReport {
  RVec rate_user;     // R_k, bits/s/Hz
  RVec rate_ae;       // R_ae,k
  RVec rate_pe;       // R_pe,k
  RVec secrecy_term;  // max(0, R_k - max(R_ae,k, R_pe,k))
  double secrecy_rate = 0.0;
  double scnr = 0.0;

  // Feasibility residuals: >= 0 means the constraint holds.
  double power_slack = 0.0;        // P - ||W||_F^2
  double scnr_slack = 0.0;         // SCNR - gamma_echo
  double max_modulus_dev = 0.0;    // max_m ||phi_m| - 1|
};

SecrecyReport secrecy_rate(const ChannelSet& ch, const BeamformingState& s,
                           const SystemConfig& cfg);

/// Sum_k (R_k - max(R_ae,k, R_pe,k)) without the per-user clamp; the quantity
/// the fractional transform rewrites and the AO loop monitors.
double unclamped_secrecy_sum(const ChannelSet& ch, const BeamformingState& s,
                             const SystemConfig& cfg);

}  // namespace risisac::metrics

#endif
