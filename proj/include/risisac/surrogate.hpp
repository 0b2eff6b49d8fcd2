#ifndef RISISAC_SURROGATE_HPP
#define RISISAC_SURROGATE_HPP

#include "risisac/types.hpp"

namespace risisac::surrogate {

/// Inverse noise variances; the fractional transform is written against these.
struct NoiseScale {
  double m_k = 0.0;  // 1/sigma_k^2
  double m_a = 0.0;  // 1/sigma_ae^2
  double m_p = 0.0;  // 1/sigma_pe^2
  double m_s = 0.0;  // 1/sigma_s^2

  static NoiseScale from_config(const SystemConfig& cfg) {
    return {1.0 / cfg.sigma_k2, 1.0 / cfg.sigma_ae2, 1.0 / cfg.sigma_pe2,
            1.0 / cfg.sigma_s2};
  }
};

/// Closed-form ancillary variables, one triple per user.
struct AuxiliaryVars {
  RVec r;    // user aux
  RVec r_a;  // AE aux
  RVec r_p;  // PE aux
};

double opt_r_user(const ChannelSet& ch, const BeamformingState& s,
                  const SystemConfig& cfg, const NoiseScale& ns, int k);
double opt_r_ae(const ChannelSet& ch, const BeamformingState& s,
                const SystemConfig& cfg, const NoiseScale& ns, int k);
double opt_r_pe(const ChannelSet& ch, const BeamformingState& s,
                const SystemConfig& cfg, const NoiseScale& ns, int k);

AuxiliaryVars compute_aux(const ChannelSet& ch, const BeamformingState& s,
                          const SystemConfig& cfg, const NoiseScale& ns);

/// The transformed per-user terms, in nats. At r = opt_r_* these equal
/// ln(2) * R_k (phi_user) and ln(2) * R_{ae,k} / R_{pe,k} (phi_ae / phi_pe);
/// for any other r > 0, phi_user lower-bounds and phi_ae/phi_pe upper-bound
/// their rates. Throw std::domain_error for r <= 0.
double phi_user(const ChannelSet& ch, const BeamformingState& s,
                const SystemConfig& cfg, const NoiseScale& ns, double r, int k);
double phi_ae(const ChannelSet& ch, const BeamformingState& s,
              const SystemConfig& cfg, const NoiseScale& ns, double r, int k);
double phi_pe(const ChannelSet& ch, const BeamformingState& s,
              const SystemConfig& cfg, const NoiseScale& ns, double r, int k);

/// First-order minorizer of |c(w)|^2 around an anchor for a linear form
/// c(w) = row * w: 2 Re{c(anchor)^* c(w)} - |c(anchor)|^2.
/// Tight at w = anchor, and a global lower bound by convexity.
double quadratic_minorizer(const cxd& value, const cxd& anchor_value);

double taylor_eta_user(const ChannelSet& ch, const CVec& phi, const CVec& w,
                       const CVec& w_anchor, int k);
double taylor_eta_ae(const ChannelSet& ch, const CVec& w, const CVec& w_anchor);
double taylor_eta_pe(const ChannelSet& ch, const CVec& phi, const CVec& w,
                     const CVec& w_anchor);
/// Echo term uses the effective sensing row h_s^H = u^H H_bt.
double taylor_eta_echo(const ChannelSet& ch, const CVec& u, const CVec& w,
                       const CVec& w_anchor);

/// Reflect-vector decomposition: for every user k and column i,
///   g_k(Phi) w_i   = phi^T s[k][i] + t(k,i)
///   h_pe(Phi) w_i  = phi^T a[i]    + b(i).
struct RisDecomposition {
  int K = 0, M = 0, L = 0;                // L = K + N columns
  std::vector<std::vector<CVec>> s;       // K x L, each length M
  CMat t;                                 // K x L
  std::vector<CVec> a;                    // L, each length M
  CVec b;                                 // L
};

RisDecomposition ris_decompose(const ChannelSet& ch, const CMat& W);

/// Minorizers of |phi^T s + t|^2 (user path) and |phi^T a + b|^2 (PE path)
/// around phi_anchor; only the phi^T S S^H phi^* part is linearized.
double taylor_eta_phi_user(const RisDecomposition& d, const CVec& phi,
                           const CVec& phi_anchor, int k, int i);
double taylor_eta_phi_pe(const RisDecomposition& d, const CVec& phi,
                         const CVec& phi_anchor, int i);

/// ||phi||^2 >= 2 Re{phi^H anchor} - ||anchor||^2, tight at the anchor.
double norm_sq_minorizer(const CVec& phi, const CVec& phi_anchor);

}  // namespace risisac::surrogate

#endif
