#include "risisac/metrics.hpp"

#include <cmath>
#include <stdexcept>

namespace risisac::metrics {

namespace {

double log2_1p(double x) { return std::log1p(x) / kLn2; }

void check_user_index(const ChannelSet& ch, int k) {
  if (k < 0 || k >= ch.K) throw std::out_of_range("user index out of range");
}

}  // namespace

CRowVec composite_user_channel(const ChannelSet& ch, const CVec& phi, int k) {
  check_user_index(ch, k);
  CRowVec g = ch.g_b[k].adjoint();
  if (ch.M > 0) {
    g += (ch.g_r[k].adjoint() * phi.asDiagonal()) * ch.H_br;
  }
  return g;
}

CRowVec composite_pe_channel(const ChannelSet& ch, const CVec& phi) {
  CRowVec h = ch.h_bp.adjoint();
  if (ch.M > 0) {
    h += (ch.h_rp.adjoint() * phi.asDiagonal()) * ch.H_br;
  }
  return h;
}

double sinr_user(const ChannelSet& ch, const BeamformingState& s,
                 const SystemConfig& cfg, int k) {
  const CRowVec g = composite_user_channel(ch, s.phi, k);
  const CRowVec prods = g * s.W;  // 1 x (K+N)
  double interference = 0.0;
  for (Eigen::Index i = 0; i < prods.size(); ++i) {
    if (i != k) interference += std::norm(prods(i));
  }
  const double denom =
      interference + cfg.P_e * std::norm(ch.h_ae[k]) + cfg.sigma_k2;
  return std::norm(prods(k)) / denom;
}

double rate_user(const ChannelSet& ch, const BeamformingState& s,
                 const SystemConfig& cfg, int k) {
  return log2_1p(sinr_user(ch, s, cfg, k));
}

double scnr_echo(const ChannelSet& ch, const BeamformingState& s,
                 const SystemConfig& cfg) {
  if (s.u.norm() == 0.0) throw std::domain_error("scnr_echo: u must be nonzero");
  const CRowVec uhH = s.u.adjoint() * ch.H_bt;  // 1 x N
  const double signal = cfg.zeta2 * (uhH * s.W).squaredNorm();
  const cxd uh = s.u.adjoint() * ch.h_bt;
  const double denom =
      cfg.sigma_s2 * s.u.squaredNorm() + cfg.P_e * std::norm(uh);
  return signal / denom;
}

double sinr_ae(const ChannelSet& ch, const BeamformingState& s,
               const SystemConfig& cfg, int k) {
  check_user_index(ch, k);
  const CRowVec prods = ch.h_bt.adjoint() * s.W;
  double interference = 0.0;
  for (Eigen::Index i = 0; i < prods.size(); ++i) {
    if (i != k) interference += std::norm(prods(i));
  }
  return std::norm(prods(k)) / (interference + cfg.sigma_ae2);
}

double rate_ae(const ChannelSet& ch, const BeamformingState& s,
               const SystemConfig& cfg, int k) {
  return log2_1p(sinr_ae(ch, s, cfg, k));
}

double sinr_pe(const ChannelSet& ch, const BeamformingState& s,
               const SystemConfig& cfg, int k) {
  check_user_index(ch, k);
  const CRowVec prods = composite_pe_channel(ch, s.phi) * s.W;
  double interference = 0.0;
  for (Eigen::Index i = 0; i < prods.size(); ++i) {
    if (i != k) interference += std::norm(prods(i));
  }
  return std::norm(prods(k)) / (interference + cfg.sigma_pe2);
}

double rate_pe(const ChannelSet& ch, const BeamformingState& s,
               const SystemConfig& cfg, int k) {
  return log2_1p(sinr_pe(ch, s, cfg, k));
}

SecrecyReport secrecy_rate(const ChannelSet& ch, const BeamformingState& s,
                           const SystemConfig& cfg) {
  SecrecyReport rep;
  const int K = ch.K;
  rep.rate_user.resize(K);
  rep.rate_ae.resize(K);
  rep.rate_pe.resize(K);
  rep.secrecy_term.resize(K);
  for (int k = 0; k < K; ++k) {
    rep.rate_user(k) = rate_user(ch, s, cfg, k);
    rep.rate_ae(k) = rate_ae(ch, s, cfg, k);
    rep.rate_pe(k) = rate_pe(ch, s, cfg, k);
    rep.secrecy_term(k) = std::max(
        0.0, rep.rate_user(k) - std::max(rep.rate_ae(k), rep.rate_pe(k)));
  }
  rep.secrecy_rate = rep.secrecy_term.sum();
  rep.scnr = scnr_echo(ch, s, cfg);
  rep.power_slack = cfg.P - s.W.squaredNorm();
  rep.scnr_slack = rep.scnr - cfg.gamma_echo;
  rep.max_modulus_dev = 0.0;
  for (Eigen::Index m = 0; m < s.phi.size(); ++m) {
    rep.max_modulus_dev =
        std::max(rep.max_modulus_dev, std::abs(std::abs(s.phi(m)) - 1.0));
  }
  return rep;
}

double unclamped_secrecy_sum(const ChannelSet& ch, const BeamformingState& s,
                             const SystemConfig& cfg) {
  double sum = 0.0;
  for (int k = 0; k < ch.K; ++k) {
    sum += rate_user(ch, s, cfg, k) -
           std::max(rate_ae(ch, s, cfg, k), rate_pe(ch, s, cfg, k));
  }
  return sum;
}

}  // namespace risisac::metrics
