#ifndef RISISAC_ORACLE_METRICS_HPP
#define RISISAC_ORACLE_METRICS_HPP

// Scalar-expansion reference for every performance metric, written with plain
// loops straight from the defining equations. Kept independent of the library
// evaluation path on purpose.

#include <cmath>
#include <complex>
#include <vector>

#include "risisac/types.hpp"

namespace oracle_metrics {

using risisac::BeamformingState;
using risisac::ChannelSet;
using risisac::SystemConfig;
using risisac::cxd;

inline std::vector<cxd> composite_user_row(const ChannelSet& ch,
                                           const risisac::CVec& phi, int k) {
  std::vector<cxd> row(ch.N);
  for (int n = 0; n < ch.N; ++n) row[n] = std::conj(ch.g_b[k](n));
  for (int m = 0; m < ch.M; ++m) {
    const cxd lhs = std::conj(ch.g_r[k](m)) * phi(m);
    for (int n = 0; n < ch.N; ++n) row[n] += lhs * ch.H_br(m, n);
  }
  return row;
}

inline std::vector<cxd> composite_pe_row(const ChannelSet& ch,
                                         const risisac::CVec& phi) {
  std::vector<cxd> row(ch.N);
  for (int n = 0; n < ch.N; ++n) row[n] = std::conj(ch.h_bp(n));
  for (int m = 0; m < ch.M; ++m) {
    const cxd lhs = std::conj(ch.h_rp(m)) * phi(m);
    for (int n = 0; n < ch.N; ++n) row[n] += lhs * ch.H_br(m, n);
  }
  return row;
}

inline cxd row_dot_col(const std::vector<cxd>& row, const risisac::CMat& W,
                       int col) {
  cxd acc = 0.0;
  for (int n = 0; n < static_cast<int>(row.size()); ++n) acc += row[n] * W(n, col);
  return acc;
}

inline double sinr_user(const ChannelSet& ch, const BeamformingState& s,
                        const SystemConfig& cfg, int k) {
  const auto row = composite_user_row(ch, s.phi, k);
  const int L = ch.K + ch.N;
  double interference = 0.0, signal = 0.0;
  for (int i = 0; i < L; ++i) {
    const double p = std::norm(row_dot_col(row, s.W, i));
    if (i == k) signal = p;
    else interference += p;
  }
  return signal /
         (interference + cfg.P_e * std::norm(ch.h_ae[k]) + cfg.sigma_k2);
}

inline double sinr_ae(const ChannelSet& ch, const BeamformingState& s,
                      const SystemConfig& cfg, int k) {
  std::vector<cxd> row(ch.N);
  for (int n = 0; n < ch.N; ++n) row[n] = std::conj(ch.h_bt(n));
  const int L = ch.K + ch.N;
  double interference = 0.0, signal = 0.0;
  for (int i = 0; i < L; ++i) {
    const double p = std::norm(row_dot_col(row, s.W, i));
    if (i == k) signal = p;
    else interference += p;
  }
  return signal / (interference + cfg.sigma_ae2);
}

inline double sinr_pe(const ChannelSet& ch, const BeamformingState& s,
                      const SystemConfig& cfg, int k) {
  const auto row = composite_pe_row(ch, s.phi);
  const int L = ch.K + ch.N;
  double interference = 0.0, signal = 0.0;
  for (int i = 0; i < L; ++i) {
    const double p = std::norm(row_dot_col(row, s.W, i));
    if (i == k) signal = p;
    else interference += p;
  }
  return signal / (interference + cfg.sigma_pe2);
}

inline double scnr_echo(const ChannelSet& ch, const BeamformingState& s,
                        const SystemConfig& cfg) {
  // u^H H_bt = (u^H h_bt) h_bt^H for the rank-one cascade.
  cxd uh = 0.0;
  for (int n = 0; n < ch.N; ++n) uh += std::conj(s.u(n)) * ch.h_bt(n);
  std::vector<cxd> row(ch.N);
  for (int n = 0; n < ch.N; ++n) row[n] = uh * std::conj(ch.h_bt(n));
  double signal = 0.0;
  for (int i = 0; i < ch.K + ch.N; ++i)
    signal += std::norm(row_dot_col(row, s.W, i));
  double unorm2 = 0.0;
  for (int n = 0; n < ch.N; ++n) unorm2 += std::norm(s.u(n));
  const double denom = cfg.sigma_s2 * unorm2 + cfg.P_e * std::norm(uh);
  return cfg.zeta2 * signal / denom;
}

inline double rate(double sinr) { return std::log2(1.0 + sinr); }

inline double secrecy_rate(const ChannelSet& ch, const BeamformingState& s,
                           const SystemConfig& cfg) {
  double sr = 0.0;
  for (int k = 0; k < ch.K; ++k) {
    const double leak = std::max(rate(sinr_ae(ch, s, cfg, k)),
                                 rate(sinr_pe(ch, s, cfg, k)));
    sr += std::max(0.0, rate(sinr_user(ch, s, cfg, k)) - leak);
  }
  return sr;
}

inline double unclamped_sum(const ChannelSet& ch, const BeamformingState& s,
                            const SystemConfig& cfg) {
  double sum = 0.0;
  for (int k = 0; k < ch.K; ++k) {
    sum += rate(sinr_user(ch, s, cfg, k)) -
           std::max(rate(sinr_ae(ch, s, cfg, k)), rate(sinr_pe(ch, s, cfg, k)));
  }
  return sum;
}

}  // namespace oracle_metrics

#endif
