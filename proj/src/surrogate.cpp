#include "risisac/surrogate.hpp"

#include <cmath>
#include <stdexcept>

#include "risisac/metrics.hpp"

namespace risisac::surrogate {

namespace {

void check_r(double r) {
  if (!(r > 0.0)) throw std::domain_error("ancillary variable must be > 0");
}

/// |row * w_i|^2 for all columns, plus the sum excluding column k.
struct RowPowers {
  RVec sq;       // per column
  double total = 0.0;

  explicit RowPowers(const CRowVec& row, const CMat& W) {
    const CRowVec prods = row * W;
    sq.resize(prods.size());
    for (Eigen::Index i = 0; i < prods.size(); ++i) {
      sq(i) = std::norm(prods(i));
      total += sq(i);
    }
  }
  double excluding(int k) const { return total - sq(k); }
};

}  // namespace

double opt_r_user(const ChannelSet& ch, const BeamformingState& s,
                  const SystemConfig& cfg, const NoiseScale& ns, int k) {
  const RowPowers p(metrics::composite_user_channel(ch, s.phi, k), s.W);
  return 1.0 /
         (ns.m_k * p.excluding(k) + ns.m_k * cfg.P_e * std::norm(ch.h_ae[k]) + 1.0);
}

double opt_r_ae(const ChannelSet& ch, const BeamformingState& s,
                const SystemConfig& cfg, const NoiseScale& ns, int k) {
  (void)cfg;
  (void)k;  // full-column sum, identical for every user
  const RowPowers p(ch.h_bt.adjoint(), s.W);
  return 1.0 / (ns.m_a * p.total + 1.0);
}

double opt_r_pe(const ChannelSet& ch, const BeamformingState& s,
                const SystemConfig& cfg, const NoiseScale& ns, int k) {
  (void)cfg;
  (void)k;
  const RowPowers p(metrics::composite_pe_channel(ch, s.phi), s.W);
  return 1.0 / (ns.m_p * p.total + 1.0);
}

AuxiliaryVars compute_aux(const ChannelSet& ch, const BeamformingState& s,
                          const SystemConfig& cfg, const NoiseScale& ns) {
  AuxiliaryVars aux;
  aux.r.resize(ch.K);
  aux.r_a.resize(ch.K);
  aux.r_p.resize(ch.K);
  for (int k = 0; k < ch.K; ++k) {
    aux.r(k) = opt_r_user(ch, s, cfg, ns, k);
    aux.r_a(k) = opt_r_ae(ch, s, cfg, ns, k);
    aux.r_p(k) = opt_r_pe(ch, s, cfg, ns, k);
  }
  return aux;
}

double phi_user(const ChannelSet& ch, const BeamformingState& s,
                const SystemConfig& cfg, const NoiseScale& ns, double r, int k) {
  check_r(r);
  const RowPowers p(metrics::composite_user_channel(ch, s.phi, k), s.W);
  const double jam = ns.m_k * cfg.P_e * std::norm(ch.h_ae[k]);
  return std::log(ns.m_k * p.total + jam + 1.0) -
         r * (ns.m_k * p.excluding(k) + jam + 1.0) + std::log(r) + 1.0;
}

double phi_ae(const ChannelSet& ch, const BeamformingState& s,
              const SystemConfig& cfg, const NoiseScale& ns, double r, int k) {
  (void)cfg;
  check_r(r);
  const RowPowers p(ch.h_bt.adjoint(), s.W);
  return r * (ns.m_a * p.total + 1.0) - std::log(r) - 1.0 -
         std::log(ns.m_a * p.excluding(k) + 1.0);
}

double phi_pe(const ChannelSet& ch, const BeamformingState& s,
              const SystemConfig& cfg, const NoiseScale& ns, double r, int k) {
  (void)cfg;
  check_r(r);
  const RowPowers p(metrics::composite_pe_channel(ch, s.phi), s.W);
  return r * (ns.m_p * p.total + 1.0) - std::log(r) - 1.0 -
         std::log(ns.m_p * p.excluding(k) + 1.0);
}

double quadratic_minorizer(const cxd& value, const cxd& anchor_value) {
  return 2.0 * (std::conj(anchor_value) * value).real() - std::norm(anchor_value);
}

double taylor_eta_user(const ChannelSet& ch, const CVec& phi, const CVec& w,
                       const CVec& w_anchor, int k) {
  const CRowVec g = metrics::composite_user_channel(ch, phi, k);
  return quadratic_minorizer((g * w)(0), (g * w_anchor)(0));
}

double taylor_eta_ae(const ChannelSet& ch, const CVec& w, const CVec& w_anchor) {
  const CRowVec h = ch.h_bt.adjoint();
  return quadratic_minorizer((h * w)(0), (h * w_anchor)(0));
}

double taylor_eta_pe(const ChannelSet& ch, const CVec& phi, const CVec& w,
                     const CVec& w_anchor) {
  const CRowVec h = metrics::composite_pe_channel(ch, phi);
  return quadratic_minorizer((h * w)(0), (h * w_anchor)(0));
}

double taylor_eta_echo(const ChannelSet& ch, const CVec& u, const CVec& w,
                       const CVec& w_anchor) {
  const CRowVec hs = u.adjoint() * ch.H_bt;
  return quadratic_minorizer((hs * w)(0), (hs * w_anchor)(0));
}

RisDecomposition ris_decompose(const ChannelSet& ch, const CMat& W) {
  RisDecomposition d;
  d.K = ch.K;
  d.M = ch.M;
  d.L = static_cast<int>(W.cols());
  d.s.assign(d.K, std::vector<CVec>(d.L));
  d.t.resize(d.K, d.L);
  d.a.resize(d.L);
  d.b.resize(d.L);

  const CMat HW = (ch.M > 0) ? CMat(ch.H_br * W) : CMat(0, W.cols());  // M x L
  for (int i = 0; i < d.L; ++i) {
    for (int k = 0; k < d.K; ++k) {
      d.s[k][i] = (ch.M > 0) ? CVec(ch.g_r[k].conjugate().asDiagonal() * HW.col(i))
                             : CVec(0);
      d.t(k, i) = (ch.g_b[k].adjoint() * W.col(i))(0);
    }
    d.a[i] = (ch.M > 0) ? CVec(ch.h_rp.conjugate().asDiagonal() * HW.col(i))
                        : CVec(0);
    d.b(i) = (ch.h_bp.adjoint() * W.col(i))(0);
  }
  return d;
}

namespace {

/// Minorizer of |phi^T s + t|^2: the pure quadratic |phi^T s|^2 is linearized
/// at the anchor, the cross and constant terms stay exact.
double eta_phi(const CVec& s, const cxd& t, const CVec& phi,
               const CVec& phi_anchor) {
  const cxd z = (s.size() > 0) ? cxd((s.transpose() * phi)(0)) : cxd(0.0);
  const cxd z_anchor =
      (s.size() > 0) ? cxd((s.transpose() * phi_anchor)(0)) : cxd(0.0);
  return quadratic_minorizer(z, z_anchor) + 2.0 * (t * std::conj(z)).real() +
         std::norm(t);
}

}  // namespace

double taylor_eta_phi_user(const RisDecomposition& d, const CVec& phi,
                           const CVec& phi_anchor, int k, int i) {
  return eta_phi(d.s[k][i], d.t(k, i), phi, phi_anchor);
}

double taylor_eta_phi_pe(const RisDecomposition& d, const CVec& phi,
                         const CVec& phi_anchor, int i) {
  return eta_phi(d.a[i], d.b(i), phi, phi_anchor);
}

double norm_sq_minorizer(const CVec& phi, const CVec& phi_anchor) {
  return 2.0 * (phi.adjoint() * phi_anchor)(0).real() - phi_anchor.squaredNorm();
}

}  // namespace risisac::surrogate
