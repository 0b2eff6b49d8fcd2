#include "risisac/solvers.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "risisac/metrics.hpp"

namespace risisac::solvers {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

template <typename X>
double real_inner(const X& a, const X& b) {
  return a.conjugate().cwiseProduct(b).sum().real();
}

/// Projected ascent with Armijo backtracking. `project` receives the trial
/// point and a feasibility flag; a false flag aborts with an infeasible
/// report. The accepted-objective trajectory is non-decreasing by
/// construction.
template <typename X, typename ValueFn, typename GradFn, typename ProjFn>
SubproblemReport projected_ascent(X& x, ValueFn&& value, GradFn&& grad,
                                  ProjFn&& project, const SolverParams& p) {
  SubproblemReport rep;
  double fx = value(x);
  rep.objective.push_back(fx);
  if (!std::isfinite(fx)) {
    rep.reason = Termination::infeasible;
    return rep;
  }

  double step_scale = p.step_init;
  for (int step = 0; step < p.max_inner_steps; ++step) {
    const X g = grad(x);
    const double gnorm = std::sqrt(real_inner(g, g));
    if (!(gnorm > 0.0)) {
      rep.reason = Termination::converged;
      return rep;
    }
    const double ref = std::sqrt(std::max(real_inner(x, x), 1e-12));
    double t = step_scale * ref / gnorm;

    bool accepted = false;
    for (int bt = 0; bt < p.max_backtracks; ++bt) {
      bool ok = true;
      X y = project(x + t * g, ok);
      if (!ok) {
        rep.reason = Termination::infeasible;
        return rep;
      }
      const X d = y - x;
      const double dist = std::sqrt(real_inner(d, d));
      if (dist <= 1e-14 * std::max(1.0, ref)) {
        // Gradient lies in the normal cone: projected stationary point.
        rep.reason = Termination::converged;
        return rep;
      }
      const double gain = real_inner(g, d);
      const double fy = value(y);
      if (std::isfinite(fy) && fy >= fx + p.armijo * std::max(gain, 0.0)) {
        const double variation =
            std::abs(fy - fx) / std::max(std::abs(fx), 1e-12);
        x = std::move(y);
        fx = fy;
        rep.objective.push_back(fx);
        rep.steps = step + 1;
        step_scale = (bt == 0) ? std::min(step_scale * 2.0, 1e4)
                               : std::max(t * gnorm / ref, 1e-12);
        accepted = true;
        if (variation <= p.inner_tol) {
          rep.reason = Termination::converged;
          return rep;
        }
        break;
      }
      t *= p.backtrack;
    }
    if (!accepted) {
      // No ascent direction survives backtracking (subgradient kink or
      // numerical floor); the current iterate is the best one.
      rep.reason = Termination::converged;
      return rep;
    }
  }
  rep.reason = Termination::max_steps;
  return rep;
}

}  // namespace

// ---------------------------------------------------------------------------
// Receive beamformer
// ---------------------------------------------------------------------------

PowerIterResult power_iteration(const CMat& C, const CVec& v0, double tol,
                                int max_iters) {
  PowerIterResult res;
  CVec v = v0.normalized();
  for (int it = 0; it < max_iters; ++it) {
    CVec w = C * v;
    const double nw = w.norm();
    if (!(nw > 0.0)) break;  // v in the null space; caller handles A = 0
    w /= nw;
    // Align the phase before measuring progress.
    const cxd overlap = (v.adjoint() * w)(0);
    const double mag = std::abs(overlap);
    const CVec w_aligned = (mag > 0.0) ? CVec(w * (std::conj(overlap) / mag)) : w;
    const double diff = (w_aligned - v).norm();
    v = w_aligned;
    res.iters = it + 1;
    if (diff <= tol) break;
  }
  // Canonical phase: largest-magnitude entry real nonnegative.
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (std::abs(v(imax)) > 0.0) v *= std::conj(v(imax)) / std::abs(v(imax));
  res.v = v.normalized();
  res.value = (res.v.adjoint() * C * res.v)(0).real();
  return res;
}

ReceiveBeamformer solve_receive_beamformer(const ChannelSet& ch, const CMat& W,
                                           const SystemConfig& cfg,
                                           const surrogate::NoiseScale& ns,
                                           const SolverParams& params) {
  ReceiveBeamformer out;
  const int N = ch.N;
  const double hn2 = ch.h_bt.squaredNorm();
  if (!(hn2 > 0.0)) throw std::domain_error("solve_receive_beamformer: h_bt = 0");

  const CMat HW = ch.H_bt * W;
  const CMat A = ns.m_s * cfg.zeta2 * (HW * HW.adjoint());
  if (!(A.norm() > 0.0)) {
    out.u = ch.h_bt / std::sqrt(hn2);
    out.degenerate = true;
    return out;
  }

  // B = I + c h h^H has the rank-one closed-form inverse.
  const double c = ns.m_s * cfg.P_e;
  CMat Binv = CMat::Identity(N, N);
  Binv -= (c / (1.0 + c * hn2)) * (ch.h_bt * ch.h_bt.adjoint());

  const CVec v0 = ch.h_bt / std::sqrt(hn2);
  const PowerIterResult pi =
      power_iteration(Binv * A, v0, params.power_tol, params.power_iters);
  out.u = pi.v;
  return out;
}

// ---------------------------------------------------------------------------
// Projections
// ---------------------------------------------------------------------------

CMat project_power_ball(const CMat& W, double P) {
  const double n = W.norm();
  const double r = std::sqrt(P);
  if (n <= r || n == 0.0) return W;
  return W * (r / n);
}

CVec project_unit_disks(const CVec& phi) {
  CVec out = phi;
  for (Eigen::Index m = 0; m < out.size(); ++m) {
    const double a = std::abs(out(m));
    if (a > 1.0) out(m) /= a;
  }
  return out;
}

SensingHalfspace SensingHalfspace::build(const ChannelSet& ch,
                                         const CMat& anchor_W, const CVec& u,
                                         double gamma_echo,
                                         const SystemConfig& cfg,
                                         const surrogate::NoiseScale& ns) {
  SensingHalfspace hs;
  const CRowVec hs_row = u.adjoint() * ch.H_bt;  // 1 x N
  const CVec hs_col = hs_row.adjoint();
  const CRowVec d = hs_row * anchor_W;  // 1 x L
  hs.G.resize(ch.N, anchor_W.cols());
  double anchor_quad = 0.0;
  for (Eigen::Index i = 0; i < anchor_W.cols(); ++i) {
    hs.G.col(i) = 2.0 * d(i) * hs_col;
    anchor_quad += std::norm(d(i));
  }
  const cxd uh = (u.adjoint() * ch.h_bt)(0);
  const double rhs = gamma_echo / (ns.m_s * cfg.zeta2) *
                     (u.squaredNorm() + ns.m_s * cfg.P_e * std::norm(uh));
  hs.b = rhs + anchor_quad;
  return hs;
}

double SensingHalfspace::value(const CMat& W) const {
  return real_inner(G, W);
}

bool SensingHalfspace::satisfied(const CMat& W, double tol) const {
  return value(W) >= b - tol * std::max(1.0, std::abs(b));
}

namespace {

CMat project_halfspace(const CMat& W, const SensingHalfspace& hs) {
  const double v = hs.value(W);
  if (v >= hs.b) return W;
  const double gn2 = hs.G.squaredNorm();
  return W + ((hs.b - v) / gn2) * hs.G;
}

/// Dykstra alternation between the power ball and the sensing halfspace.
CMat project_ball_halfspace(const CMat& X0, double P, const SensingHalfspace& hs,
                            const SolverParams& params, bool& ok) {
  ok = true;
  const double gn = hs.G.norm();
  const double b_tol = 1e-9 * std::max(1.0, std::abs(hs.b));
  if (gn == 0.0) {
    if (hs.b > b_tol) {
      ok = false;
      return X0;
    }
    return project_power_ball(X0, P);
  }
  // The halfspace is reachable inside the ball iff sqrt(P)||G|| >= b.
  if (std::sqrt(P) * gn < hs.b - b_tol) {
    ok = false;
    return X0;
  }
  if (X0.squaredNorm() <= P * (1.0 + 1e-12) && hs.satisfied(X0)) return X0;

  CMat x = X0;
  CMat p = CMat::Zero(X0.rows(), X0.cols());
  CMat q = CMat::Zero(X0.rows(), X0.cols());
  for (int it = 0; it < params.dykstra_iters; ++it) {
    const CMat y = project_power_ball(x + p, P);
    p = x + p - y;
    const CMat xn = project_halfspace(y + q, hs);
    q = y + q - xn;
    const double change = (xn - x).norm();
    x = xn;
    if (change <= params.dykstra_tol * std::max(1.0, x.norm())) break;
  }
  // The intersection is nonempty (checked above); if the Dykstra budget ran
  // out short of feasibility, polish with plain alternating projections,
  // which converge to some feasible point.
  auto feasible = [&](const CMat& W) {
    return W.squaredNorm() <= P * (1.0 + 1e-6) &&
           hs.value(W) >= hs.b - 1e-6 * std::max(1.0, std::abs(hs.b));
  };
  for (int it = 0; it < params.dykstra_iters && !feasible(x); ++it) {
    x = project_halfspace(project_power_ball(x, P), hs);
  }
  if (!feasible(x)) ok = false;
  return x;
}

}  // namespace

HalfspaceProjection project_sensing_halfspace(const CMat& W, const CMat& anchor_W,
                                              const CVec& u, const ChannelSet& ch,
                                              double gamma_echo,
                                              const SystemConfig& cfg,
                                              const surrogate::NoiseScale& ns) {
  const SensingHalfspace hs =
      SensingHalfspace::build(ch, anchor_W, u, gamma_echo, cfg, ns);
  HalfspaceProjection out;
  if (hs.value(W) >= hs.b) {
    out.W = W;
    return out;
  }
  if (!(hs.G.norm() > 0.0)) {
    out.W = W;
    out.feasible = false;
    return out;
  }
  out.W = project_halfspace(W, hs);
  return out;
}

// ---------------------------------------------------------------------------
// Transmit beamformer surrogate
// ---------------------------------------------------------------------------

RVec jamming_terms(const ChannelSet& ch, const SystemConfig& cfg,
                   const surrogate::NoiseScale& ns) {
  RVec jam(ch.K);
  for (int k = 0; k < ch.K; ++k) {
    jam(k) = ns.m_k * cfg.P_e * std::norm(ch.h_ae[k]);
  }
  return jam;
}

RVec ae_rates_bits(const ChannelSet& ch, const CMat& W, const SystemConfig& cfg) {
  const CRowVec prods = ch.h_bt.adjoint() * W;
  double total = 0.0;
  RVec sq(prods.size());
  for (Eigen::Index i = 0; i < prods.size(); ++i) {
    sq(i) = std::norm(prods(i));
    total += sq(i);
  }
  RVec rates(ch.K);
  for (int k = 0; k < ch.K; ++k) {
    rates(k) = std::log1p(sq(k) / (total - sq(k) + cfg.sigma_ae2)) / kLn2;
  }
  return rates;
}

namespace {

/// Shared precomputation for the transmit subproblem objective/gradient.
struct WContext {
  int K = 0, L = 0;
  std::vector<CRowVec> g_rows;
  std::vector<CVec> g_cols;
  CRowVec bt_row, pe_row;
  CVec bt_col, pe_col;
  CMat cA_g;        // K x L products of rows with the anchor columns
  CRowVec cA_bt, cA_pe;
  RVec jam;
  const surrogate::AuxiliaryVars* aux = nullptr;
  double m_k = 0.0, m_a = 0.0, m_p = 0.0;

  WContext(const ChannelSet& ch, const BeamformingState& s,
           const surrogate::AuxiliaryVars& aux_in, const CMat& anchor_W,
           const SystemConfig& cfg, const surrogate::NoiseScale& ns) {
    K = ch.K;
    L = static_cast<int>(anchor_W.cols());
    g_rows.reserve(K);
    g_cols.reserve(K);
    cA_g.resize(K, L);
    for (int k = 0; k < K; ++k) {
      g_rows.push_back(metrics::composite_user_channel(ch, s.phi, k));
      g_cols.push_back(g_rows.back().adjoint());
      cA_g.row(k) = g_rows[k] * anchor_W;
    }
    bt_row = ch.h_bt.adjoint();
    pe_row = metrics::composite_pe_channel(ch, s.phi);
    bt_col = bt_row.adjoint();
    pe_col = pe_row.adjoint();
    cA_bt = bt_row * anchor_W;
    cA_pe = pe_row * anchor_W;
    jam = jamming_terms(ch, cfg, ns);
    aux = &aux_in;
    m_k = ns.m_k;
    m_a = ns.m_a;
    m_p = ns.m_p;
  }

  double value_and_grad(const CMat& W, CMat* G) const {
    if (G) G->setZero(W.rows(), W.cols());
    CMat c_g(K, L);
    for (int k = 0; k < K; ++k) c_g.row(k) = g_rows[k] * W;
    const CRowVec c_bt = bt_row * W;
    const CRowVec c_pe = pe_row * W;

    double full_bt = 0.0, full_pe = 0.0;
    for (int i = 0; i < L; ++i) {
      full_bt += std::norm(c_bt(i));
      full_pe += std::norm(c_pe(i));
    }

    double F = 0.0;
    for (int k = 0; k < K; ++k) {
      double sum_eta = 0.0, quad_ex = 0.0;
      for (int i = 0; i < L; ++i) {
        sum_eta += surrogate::quadratic_minorizer(c_g(k, i), cA_g(k, i));
        if (i != k) quad_ex += std::norm(c_g(k, i));
      }
      const double arg1 = m_k * sum_eta + jam(k) + 1.0;
      if (!(arg1 > 0.0)) return kNegInf;
      const double quad = m_k * quad_ex + jam(k) + 1.0;
      const double rk = aux->r(k);
      const double ph = std::log(arg1) - rk * quad + std::log(rk) + 1.0;

      double eta_bt_ex = 0.0, eta_pe_ex = 0.0;
      for (int i = 0; i < L; ++i) {
        if (i == k) continue;
        eta_bt_ex += surrogate::quadratic_minorizer(c_bt(i), cA_bt(i));
        eta_pe_ex += surrogate::quadratic_minorizer(c_pe(i), cA_pe(i));
      }
      const double argA = m_a * eta_bt_ex + 1.0;
      const double argP = m_p * eta_pe_ex + 1.0;
      if (!(argA > 0.0) || !(argP > 0.0)) return kNegInf;
      const double ra = aux->r_a(k), rp = aux->r_p(k);
      const double phA =
          ra * (m_a * full_bt + 1.0) - std::log(ra) - 1.0 - std::log(argA);
      const double phP =
          rp * (m_p * full_pe + 1.0) - std::log(rp) - 1.0 - std::log(argP);

      F += ph - std::max(phA, phP);

      if (G) {
        const double t1 = m_k / arg1;
        for (int i = 0; i < L; ++i) {
          G->col(i) += (2.0 * t1 * cA_g(k, i)) * g_cols[k];
          if (i != k) G->col(i) -= (2.0 * rk * m_k * c_g(k, i)) * g_cols[k];
        }
        if (phA >= phP) {  // AE branch wins ties
          for (int i = 0; i < L; ++i) {
            G->col(i) -= (2.0 * ra * m_a * c_bt(i)) * bt_col;
            if (i != k) G->col(i) += (2.0 * m_a / argA * cA_bt(i)) * bt_col;
          }
        } else {
          for (int i = 0; i < L; ++i) {
            G->col(i) -= (2.0 * rp * m_p * c_pe(i)) * pe_col;
            if (i != k) G->col(i) += (2.0 * m_p / argP * cA_pe(i)) * pe_col;
          }
        }
      }
    }
    if (G) *G /= kLn2;
    return F / kLn2;
  }
};

}  // namespace

double w_surrogate_value(const ChannelSet& ch, const BeamformingState& s,
                         const surrogate::AuxiliaryVars& aux, const CMat& anchor_W,
                         const CMat& W, const SystemConfig& cfg,
                         const surrogate::NoiseScale& ns) {
  return WContext(ch, s, aux, anchor_W, cfg, ns).value_and_grad(W, nullptr);
}

CMat surrogate_gradient_w(const ChannelSet& ch, const BeamformingState& s,
                          const surrogate::AuxiliaryVars& aux, const CMat& anchor_W,
                          const CMat& W, const SystemConfig& cfg,
                          const surrogate::NoiseScale& ns) {
  CMat G;
  WContext(ch, s, aux, anchor_W, cfg, ns).value_and_grad(W, &G);
  return G;
}

WSolution solve_w_subproblem(const ChannelSet& ch, const BeamformingState& s,
                             const surrogate::AuxiliaryVars& aux,
                             const CMat& anchor_W, const SystemConfig& cfg,
                             const surrogate::NoiseScale& ns,
                             const SolverParams& params) {
  WSolution sol;
  const WContext ctx(ch, s, aux, anchor_W, cfg, ns);
  const SensingHalfspace hs =
      SensingHalfspace::build(ch, anchor_W, s.u, cfg.gamma_echo, cfg, ns);

  bool ok = true;
  CMat x = project_ball_halfspace(anchor_W, cfg.P, hs, params, ok);
  if (!ok) {
    sol.W = anchor_W;
    sol.report.reason = Termination::infeasible;
    sol.report.objective.push_back(ctx.value_and_grad(anchor_W, nullptr));
    return sol;
  }

  auto value = [&](const CMat& W) { return ctx.value_and_grad(W, nullptr); };
  auto grad = [&](const CMat& W) {
    CMat G;
    ctx.value_and_grad(W, &G);
    return G;
  };
  auto project = [&](const CMat& W, bool& feas) {
    return project_ball_halfspace(W, cfg.P, hs, params, feas);
  };
  sol.report = projected_ascent(x, value, grad, project, params);
  sol.W = std::move(x);
  return sol;
}

// ---------------------------------------------------------------------------
// RIS reflection surrogate
// ---------------------------------------------------------------------------

namespace {

struct PhiContext {
  const surrogate::RisDecomposition* d = nullptr;
  const RVec* c_ae_bits = nullptr;
  const RVec* jam = nullptr;
  const surrogate::AuxiliaryVars* aux = nullptr;
  CVec anchor;
  double rho = 0.0;
  double m_k = 0.0, m_p = 0.0;
  CMat z_anchor_user;  // K x L : anchor^T s[k][i]
  CVec z_anchor_pe;    // L

  PhiContext(const surrogate::RisDecomposition& din, const RVec& c_ae,
             const RVec& jam_in, const surrogate::AuxiliaryVars& aux_in,
             const CVec& anchor_phi, double rho_in,
             const surrogate::NoiseScale& ns)
      : d(&din),
        c_ae_bits(&c_ae),
        jam(&jam_in),
        aux(&aux_in),
        anchor(anchor_phi),
        rho(rho_in),
        m_k(ns.m_k),
        m_p(ns.m_p) {
    z_anchor_user.setZero(d->K, d->L);
    z_anchor_pe.setZero(d->L);
    if (d->M > 0) {
      for (int k = 0; k < d->K; ++k)
        for (int i = 0; i < d->L; ++i)
          z_anchor_user(k, i) = (d->s[k][i].transpose() * anchor)(0);
      for (int i = 0; i < d->L; ++i)
        z_anchor_pe(i) = (d->a[i].transpose() * anchor)(0);
    }
  }

  double value_and_grad(const CVec& phi, CVec* G) const {
    const int K = d->K, L = d->L, M = d->M;
    if (G) G->setZero(M);

    CMat z_user = CMat::Zero(K, L);
    CVec z_pe = CVec::Zero(L);
    if (M > 0) {
      for (int k = 0; k < K; ++k)
        for (int i = 0; i < L; ++i)
          z_user(k, i) = (d->s[k][i].transpose() * phi)(0);
      for (int i = 0; i < L; ++i) z_pe(i) = (d->a[i].transpose() * phi)(0);
    }

    double full_pe = 0.0;
    for (int i = 0; i < L; ++i) full_pe += std::norm(z_pe(i) + d->b(i));

    double F = 0.0;
    for (int k = 0; k < K; ++k) {
      double sum_eta = 0.0, quad_ex = 0.0;
      for (int i = 0; i < L; ++i) {
        const cxd y = z_user(k, i) + d->t(k, i);
        sum_eta += surrogate::quadratic_minorizer(z_user(k, i), z_anchor_user(k, i)) +
                   2.0 * (d->t(k, i) * std::conj(z_user(k, i))).real() +
                   std::norm(d->t(k, i));
        if (i != k) quad_ex += std::norm(y);
      }
      const double arg1 = m_k * sum_eta + (*jam)(k) + 1.0;
      if (!(arg1 > 0.0)) return kNegInf;
      const double rk = aux->r(k);
      const double ph = std::log(arg1) - rk * (m_k * quad_ex + (*jam)(k) + 1.0) +
                        std::log(rk) + 1.0;

      double eta_pe_ex = 0.0;
      for (int i = 0; i < L; ++i) {
        if (i == k) continue;
        eta_pe_ex += surrogate::quadratic_minorizer(z_pe(i), z_anchor_pe(i)) +
                     2.0 * (d->b(i) * std::conj(z_pe(i))).real() +
                     std::norm(d->b(i));
      }
      const double argP = m_p * eta_pe_ex + 1.0;
      if (!(argP > 0.0)) return kNegInf;
      const double rp = aux->r_p(k);
      const double phP =
          rp * (m_p * full_pe + 1.0) - std::log(rp) - 1.0 - std::log(argP);
      const double phA_bits = (*c_ae_bits)(k);  // constant in phi

      F += ph - std::max(phA_bits * kLn2, phP);

      if (G && M > 0) {
        const double t1 = m_k / arg1;
        for (int i = 0; i < L; ++i) {
          const cxd c_lin = z_anchor_user(k, i) + d->t(k, i);
          *G += (2.0 * t1 * c_lin) * d->s[k][i].conjugate();
          if (i != k) {
            const cxd y = z_user(k, i) + d->t(k, i);
            *G -= (2.0 * rk * m_k * y) * d->s[k][i].conjugate();
          }
        }
        if (phP > phA_bits * kLn2) {  // PE branch; AE branch is constant
          for (int i = 0; i < L; ++i) {
            const cxd y = z_pe(i) + d->b(i);
            *G -= (2.0 * rp * m_p * y) * d->a[i].conjugate();
            if (i != k) {
              const cxd c_lin = z_anchor_pe(i) + d->b(i);
              *G += (2.0 * m_p / argP * c_lin) * d->a[i].conjugate();
            }
          }
        }
      }
    }
    F /= kLn2;
    if (G) {
      *G /= kLn2;
      *G += 2.0 * rho * anchor;
    }
    if (M > 0) {
      F += rho * (2.0 * (phi.adjoint() * anchor)(0).real() - anchor.squaredNorm());
    }
    return F;
  }
};

}  // namespace

double phi_surrogate_value(const surrogate::RisDecomposition& d,
                           const RVec& c_ae_bits, const RVec& jam,
                           const surrogate::AuxiliaryVars& aux,
                           const CVec& anchor_phi, const CVec& phi, double rho,
                           const surrogate::NoiseScale& ns) {
  return PhiContext(d, c_ae_bits, jam, aux, anchor_phi, rho, ns)
      .value_and_grad(phi, nullptr);
}

CVec surrogate_gradient_phi(const surrogate::RisDecomposition& d,
                            const RVec& c_ae_bits, const RVec& jam,
                            const surrogate::AuxiliaryVars& aux,
                            const CVec& anchor_phi, const CVec& phi, double rho,
                            const surrogate::NoiseScale& ns) {
  CVec G;
  PhiContext(d, c_ae_bits, jam, aux, anchor_phi, rho, ns).value_and_grad(phi, &G);
  return G;
}

PhiSolution solve_phi_subproblem(const ChannelSet& ch, const BeamformingState& s,
                                 const surrogate::AuxiliaryVars& aux,
                                 const CVec& anchor_phi, double rho,
                                 const SystemConfig& cfg,
                                 const surrogate::NoiseScale& ns,
                                 const SolverParams& params) {
  PhiSolution sol;
  const surrogate::RisDecomposition d = surrogate::ris_decompose(ch, s.W);
  const RVec c_ae = ae_rates_bits(ch, s.W, cfg);
  const RVec jam = jamming_terms(ch, cfg, ns);
  const PhiContext ctx(d, c_ae, jam, aux, anchor_phi, rho, ns);

  if (ch.M == 0) {
    sol.phi.resize(0);
    sol.report.objective.push_back(ctx.value_and_grad(sol.phi, nullptr));
    sol.report.reason = Termination::converged;
    return sol;
  }

  CVec x = project_unit_disks(anchor_phi);
  auto value = [&](const CVec& phi) { return ctx.value_and_grad(phi, nullptr); };
  auto grad = [&](const CVec& phi) {
    CVec G;
    ctx.value_and_grad(phi, &G);
    return G;
  };
  auto project = [&](const CVec& phi, bool& feas) {
    feas = true;
    return project_unit_disks(phi);
  };
  sol.report = projected_ascent(x, value, grad, project, params);
  sol.phi = std::move(x);
  return sol;
}

}  // namespace risisac::solvers
