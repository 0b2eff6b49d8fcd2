// Acceptance suite: one self-contained check per criterion, each printing a
// single PASS/FAIL line. Run all (default) or one with --criterion N.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "risisac/channel.hpp"
#include "risisac/harness.hpp"
#include "risisac/jbrd.hpp"
#include "risisac/metrics.hpp"
#include "risisac/oracle.hpp"
#include "risisac/solvers.hpp"
#include "risisac/surrogate.hpp"
#include "test_support.hpp"

using namespace risisac;
using surrogate::AuxiliaryVars;
using surrogate::NoiseScale;
using test_support::micro_config;
using test_support::random_channels;
using test_support::random_phi;
using test_support::random_state;
using test_support::random_unit;
using test_support::random_w;
using test_support::reduced_config;
using test_support::synthetic_config;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

template <typename X>
double real_inner(const X& a, const X& b) {
  return a.conjugate().cwiseProduct(b).sum().real();
}

jbrd::JbrdConfig acceptance_jbrd() {
  jbrd::JbrdConfig j;
  j.max_outer = 50;
  j.max_inner_w = 10;
  j.max_inner_phi = 10;
  j.solver.max_inner_steps = 50;
  return j;
}

harness::ExperimentSpec base_experiment() {
  harness::ExperimentSpec spec;
  spec.base = reduced_config();
  spec.jbrd = acceptance_jbrd();
  spec.trials = 20;
  spec.seed_base = 1;
  return spec;
}

/// Scheme-comparison scale: the reflect path must carry enough power for the
/// orderings to resolve above per-seed optimizer noise, so these sweeps run
/// with more elements than the convergence runs (still well below full scale).
harness::ExperimentSpec ordering_experiment() {
  harness::ExperimentSpec spec = base_experiment();
  spec.base.M = 48;
  return spec;
}

// --------------------------------------------------------------------------
// 1. Tightness of the fractional transform at the closed-form ancillaries.
// --------------------------------------------------------------------------
Outcome criterion1() {
  Outcome out;
  double worst = 0.0;
  int count = 0;
  Rng dims(2024);
  for (int inst = 0; inst < 200; ++inst) {
    const int K = 1 + static_cast<int>(dims.next_u64() % 3);
    const int N = 1 + static_cast<int>(dims.next_u64() % 4);
    const int M = static_cast<int>(dims.next_u64() % 17);
    Rng rng(1000 + inst);
    ChannelSet ch;
    SystemConfig cfg;
    if (inst % 2 == 0) {
      cfg = synthetic_config(K, N, M);
      ch = random_channels(K, N, M, rng);
    } else {
      cfg = reduced_config(1000 + inst);
      cfg.K = K;
      cfg.N = N;
      cfg.M = M;
      ch = channel::generate_scenario(cfg);
    }
    const BeamformingState s = random_state(ch, cfg.P, rng);
    const NoiseScale ns = NoiseScale::from_config(cfg);
    for (int k = 0; k < K; ++k) {
      const double rk = surrogate::opt_r_user(ch, s, cfg, ns, k);
      const double ra = surrogate::opt_r_ae(ch, s, cfg, ns, k);
      const double rp = surrogate::opt_r_pe(ch, s, cfg, ns, k);
      const double e1 = std::abs(surrogate::phi_user(ch, s, cfg, ns, rk, k) / kLn2 -
                                 metrics::rate_user(ch, s, cfg, k));
      const double e2 = std::abs(surrogate::phi_ae(ch, s, cfg, ns, ra, k) / kLn2 -
                                 metrics::rate_ae(ch, s, cfg, k));
      const double e3 = std::abs(surrogate::phi_pe(ch, s, cfg, ns, rp, k) / kLn2 -
                                 metrics::rate_pe(ch, s, cfg, k));
      worst = std::max({worst, e1, e2, e3});
      ++count;
    }
  }
  out.pass = worst <= 1e-9;
  std::ostringstream ss;
  ss << count << " user terms over 200 instances, max |error| = " << worst;
  out.detail = ss.str();
  return out;
}

// --------------------------------------------------------------------------
// 2. Scalar identity max_r(-rx + ln r + 1) attained at r* = 1/x.
// --------------------------------------------------------------------------
Outcome criterion2() {
  Outcome out;
  double worst_grid = 0.0, worst_closed = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = std::pow(10.0, -3.0 + 6.0 * i / 99.0);
    const double target = -std::log(x);
    double best = -1e300;
    const int points = 10000;
    for (int j = 0; j < points; ++j) {
      const double r = std::pow(10.0, -6.0 + 12.0 * j / (points - 1.0));
      best = std::max(best, -r * x + std::log(r) + 1.0);
    }
    worst_grid = std::max(worst_grid, std::abs(best - target));
    const double closed = -(1.0 / x) * x + std::log(1.0 / x) + 1.0;
    worst_closed = std::max(worst_closed, std::abs(closed - target));
    if (best > target + 1e-12) {
      out.pass = false;
      out.detail = "grid exceeded the analytic maximum";
      return out;
    }
  }
  // Log-spaced grid: |f(r*) - f(nearest grid r)| <= (d/2)^2/2, d = ln-spacing.
  const double grid_tol = 2e-6;
  out.pass = worst_grid <= grid_tol && worst_closed <= 1e-12;
  std::ostringstream ss;
  ss << "grid gap " << worst_grid << " (tol " << grid_tol << "), closed form "
     << worst_closed;
  out.detail = ss.str();
  return out;
}

// --------------------------------------------------------------------------
// 3. Every first-order surrogate minorizes its quadratic, tight at anchor.
// --------------------------------------------------------------------------
Outcome criterion3() {
  Outcome out;
  Rng rng(33);
  const int pairs = 1000;
  double worst_bound = -1e300, worst_anchor = 0.0;
  const SystemConfig cfg = synthetic_config(2, 3, 5);
  const NoiseScale ns = NoiseScale::from_config(cfg);
  (void)ns;
  for (int p = 0; p < pairs; ++p) {
    const ChannelSet ch = random_channels(2, 3, 5, rng);
    const BeamformingState s = random_state(ch, cfg.P, rng);
    const CVec w = random_unit(3, rng) * 2.0 * rng.next_double();
    const CVec anchor = random_unit(3, rng) * 2.0 * rng.next_double();

    const CRowVec g = metrics::composite_user_channel(ch, s.phi, 0);
    const CRowVec pe = metrics::composite_pe_channel(ch, s.phi);
    const CRowVec hs = s.u.adjoint() * ch.H_bt;

    struct Case {
      double eta, truth, eta_at_anchor, truth_at_anchor;
    };
    const Case cases[] = {
        {surrogate::taylor_eta_user(ch, s.phi, w, anchor, 0),
         std::norm((g * w)(0)),
         surrogate::taylor_eta_user(ch, s.phi, anchor, anchor, 0),
         std::norm((g * anchor)(0))},
        {surrogate::taylor_eta_ae(ch, w, anchor),
         std::norm((ch.h_bt.adjoint() * w)(0)),
         surrogate::taylor_eta_ae(ch, anchor, anchor),
         std::norm((ch.h_bt.adjoint() * anchor)(0))},
        {surrogate::taylor_eta_pe(ch, s.phi, w, anchor),
         std::norm((pe * w)(0)),
         surrogate::taylor_eta_pe(ch, s.phi, anchor, anchor),
         std::norm((pe * anchor)(0))},
        {surrogate::taylor_eta_echo(ch, s.u, w, anchor),
         std::norm((hs * w)(0)),
         surrogate::taylor_eta_echo(ch, s.u, anchor, anchor),
         std::norm((hs * anchor)(0))},
    };
    for (const auto& c : cases) {
      worst_bound = std::max(worst_bound, c.eta - c.truth);
      worst_anchor = std::max(worst_anchor,
                              std::abs(c.eta_at_anchor - c.truth_at_anchor));
    }

    // Reflect-space minorizers and the norm minorizer.
    const auto d = surrogate::ris_decompose(ch, s.W);
    const CVec phi = random_phi(5, rng, false);
    const CVec aphi = random_phi(5, rng, false);
    for (int i = 0; i < d.L; i += 3) {
      const double tu = std::norm((d.s[0][i].transpose() * phi)(0) + d.t(0, i));
      worst_bound = std::max(
          worst_bound, surrogate::taylor_eta_phi_user(d, phi, aphi, 0, i) - tu);
      worst_anchor = std::max(
          worst_anchor,
          std::abs(surrogate::taylor_eta_phi_user(d, phi, phi, 0, i) - tu));
      const double tp = std::norm((d.a[i].transpose() * phi)(0) + d.b(i));
      worst_bound = std::max(worst_bound,
                             surrogate::taylor_eta_phi_pe(d, phi, aphi, i) - tp);
    }
    worst_bound = std::max(worst_bound, surrogate::norm_sq_minorizer(phi, aphi) -
                                            phi.squaredNorm());
    worst_anchor = std::max(
        worst_anchor,
        std::abs(surrogate::norm_sq_minorizer(phi, phi) - phi.squaredNorm()));
  }
  out.pass = worst_bound <= 1e-9 && worst_anchor <= 1e-9;
  std::ostringstream ss;
  ss << pairs << " pairs per surrogate, max bound violation " << worst_bound
     << ", max anchor gap " << worst_anchor;
  out.detail = ss.str();
  return out;
}

// --------------------------------------------------------------------------
// 4. Analytic gradients vs central finite differences.
// --------------------------------------------------------------------------
Outcome criterion4() {
  Outcome out;
  Rng rng(44);
  int checked_w = 0, checked_phi = 0;
  double worst = 0.0;
  const double h = 1e-6, rel_tol = 1e-4;

  auto relerr = [](double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-10});
  };

  while (checked_w < 100) {
    const SystemConfig cfg = synthetic_config(2, 3, 3);
    const NoiseScale ns = NoiseScale::from_config(cfg);
    const ChannelSet ch = random_channels(2, 3, 3, rng);
    BeamformingState s = random_state(ch, cfg.P, rng);
    const AuxiliaryVars aux = surrogate::compute_aux(ch, s, cfg, ns);
    const CMat anchor = s.W;
    const CMat W = anchor + 0.1 * random_w(3, 5, 1.0, rng);
    const CMat G = solvers::surrogate_gradient_w(ch, s, aux, anchor, W, cfg, ns);
    auto value = [&](const CMat& X) {
      return solvers::w_surrogate_value(ch, s, aux, anchor, X, cfg, ns);
    };
    if (!std::isfinite(value(W))) continue;
    const CMat D = random_w(3, 5, 1.0, rng);
    const double fd = (value(W + h * D) - value(W - h * D)) / (2.0 * h);
    const double an = real_inner(G, D);
    if (std::abs(fd) < 1e-7) continue;  // flat or kink-straddling direction
    worst = std::max(worst, relerr(an, fd));
    if (relerr(an, fd) > rel_tol) {
      out.pass = false;
    }
    ++checked_w;
  }

  while (checked_phi < 100) {
    const SystemConfig cfg = synthetic_config(2, 3, 4);
    const NoiseScale ns = NoiseScale::from_config(cfg);
    const ChannelSet ch = random_channels(2, 3, 4, rng);
    BeamformingState s = random_state(ch, cfg.P, rng);
    const AuxiliaryVars aux = surrogate::compute_aux(ch, s, cfg, ns);
    const auto d = surrogate::ris_decompose(ch, s.W);
    const RVec c_ae = solvers::ae_rates_bits(ch, s.W, cfg);
    const RVec jam = solvers::jamming_terms(ch, cfg, ns);
    const CVec anchor = s.phi;
    const CVec phi = anchor + 0.2 * random_phi(4, rng, false);
    const double rho = 0.2;
    const CVec G = solvers::surrogate_gradient_phi(d, c_ae, jam, aux, anchor,
                                                   phi, rho, ns);
    auto value = [&](const CVec& x) {
      return solvers::phi_surrogate_value(d, c_ae, jam, aux, anchor, x, rho, ns);
    };
    if (!std::isfinite(value(phi))) continue;
    const CVec D = random_phi(4, rng, false);
    const double fd = (value(phi + h * D) - value(phi - h * D)) / (2.0 * h);
    const double an = real_inner(G, D);
    if (std::abs(fd) < 1e-7) continue;
    worst = std::max(worst, relerr(an, fd));
    if (relerr(an, fd) > rel_tol) {
      out.pass = false;
    }
    ++checked_phi;
  }
  std::ostringstream ss;
  ss << "100 transmit + 100 reflect points, worst relative error " << worst;
  out.detail = ss.str();
  return out;
}

// --------------------------------------------------------------------------
// 5. Receive beamformer vs dense generalized-eigen oracle & random probes.
// --------------------------------------------------------------------------
Outcome criterion5() {
  Outcome out;
  Rng rng(55);
  double worst_rel = 0.0;
  for (int inst = 0; inst < 50; ++inst) {
    const int N = 2 + static_cast<int>(rng.next_u64() % 5);  // up to 6
    const int K = 1 + static_cast<int>(rng.next_u64() % 2);
    const SystemConfig cfg = synthetic_config(K, N, 2);
    const NoiseScale ns = NoiseScale::from_config(cfg);
    const ChannelSet ch = random_channels(K, N, 2, rng);
    const CMat W = random_w(N, K + N, cfg.P, rng);
    const auto rb = solvers::solve_receive_beamformer(ch, W, cfg, ns, {});

    BeamformingState s;
    s.W = W;
    s.phi = random_phi(2, rng);
    s.u = rb.u;
    const double q_opt = metrics::scnr_echo(ch, s, cfg);

    // Dense oracle: eigenvalues of B^{-1} A.
    const CMat HW = ch.H_bt * W;
    const CMat A = ns.m_s * cfg.zeta2 * (HW * HW.adjoint());
    CMat B = CMat::Identity(N, N) +
             ns.m_s * cfg.P_e * (ch.h_bt * ch.h_bt.adjoint());
    const CMat C = B.inverse() * A;
    Eigen::ComplexEigenSolver<CMat> eig(C);
    double lam_max = 0.0;
    for (int i = 0; i < N; ++i)
      lam_max = std::max(lam_max, eig.eigenvalues()(i).real());
    // scnr_echo(u) equals u^H A u / u^H B u; sigma_s^2 folds into m_s.
    const double rel = std::abs(q_opt - lam_max) / std::max(lam_max, 1e-300);
    worst_rel = std::max(worst_rel, rel);
    if (rel > 1e-6) out.pass = false;

    for (int probe = 0; probe < 10000; ++probe) {
      BeamformingState sp = s;
      sp.u = random_unit(N, rng);
      if (metrics::scnr_echo(ch, sp, cfg) > q_opt * (1.0 + 1e-9)) {
        out.pass = false;
        out.detail = "random probe beat the solver";
        return out;
      }
    }
  }
  std::ostringstream ss;
  ss << "50 instances, worst relative gap to dense eigenvalue " << worst_rel;
  out.detail = ss.str();
  return out;
}

// --------------------------------------------------------------------------
// 6. Monotone ascent and convergence of the full loop at desk scale.
// --------------------------------------------------------------------------
std::vector<jbrd::RunResult> run_criterion6(std::vector<double>* losses) {
  std::vector<jbrd::RunResult> runs;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const SystemConfig cfg = reduced_config(seed);
    const ChannelSet ch = channel::generate_scenario(cfg);
    runs.push_back(jbrd::run_jbrd(ch, cfg, acceptance_jbrd()));
    if (losses) {
      const auto& r = runs.back();
      const double before = r.sr_before_projection;
      const double loss = before > 1e-12
                              ? (before - r.report.secrecy_rate) / before
                              : 0.0;
      losses->push_back(loss);
    }
  }
  return runs;
}

Outcome criterion6() {
  Outcome out;
  const auto runs = run_criterion6(nullptr);
  int converged = 0;
  double worst_drop = 0.0;
  int worst_outer = 0;
  for (const auto& r : runs) {
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
      const double slack =
          1e-6 * std::max(1.0, std::abs(r.trace.unclamped_sum[i - 1]));
      worst_drop = std::max(
          worst_drop, r.trace.unclamped_sum[i - 1] - r.trace.unclamped_sum[i]);
      if (r.trace.unclamped_sum[i] < r.trace.unclamped_sum[i - 1] - slack) {
        out.pass = false;
      }
    }
    if (r.status == jbrd::RunStatus::converged && r.outer_iterations <= 50) {
      ++converged;
    }
    worst_outer = std::max(worst_outer, r.outer_iterations);
  }
  if (converged < 20) out.pass = false;
  std::ostringstream ss;
  ss << converged << "/20 converged within 50 outers (max " << worst_outer
     << "), worst per-iteration drop " << worst_drop;
  out.detail = ss.str();
  return out;
}

// --------------------------------------------------------------------------
// 7. Scheme ordering over the power sweep.
// --------------------------------------------------------------------------
harness::ExperimentResult run_power_sweep_all_schemes() {
  auto spec = ordering_experiment();
  spec.sweep = harness::SweepVariable::bs_power;
  spec.sweep_values = {dbm_to_watts(45), dbm_to_watts(47), dbm_to_watts(49)};
  spec.schemes = {jbrd::Scheme::jbrd, jbrd::Scheme::ris_random_phase,
                  jbrd::Scheme::u_random, jbrd::Scheme::no_ris};
  return harness::run_experiment(spec);
}

Outcome criterion7() {
  Outcome out;
  const auto res = run_power_sweep_all_schemes();

  // means: rows ordered value -> scheme.
  std::ostringstream ss;
  for (std::size_t v = 0; v < 3; ++v) {
    const double jbrd_mean = res.rows[4 * v + 0].mean_sr;
    for (std::size_t s = 1; s < 4; ++s) {
      if (jbrd_mean < res.rows[4 * v + s].mean_sr) {
        out.pass = false;
        ss << "mean ordering violated at point " << v << " vs "
           << res.rows[4 * v + s].scheme << "; ";
      }
    }
  }

  // Paired per-seed wins, pooled across sweep points, per benchmark.
  const int trials = 20;
  auto sr_of = [&](std::size_t value_idx, std::size_t scheme_idx, int trial) {
    return res.trials[(value_idx * 4 + scheme_idx) * trials + trial].sr;
  };
  for (std::size_t s = 1; s < 4; ++s) {
    int wins = 0, total = 0;
    for (std::size_t v = 0; v < 3; ++v) {
      for (int t = 0; t < trials; ++t) {
        if (sr_of(v, 0, t) >= sr_of(v, s, t) - 1e-9) ++wins;
        ++total;
      }
    }
    const double frac = static_cast<double>(wins) / total;
    ss << res.rows[s].scheme << " wins " << wins << "/" << total << "; ";
    if (frac < 0.80) out.pass = false;
  }
  out.detail = ss.str();
  return out;
}

// --------------------------------------------------------------------------
// 8. Directional trends across the five sweeps.
// --------------------------------------------------------------------------
struct CellStats {
  double mean = 0.0, se = 0.0;
};

std::vector<CellStats> sweep_stats(const harness::ExperimentResult& res) {
  std::vector<CellStats> cells;
  for (const auto& row : res.rows) {
    CellStats c;
    c.mean = row.mean_sr;
    c.se = row.std_sr / std::sqrt(static_cast<double>(row.trial_count));
    cells.push_back(c);
  }
  return cells;
}

bool monotone(const std::vector<CellStats>& cells, int dir,
              std::string* why) {
  for (std::size_t i = 1; i < cells.size(); ++i) {
    const double delta = dir * (cells[i].mean - cells[i - 1].mean);
    const double se =
        std::sqrt(cells[i].se * cells[i].se + cells[i - 1].se * cells[i - 1].se);
    if (delta < -se) {
      std::ostringstream ss;
      ss << "step " << i - 1 << "->" << i << " moved " << -dir * delta
         << " against trend (1 se = " << se << ")";
      *why = ss.str();
      return false;
    }
  }
  return true;
}

Outcome criterion8() {
  Outcome out;
  std::ostringstream ss;
  std::string why;

  // (a) non-decreasing in P.
  {
    auto spec = ordering_experiment();
    spec.sweep = harness::SweepVariable::bs_power;
    spec.sweep_values = {dbm_to_watts(45), dbm_to_watts(47), dbm_to_watts(49)};
    const auto cells = sweep_stats(harness::run_experiment(spec));
    if (!monotone(cells, +1, &why)) {
      out.pass = false;
      ss << "(a) " << why << "; ";
    }
    ss << "(a) P: " << cells.front().mean << " -> " << cells.back().mean << "; ";
  }
  // (b) non-increasing in gamma_echo, at the top power point.
  {
    auto spec = ordering_experiment();
    spec.base.P = dbm_to_watts(49);
    spec.sweep = harness::SweepVariable::gamma_echo;
    spec.sweep_values = {db_to_linear(-30), db_to_linear(-26), db_to_linear(-22)};
    const auto cells = sweep_stats(harness::run_experiment(spec));
    if (!monotone(cells, -1, &why)) {
      out.pass = false;
      ss << "(b) " << why << "; ";
    }
    ss << "(b) gamma: " << cells.front().mean << " -> " << cells.back().mean
       << "; ";
  }
  // (c) non-increasing in P_e.
  {
    auto spec = ordering_experiment();
    spec.base.P = dbm_to_watts(49);
    spec.sweep = harness::SweepVariable::pe_power;
    spec.sweep_values = {dbm_to_watts(1), dbm_to_watts(7), dbm_to_watts(13)};
    const auto cells = sweep_stats(harness::run_experiment(spec));
    if (!monotone(cells, -1, &why)) {
      out.pass = false;
      ss << "(c) " << why << "; ";
    }
    ss << "(c) P_e: " << cells.front().mean << " -> " << cells.back().mean
       << "; ";
  }
  // (d) non-decreasing in M for the joint design; flat for random phases.
  {
    auto spec = ordering_experiment();
    spec.base.P = dbm_to_watts(49);
    spec.sweep = harness::SweepVariable::ris_elements;
    spec.sweep_values = {8, 16, 32, 48};
    spec.schemes = {jbrd::Scheme::jbrd, jbrd::Scheme::ris_random_phase};
    const auto res = harness::run_experiment(spec);
    std::vector<CellStats> jb, rr;
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
      CellStats c{res.rows[i].mean_sr,
                  res.rows[i].std_sr / std::sqrt(20.0)};
      if (res.rows[i].scheme == "jbrd") jb.push_back(c);
      else rr.push_back(c);
    }
    if (!monotone(jb, +1, &why)) {
      out.pass = false;
      ss << "(d-jbrd) " << why << "; ";
    }
    const double drift = std::abs(rr.back().mean - rr.front().mean);
    const double se2 =
        2.0 * std::sqrt(rr.back().se * rr.back().se + rr.front().se * rr.front().se);
    if (drift > se2) {
      out.pass = false;
      ss << "(d-random) drift " << drift << " > " << se2 << "; ";
    }
    ss << "(d) M jbrd: " << jb.front().mean << " -> " << jb.back().mean
       << ", random drift " << drift << " (2se " << se2 << "); ";
  }
  // (e) U-shape in the RIS x position: both ends beat mid-span. Users keep
  // the default drop center here so only the surface moves, and the trials
  // share seeds, so the comparison uses paired per-seed differences.
  {
    auto spec = base_experiment();
    spec.base.P = dbm_to_watts(49);
    spec.base.M = 64;
    spec.base.user_center = Vec2(30.0, 10.0);
    spec.sweep = harness::SweepVariable::ris_x_position;
    spec.sweep_values = {4.0, 28.0, 46.0};
    const auto res = harness::run_experiment(spec);
    const int T = spec.trials;
    auto sr = [&](int value_idx, int t) { return res.trials[value_idx * T + t].sr; };
    auto paired_above = [&](int a, int b, double* diff_out) {
      double mean = 0.0;
      for (int t = 0; t < T; ++t) mean += sr(a, t) - sr(b, t);
      mean /= T;
      double var = 0.0;
      for (int t = 0; t < T; ++t) {
        const double d = sr(a, t) - sr(b, t) - mean;
        var += d * d;
      }
      const double se = std::sqrt(var / (T - 1)) / std::sqrt(double(T));
      *diff_out = mean;
      return mean >= -se;
    };
    double left = 0.0, right = 0.0;
    const bool ok_left = paired_above(0, 1, &left);
    const bool ok_right = paired_above(2, 1, &right);
    if (!(ok_left && ok_right)) {
      out.pass = false;
      ss << "(e) no U-shape; ";
    }
    ss << "(e) x means " << res.rows[0].mean_sr << " / " << res.rows[1].mean_sr
       << " / " << res.rows[2].mean_sr << ", paired end-mid diffs " << left
       << " / " << right;
  }
  out.detail = ss.str();
  return out;
}

// --------------------------------------------------------------------------
// 9. Feasibility of reported solutions and cost of the final projection.
// --------------------------------------------------------------------------
Outcome criterion9() {
  Outcome out;
  std::vector<double> losses;
  const auto runs = run_criterion6(&losses);
  double worst_power = 0.0, worst_scnr = 0.0, worst_mod = 0.0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const SystemConfig cfg = reduced_config(i + 1);
    const auto& rep = runs[i].report;
    worst_power = std::max(worst_power, -rep.power_slack / cfg.P);
    worst_scnr = std::max(worst_scnr, 1.0 - rep.scnr / cfg.gamma_echo);
    worst_mod = std::max(worst_mod, rep.max_modulus_dev);
  }
  std::sort(losses.begin(), losses.end());
  const double median_loss = losses[losses.size() / 2];
  out.pass = worst_power <= 1e-6 && worst_scnr <= 1e-3 && worst_mod <= 1e-12 &&
             median_loss <= 0.01;
  std::ostringstream ss;
  ss << "power residual " << worst_power << ", scnr deficit " << worst_scnr
     << ", modulus dev " << worst_mod << ", median projection loss "
     << median_loss;
  out.detail = ss.str();
  return out;
}

// --------------------------------------------------------------------------
// 10. Optimality gap against the exhaustive micro oracle.
// --------------------------------------------------------------------------
Outcome criterion10() {
  Outcome out;
  std::ostringstream ss;
  double worst_gap = -1e300;
  jbrd::JbrdConfig jcfg = acceptance_jbrd();
  jcfg.restarts = 12;  // the tiny instances are multi-modal
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SystemConfig cfg = micro_config(seed);
    const ChannelSet ch = channel::generate_scenario(cfg);
    const auto run = jbrd::run_jbrd(ch, cfg, jcfg);
    const auto oracle_res = oracle::brute_force_micro(ch, cfg);
    if (!oracle_res.found_feasible) continue;
    const double gap =
        (oracle_res.best_sr - run.report.secrecy_rate) /
        std::max(oracle_res.best_sr, 1e-12);
    worst_gap = std::max(worst_gap, gap);
    if (gap > 0.05) {
      out.pass = false;
      ss << "seed " << seed << " gap " << gap * 100.0 << "%; ";
    }
  }
  ss << "worst optimality gap " << worst_gap * 100.0 << "%";
  out.detail = ss.str();
  return out;
}

// --------------------------------------------------------------------------
// 11. Byte-identical CSV on rerun.
// --------------------------------------------------------------------------
Outcome criterion11() {
  Outcome out;
  auto spec = base_experiment();
  spec.base.M = 8;
  spec.trials = 3;
  spec.sweep = harness::SweepVariable::bs_power;
  spec.sweep_values = {dbm_to_watts(45), dbm_to_watts(47)};
  spec.schemes = {jbrd::Scheme::jbrd, jbrd::Scheme::no_ris};
  const std::string a = harness::csv_string(harness::run_experiment(spec).rows);
  const std::string b = harness::csv_string(harness::run_experiment(spec).rows);
  out.pass = !a.empty() && a == b;
  out.detail = out.pass ? "rerun produced identical bytes" : "outputs differ";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc - 1; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);
  }
  using CriterionFn = std::function<Outcome()>;
  const std::vector<std::pair<int, CriterionFn>> criteria = {
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4},
      {5, criterion5}, {6, criterion6}, {7, criterion7}, {8, criterion8},
      {9, criterion9}, {10, criterion10}, {11, criterion11}};

  bool all_pass = true;
  for (const auto& [id, fn] : criteria) {
    if (only != 0 && id != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome o = fn();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    all_pass = all_pass && o.pass;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL")
              << " — " << o.detail << " [" << harness::format_double(secs)
              << " s]" << std::endl;
  }
  return all_pass ? 0 : 1;
}
