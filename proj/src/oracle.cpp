#include "risisac/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace risisac::oracle {

namespace {

struct Range {
  double lo, hi;
  int n;
  double at(int i) const {
    return n <= 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (n - 1);
  }
};

/// Orthonormal completion of a unit vector in C^2.
CVec perp2(const CVec& e) {
  CVec p(2);
  p(0) = -std::conj(e(1));
  p(1) = std::conj(e(0));
  return p;
}

struct PhiEval {
  // Row products of {g, h_bt^H, h_pe} with the four basis directions
  // {e1, e2 (user frame), h1, h2 (target frame)}.
  cxd g_e1, g_e2, g_h1, g_h2;
  cxd bt_e1, bt_e2, bt_h1, bt_h2;
  cxd pe_e1, pe_e2, pe_h1, pe_h2;
};

struct SearchGrid {
  Range a1, b1, ar, br, split, scale;
};

struct BestPoint {
  double sr = -1.0;
  double scnr = 0.0;
  double a1 = 0.0, b1 = 0.0, ar = 0.0, br = 0.0, split = 0.5, scale = 1.0;
  std::vector<double> phase;  // per RIS element
  bool feasible = false;
};

/// Search the beamformer grid for one fixed reflect vector.
void search_w_grid(const PhiEval& pv, const SystemConfig& cfg, double jam,
                   double scnr_denom, double hbt_norm2, const SearchGrid& grid,
                   const std::vector<double>& phases, BestPoint& best,
                   long long& evaluated) {
  const double P = cfg.P;
  for (int ia = 0; ia < grid.a1.n; ++ia) {
    const double a1 = grid.a1.at(ia);
    const double c1 = std::cos(a1), s1 = std::sin(a1);
    for (int ib = 0; ib < grid.b1.n; ++ib) {
      const cxd rot1 = std::polar(1.0, grid.b1.at(ib));
      // Unit-power communication column in the user frame.
      const cxd g_w1 = c1 * pv.g_e1 + s1 * rot1 * pv.g_e2;
      const cxd bt_w1 = c1 * pv.bt_e1 + s1 * rot1 * pv.bt_e2;
      const cxd pe_w1 = c1 * pv.pe_e1 + s1 * rot1 * pv.pe_e2;
      for (int ja = 0; ja < grid.ar.n; ++ja) {
        const double ar = grid.ar.at(ja);
        const double cr = std::cos(ar), sr_ = std::sin(ar);
        for (int jb = 0; jb < grid.br.n; ++jb) {
          const cxd rotr = std::polar(1.0, grid.br.at(jb));
          const cxd g_wr = cr * pv.g_h1 + sr_ * rotr * pv.g_h2;
          const cxd bt_wr = cr * pv.bt_h1 + sr_ * rotr * pv.bt_h2;
          const cxd pe_wr = cr * pv.pe_h1 + sr_ * rotr * pv.pe_h2;
          for (int it = 0; it < grid.split.n; ++it) {
            const double t = grid.split.at(it);
            for (int is = 0; is < grid.scale.n; ++is) {
              const double s = grid.scale.at(is);
              const double p1 = s * t * P;
              const double pr = s * (1.0 - t) * P;
              ++evaluated;

              const double sig_bt =
                  p1 * std::norm(bt_w1) + pr * std::norm(bt_wr);
              const double scnr = cfg.zeta2 * hbt_norm2 * sig_bt / scnr_denom;
              if (scnr < cfg.gamma_echo) continue;

              const double r_user = std::log2(
                  1.0 + p1 * std::norm(g_w1) /
                            (pr * std::norm(g_wr) + jam + cfg.sigma_k2));
              const double r_ae = std::log2(
                  1.0 + p1 * std::norm(bt_w1) /
                            (pr * std::norm(bt_wr) + cfg.sigma_ae2));
              const double r_pe = std::log2(
                  1.0 + p1 * std::norm(pe_w1) /
                            (pr * std::norm(pe_wr) + cfg.sigma_pe2));
              const double sr = std::max(0.0, r_user - std::max(r_ae, r_pe));
              if (!best.feasible || sr > best.sr) {
                best.feasible = true;
                best.sr = sr;
                best.scnr = scnr;
                best.a1 = a1;
                best.b1 = grid.b1.at(ib);
                best.ar = ar;
                best.br = grid.br.at(jb);
                best.split = t;
                best.scale = s;
                best.phase = phases;
              }
            }
          }
        }
      }
    }
  }
}

PhiEval build_phi_eval(const ChannelSet& ch, const std::vector<double>& phases) {
  const int M = ch.M;
  CRowVec g = ch.g_b[0].adjoint();
  CRowVec pe = ch.h_bp.adjoint();
  for (int m = 0; m < M; ++m) {
    const cxd v = std::polar(1.0, phases[m]);
    g += std::conj(ch.g_r[0](m)) * v * ch.H_br.row(m);
    pe += std::conj(ch.h_rp(m)) * v * ch.H_br.row(m);
  }
  const CRowVec bt = ch.h_bt.adjoint();

  const double gn = g.norm();
  CVec e1 = (gn > 0.0) ? CVec(g.adjoint() / gn) : CVec(CVec::Unit(2, 0));
  CVec e2 = perp2(e1);
  const double hn = bt.norm();
  CVec h1 = (hn > 0.0) ? CVec(bt.adjoint() / hn) : CVec(CVec::Unit(2, 0));
  CVec h2 = perp2(h1);

  PhiEval pv;
  pv.g_e1 = (g * e1)(0);
  pv.g_e2 = (g * e2)(0);
  pv.g_h1 = (g * h1)(0);
  pv.g_h2 = (g * h2)(0);
  pv.bt_e1 = (bt * e1)(0);
  pv.bt_e2 = (bt * e2)(0);
  pv.bt_h1 = (bt * h1)(0);
  pv.bt_h2 = (bt * h2)(0);
  pv.pe_e1 = (pe * e1)(0);
  pv.pe_e2 = (pe * e2)(0);
  pv.pe_h1 = (pe * h1)(0);
  pv.pe_h2 = (pe * h2)(0);
  return pv;
}

}  // namespace

BruteForceResult brute_force_micro(const ChannelSet& ch, const SystemConfig& cfg,
                                   const BruteForceParams& params) {
  if (ch.K != 1 || ch.N != 2 || ch.M > 2) {
    throw std::invalid_argument("brute_force_micro expects K=1, N=2, M<=2");
  }
  const double hbt_norm2 = ch.h_bt.squaredNorm();
  // The optimal receive direction for a rank-one return is along h_bt; with
  // u = h_bt/||h_bt|| the SCNR denominator collapses to a scalar.
  const double scnr_denom = cfg.sigma_s2 + cfg.P_e * hbt_norm2;
  const double jam = cfg.P_e * std::norm(ch.h_ae[0]);

  const SearchGrid coarse{{0.0, M_PI / 2.0, params.dir_points},
                          {0.0, 2.0 * M_PI * (1.0 - 1.0 / params.phase_points),
                           params.phase_points},
                          {0.0, M_PI / 2.0, params.dir_points},
                          {0.0, 2.0 * M_PI * (1.0 - 1.0 / params.phase_points),
                           params.phase_points},
                          {0.02, 1.0, params.split_points},
                          {1.0 / params.scale_points, 1.0, params.scale_points}};

  // All reflect-phase combinations, split across threads.
  const int Q = params.phases_per_element;
  long long combos = 1;
  for (int m = 0; m < ch.M; ++m) combos *= Q;

  unsigned nthreads = std::max(1u, std::thread::hardware_concurrency());
  nthreads = std::min<unsigned>(nthreads, 8);
  std::vector<BestPoint> bests(nthreads);
  std::vector<long long> counts(nthreads, 0);

  auto worker = [&](unsigned tid) {
    for (long long c = tid; c < combos; c += nthreads) {
      std::vector<double> phases(ch.M, 0.0);
      long long rem = c;
      for (int m = 0; m < ch.M; ++m) {
        phases[m] = 2.0 * M_PI * (rem % Q) / Q;
        rem /= Q;
      }
      const PhiEval pv = build_phi_eval(ch, phases);
      search_w_grid(pv, cfg, jam, scnr_denom, hbt_norm2, coarse, phases,
                    bests[tid], counts[tid]);
    }
  };
  {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < nthreads; ++i) pool.emplace_back(worker, i);
    for (auto& th : pool) th.join();
  }

  BestPoint best;
  long long evaluated = 0;
  for (unsigned i = 0; i < nthreads; ++i) {
    evaluated += counts[i];
    if (bests[i].feasible && (!best.feasible || bests[i].sr > best.sr)) {
      best = bests[i];
    }
  }

  // Local refinement around the incumbent: shrink every range, including the
  // per-element reflect phases.
  if (best.feasible) {
    double da1 = M_PI / (2.0 * (params.dir_points - 1));
    double db1 = 2.0 * M_PI / params.phase_points;
    double dphi = 2.0 * M_PI / Q;
    double dt = 1.0 / params.split_points;
    double ds = 0.5;
    for (int round = 0; round < params.refine_rounds; ++round) {
      const SearchGrid fine{{best.a1 - da1, best.a1 + da1, 5},
                            {best.b1 - db1, best.b1 + db1, 5},
                            {best.ar - da1, best.ar + da1, 5},
                            {best.br - db1, best.br + db1, 5},
                            {std::max(0.0, best.split - dt),
                             std::min(1.0, best.split + dt), 5},
                            {std::max(0.05, best.scale - ds),
                             std::min(1.0, best.scale + ds), 5}};
      const int PQ = 5;
      long long pcombos = 1;
      for (int m = 0; m < ch.M; ++m) pcombos *= PQ;
      for (long long c = 0; c < pcombos; ++c) {
        std::vector<double> phases(ch.M, 0.0);
        long long rem = c;
        for (int m = 0; m < ch.M; ++m) {
          const int q = static_cast<int>(rem % PQ);
          rem /= PQ;
          phases[m] = best.phase.empty()
                          ? 0.0
                          : best.phase[m] + dphi * (q - PQ / 2) / (PQ / 2);
        }
        const PhiEval pv = build_phi_eval(ch, phases);
        search_w_grid(pv, cfg, jam, scnr_denom, hbt_norm2, fine, phases, best,
                      evaluated);
      }
      da1 *= 0.4;
      db1 *= 0.4;
      dphi *= 0.4;
      dt *= 0.4;
      ds *= 0.4;
    }
  }

  BruteForceResult res;
  res.best_sr = best.feasible ? best.sr : 0.0;
  res.best_scnr = best.scnr;
  res.evaluated = evaluated;
  res.found_feasible = best.feasible;
  return res;
}

}  // namespace risisac::oracle
