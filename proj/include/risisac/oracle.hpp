#ifndef RISISAC_ORACLE_HPP
#define RISISAC_ORACLE_HPP

#include "risisac/types.hpp"

namespace risisac::oracle {

struct BruteForceParams {
  int phases_per_element = 64;
  int dir_points = 7;     // polar angle grid per beam direction
  int phase_points = 8;   // azimuth phase grid per beam direction
  int split_points = 6;   // communication/radar power split
  int scale_points = 2;   // total power backoff
  int refine_rounds = 2;
};

struct BruteForceResult {
  double best_sr = 0.0;
  double best_scnr = 0.0;
  long long evaluated = 0;
  bool found_feasible = false;
};

/// Exhaustive grid search of the single-user micro instance (K = 1, N = 2,
/// M <= 2): all reflect-phase combinations crossed with a direction/power grid
/// for one communication and one radar column, keeping only combinations that
/// satisfy the echo constraint. Independent of the iterative solvers; used as
/// the optimality reference.
BruteForceResult brute_force_micro(const ChannelSet& ch, const SystemConfig& cfg,
                                   const BruteForceParams& params = {});

}  // namespace risisac::oracle

#endif
