#ifndef RISISAC_CHANNEL_HPP
#define RISISAC_CHANNEL_HPP

#include "risisac/rng.hpp"
#include "risisac/types.hpp"

namespace risisac::channel {

/// Uniform-linear-array response [1, e^{j2pi d sin(theta)}, ...] of length n.
CVec steering_bs(double theta, int n, double spacing_ratio);
CVec steering_ris(double theta, int m, double spacing_ratio);

/// C0 * (d0/d)^epsilon. Throws std::domain_error for d <= 0.
double path_loss(double d, double epsilon, double c0 = 1e-3, double d0 = 1.0);

/// sqrt(kappa/(kappa+1)) * los + sqrt(1/(kappa+1)) * G, G iid CN(0,1).
/// Entries of G are drawn row-major so a taller LOS matrix extends, rather
/// than reshuffles, the draw sequence. Throws std::domain_error for kappa < 0.
CMat rician_channel(const CMat& los, double kappa, Rng& rng);

/// Angle of `to` as seen from a linear array at `from` with broadside +y.
double array_angle(const Vec2& from, const Vec2& to);

/// Draw every channel in the scenario from config.seed. Pure function of the
/// config; per-link draws come from named RNG streams so changing M or K
/// leaves unrelated links untouched.
ChannelSet generate_scenario(const SystemConfig& config);

/// Copy with all RIS-side links removed (M = 0), for the no-RIS benchmark.
ChannelSet strip_ris(const ChannelSet& channels);

}  // namespace risisac::channel

#endif
