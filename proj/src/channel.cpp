#include "risisac/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace risisac::channel {

namespace {

CVec steering(double theta, int n, double spacing_ratio) {
  if (n < 0) throw std::domain_error("steering vector length must be >= 0");
  CVec a(n);
  const double phase_step = 2.0 * M_PI * spacing_ratio * std::sin(theta);
  for (int i = 0; i < n; ++i) {
    a(i) = std::polar(1.0, phase_step * static_cast<double>(i));
  }
  return a;
}

/// Rayleigh vector with per-entry variance `gain` (CN(0, gain)).
CVec rayleigh_vector(int n, double gain, Rng& rng) {
  CVec v(n);
  const double amp = std::sqrt(gain);
  for (int i = 0; i < n; ++i) v(i) = amp * rng.next_cgaussian();
  return v;
}

}  // namespace

CVec steering_bs(double theta, int n, double spacing_ratio) {
  return steering(theta, n, spacing_ratio);
}

CVec steering_ris(double theta, int m, double spacing_ratio) {
  return steering(theta, m, spacing_ratio);
}

double path_loss(double d, double epsilon, double c0, double d0) {
  if (d <= 0.0) throw std::domain_error("path_loss: distance must be positive");
  return c0 * std::pow(d0 / d, epsilon);
}

CMat rician_channel(const CMat& los, double kappa, Rng& rng) {
  if (kappa < 0.0) throw std::domain_error("rician_channel: kappa must be >= 0");
  const double w_los = std::sqrt(kappa / (kappa + 1.0));
  const double w_nlos = std::sqrt(1.0 / (kappa + 1.0));
  CMat h(los.rows(), los.cols());
  for (Eigen::Index r = 0; r < los.rows(); ++r) {
    for (Eigen::Index c = 0; c < los.cols(); ++c) {
      h(r, c) = w_los * los(r, c) + w_nlos * rng.next_cgaussian();
    }
  }
  return h;
}

double array_angle(const Vec2& from, const Vec2& to) {
  const Vec2 d = to - from;
  return std::atan2(d.x(), d.y());
}

ChannelSet generate_scenario(const SystemConfig& config) {
  config.validate();
  const int K = config.K, N = config.N, M = config.M;
  const auto& pos = config.positions;
  const auto& pl = config.path_loss;
  const double sp = config.element_spacing_ratio;

  auto dist = [](const Vec2& a, const Vec2& b) {
    double d = (a - b).norm();
    if (d <= 0.0) throw std::domain_error("generate_scenario: coincident positions");
    return d;
  };

  ChannelSet cs;
  cs.K = K;
  cs.N = N;
  cs.M = M;

  // User drops on a circle around the RIS (or an explicit center).
  const Vec2 center = config.user_center.value_or(pos.ris);
  Rng user_rng = Rng::stream(config.user_seed.value_or(config.seed), "user_positions");
  cs.user_positions.resize(K);
  for (int k = 0; k < K; ++k) {
    const double psi = 2.0 * M_PI * user_rng.next_double();
    cs.user_positions[k] =
        center + config.user_circle_radius * Vec2(std::cos(psi), std::sin(psi));
  }

  // BS -> RIS, Rician around the steering outer product.
  if (M > 0) {
    const double d_br = dist(pos.bs, pos.ris);
    const CVec a_ris_in = steering_ris(array_angle(pos.ris, pos.bs), M, sp);
    const CVec a_bs_out = steering_bs(array_angle(pos.bs, pos.ris), N, sp);
    const CMat los = a_ris_in * a_bs_out.adjoint();
    Rng rng = Rng::stream(config.seed, "H_br");
    cs.H_br = std::sqrt(path_loss(d_br, pl.exp_bs_ris, pl.C0, pl.d0)) *
              rician_channel(los, config.kappa, rng);
  } else {
    cs.H_br.resize(0, N);
  }

  // Per-user links.
  cs.g_b.resize(K);
  cs.g_r.resize(K);
  cs.h_ae.resize(K);
  for (int k = 0; k < K; ++k) {
    const std::string tag = "user_" + std::to_string(k);
    const Vec2& up = cs.user_positions[k];

    Rng rng_direct = Rng::stream(config.seed, tag + "/g_b");
    cs.g_b[k] = rayleigh_vector(
        N, path_loss(dist(pos.bs, up), pl.exp_bs_user, pl.C0, pl.d0), rng_direct);

    if (M > 0) {
      const CVec los = steering_ris(array_angle(pos.ris, up), M, sp);
      Rng rng_ris = Rng::stream(config.seed, tag + "/g_r");
      cs.g_r[k] = std::sqrt(path_loss(dist(pos.ris, up), pl.exp_ris_user, pl.C0, pl.d0)) *
                  rician_channel(los, config.kappa, rng_ris);
    } else {
      cs.g_r[k].resize(0);
    }

    Rng rng_ae = Rng::stream(config.seed, tag + "/h_ae");
    cs.h_ae[k] = rayleigh_vector(
        1, path_loss(dist(pos.target, up), pl.exp_ae_user, pl.C0, pl.d0), rng_ae)(0);
  }

  // PE links.
  {
    Rng rng_bp = Rng::stream(config.seed, "h_bp");
    cs.h_bp = rayleigh_vector(
        N, path_loss(dist(pos.bs, pos.pe), pl.exp_bs_user, pl.C0, pl.d0), rng_bp);
    if (M > 0) {
      const CVec los = steering_ris(array_angle(pos.ris, pos.pe), M, sp);
      Rng rng_rp = Rng::stream(config.seed, "h_rp");
      cs.h_rp = std::sqrt(path_loss(dist(pos.ris, pos.pe), pl.exp_ris_user, pl.C0, pl.d0)) *
                rician_channel(los, config.kappa, rng_rp);
    } else {
      cs.h_rp.resize(0);
    }
  }

  // Sensing target: deterministic LOS with sqrt(path loss) amplitude.
  {
    const double d_bt = dist(pos.bs, pos.target);
    const double beta = std::sqrt(path_loss(d_bt, pl.exp_bs_target, pl.C0, pl.d0));
    cs.h_bt = beta * steering_bs(array_angle(pos.bs, pos.target), N, sp);
    cs.H_bt = cs.h_bt * cs.h_bt.adjoint();
  }

  return cs;
}

ChannelSet strip_ris(const ChannelSet& channels) {
  ChannelSet cs = channels;
  cs.M = 0;
  cs.H_br.resize(0, cs.N);
  for (auto& g : cs.g_r) g.resize(0);
  cs.h_rp.resize(0);
  return cs;
}

}  // namespace risisac::channel

namespace risisac {

void SystemConfig::validate() const {
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0)) throw ConfigError(key, "must be strictly positive");
  };
  if (K < 1) throw ConfigError("K", "must be >= 1");
  if (N < 1) throw ConfigError("N", "must be >= 1");
  if (M < 0) throw ConfigError("M", "must be >= 0");
  positive(P, "P");
  if (P_e < 0.0) throw ConfigError("P_e", "must be >= 0");
  positive(gamma_echo, "gamma_echo");
  positive(sigma_k2, "sigma_k2");
  positive(sigma_ae2, "sigma_ae2");
  positive(sigma_pe2, "sigma_pe2");
  positive(sigma_s2, "sigma_s2");
  positive(zeta2, "zeta2");
  positive(delta, "delta");
  positive(user_circle_radius, "user_circle_radius");
  positive(path_loss.C0, "path_loss.C0");
  positive(path_loss.d0, "path_loss.d0");
  positive(element_spacing_ratio, "element_spacing_ratio");
  if (kappa < 0.0) throw ConfigError("kappa", "must be >= 0");
  if (rho < 0.0) throw ConfigError("rho", "must be >= 0");
}

}  // namespace risisac
