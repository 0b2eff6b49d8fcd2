#ifndef RISISAC_TYPES_HPP
#define RISISAC_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace risisac {

using cxd = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CRowVec = Eigen::RowVectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using Vec2 = Eigen::Vector2d;

inline constexpr double kLn2 = 0.6931471805599453094;

/// dBm -> watts, dB -> linear ratio.
inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& key, const std::string& what)
      : std::runtime_error("config key '" + key + "': " + what), key_(key) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

/// Distance-based path loss exponents per link class.
struct PathLossParams {
  double C0 = 1e-3;  // reference gain at d0 (linear)
  double d0 = 1.0;   // reference distance (m)
  double exp_bs_target = 2.0;
  double exp_bs_ris = 2.2;
  double exp_ris_user = 2.4;  // also RIS -> PE
  double exp_bs_user = 3.7;   // also BS -> PE
  double exp_ae_user = 2.6;
};

struct Positions {
  Vec2 bs{0.0, 0.0};
  Vec2 ris{30.0, 10.0};
  Vec2 target{10.0, 15.0};  // sensing target doubles as the AE
  Vec2 pe{20.0, -5.0};
};

/// Full scenario description. All powers/variances are linear watts,
/// gamma_echo and kappa are linear ratios.
struct SystemConfig {
  int K = 3;   // users
  int N = 6;   // BS antennas (transmit = receive)
  int M = 80;  // RIS elements; M = 0 disables the reflect path

  double P = dbm_to_watts(45.0);        // BS transmit power budget
  double P_e = dbm_to_watts(7.0);       // AE jamming power
  double gamma_echo = db_to_linear(15.0);  // echo SCNR threshold

  double sigma_k2 = dbm_to_watts(-60.0);   // user noise
  double sigma_ae2 = dbm_to_watts(-60.0);  // AE noise
  double sigma_pe2 = dbm_to_watts(-60.0);  // PE noise
  double sigma_s2 = dbm_to_watts(-60.0);   // sensing receiver noise

  double zeta2 = 1.0;                     // E|alpha|^2, target RCS (m^2)
  double kappa = db_to_linear(3.0);       // Rician factor
  double rho = 0.0;                       // phi penalty weight; 0 = auto
  double delta = 1e-3;                    // convergence threshold

  Positions positions;
  double user_circle_radius = 20.0;
  // Users are placed on a circle centered at the RIS unless overridden.
  std::optional<Vec2> user_center;

  PathLossParams path_loss;
  double element_spacing_ratio = 0.5;  // d/lambda for both arrays

  std::uint64_t seed = 1;
  // When set, user placement draws from this seed instead of `seed`,
  // so trials can share user positions while channels vary.
  std::optional<std::uint64_t> user_seed;

  void validate() const;
};

/// One realization of every channel in the scenario.
struct ChannelSet {
  int K = 0, N = 0, M = 0;
  CMat H_br;                 // M x N, BS -> RIS
  std::vector<CVec> g_b;     // K of length N, BS -> user direct
  std::vector<CVec> g_r;     // K of length M, RIS -> user
  CVec h_bp;                 // N, BS -> PE direct
  CVec h_rp;                 // M, RIS -> PE
  CVec h_bt;                 // N, BS -> target/AE
  std::vector<cxd> h_ae;     // K scalars, AE -> user
  CMat H_bt;                 // N x N cascaded, h_bt * h_bt^H
  std::vector<Vec2> user_positions;
};

/// Decision variables of the joint design. W columns: first K communication,
/// last N radar. phi is the RIS reflection vector, u the receive beamformer.
struct BeamformingState {
  CMat W;    // N x (K+N)
  CVec phi;  // M
  CVec u;    // N, unit norm by convention
};

}  // namespace risisac

#endif
