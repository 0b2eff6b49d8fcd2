#include <doctest.h>

#include <cmath>

#include "oracle_metrics.hpp"
#include "risisac/channel.hpp"
#include "risisac/metrics.hpp"
#include "test_support.hpp"

using namespace risisac;
using test_support::random_channels;
using test_support::random_state;
using test_support::synthetic_config;

TEST_CASE("composite channel scalar case and M = 0") {
  // M = 1, N = 1: g_b = 1, g_r = 2, H_br = 3, phi = j -> 1 + 6j.
  ChannelSet ch;
  ch.K = 1;
  ch.N = 1;
  ch.M = 1;
  ch.g_b = {CVec::Constant(1, cxd(1.0, 0.0))};
  ch.g_r = {CVec::Constant(1, cxd(2.0, 0.0))};
  ch.H_br = CMat::Constant(1, 1, cxd(3.0, 0.0));
  ch.h_ae = {cxd(0.0, 0.0)};
  ch.h_bp = CVec::Constant(1, cxd(0.0, 0.0));
  ch.h_rp = CVec::Constant(1, cxd(0.0, 0.0));
  ch.h_bt = CVec::Constant(1, cxd(1.0, 0.0));
  ch.H_bt = ch.h_bt * ch.h_bt.adjoint();

  CVec phi = CVec::Constant(1, cxd(0.0, 1.0));
  const CRowVec g = metrics::composite_user_channel(ch, phi, 0);
  CHECK(std::abs(g(0) - cxd(1.0, 6.0)) < 1e-14);

  ChannelSet direct = channel::strip_ris(ch);
  const CRowVec g0 = metrics::composite_user_channel(direct, CVec(0), 0);
  CHECK(std::abs(g0(0) - cxd(1.0, 0.0)) < 1e-14);

  CHECK_THROWS_AS(metrics::composite_user_channel(ch, phi, 3), std::out_of_range);
}

TEST_CASE("scalar SINR and SCNR against hand arithmetic") {
  // K=1, N=1, M=0: g=1, w=[sqrt(p), 0], P_e=0 -> SINR = p/sigma^2.
  ChannelSet ch;
  ch.K = 1;
  ch.N = 1;
  ch.M = 0;
  ch.g_b = {CVec::Constant(1, cxd(1.0, 0.0))};
  ch.g_r = {CVec(0)};
  ch.H_br = CMat(0, 1);
  ch.h_ae = {cxd(1.0, 0.0)};
  ch.h_bp = CVec::Constant(1, cxd(0.5, 0.0));
  ch.h_rp = CVec(0);
  ch.h_bt = CVec::Constant(1, cxd(1.0, 0.0));
  ch.H_bt = ch.h_bt * ch.h_bt.adjoint();

  SystemConfig cfg = synthetic_config(1, 1, 0);
  cfg.P_e = 0.0;
  cfg.sigma_k2 = 0.25;
  const double p = 2.0;

  BeamformingState s;
  s.W = CMat::Zero(1, 2);
  s.W(0, 0) = std::sqrt(p);
  s.phi = CVec(0);
  s.u = CVec::Constant(1, cxd(1.0, 0.0));

  CHECK(metrics::sinr_user(ch, s, cfg, 0) == doctest::Approx(p / 0.25).epsilon(1e-12));

  // N=1 SCNR scalar: h_bt=1, single active column sqrt(p), zeta2=1
  // -> p/(sigma_s^2 + P_e).
  cfg.P_e = 0.5;
  cfg.sigma_s2 = 0.25;
  CHECK(metrics::scnr_echo(ch, s, cfg) ==
        doctest::Approx(p / (0.25 + 0.5)).epsilon(1e-12));

  // Doubling P_e strictly lowers the user SINR when h_ae != 0.
  const double sinr1 = metrics::sinr_user(ch, s, cfg, 0);
  cfg.P_e = 1.0;
  CHECK(metrics::sinr_user(ch, s, cfg, 0) < sinr1);
}

TEST_CASE("zero beamformer sends every metric to zero") {
  Rng rng(3);
  const ChannelSet ch = random_channels(2, 3, 4, rng);
  const SystemConfig cfg = synthetic_config(2, 3, 4);
  BeamformingState s = random_state(ch, cfg.P, rng);
  s.W.setZero();
  for (int k = 0; k < 2; ++k) {
    CHECK(metrics::sinr_user(ch, s, cfg, k) == 0.0);
    CHECK(metrics::rate_user(ch, s, cfg, k) == 0.0);
    CHECK(metrics::sinr_ae(ch, s, cfg, k) == 0.0);
    CHECK(metrics::sinr_pe(ch, s, cfg, k) == 0.0);
  }
  CHECK(metrics::scnr_echo(ch, s, cfg) == 0.0);
  CHECK(metrics::secrecy_rate(ch, s, cfg).secrecy_rate == 0.0);
}

TEST_CASE("rate mapping at simple SINR values") {
  CHECK(std::log2(1.0 + 0.0) == 0.0);
  CHECK(std::log2(1.0 + 1.0) == 1.0);
  CHECK(std::log2(1.0 + 3.0) == 2.0);
}

TEST_CASE("SCNR is scale invariant in u; SINRs ignore u") {
  Rng rng(17);
  const ChannelSet ch = random_channels(2, 3, 2, rng);
  const SystemConfig cfg = synthetic_config(2, 3, 2);
  BeamformingState s = random_state(ch, cfg.P, rng);
  const double base = metrics::scnr_echo(ch, s, cfg);
  BeamformingState scaled = s;
  scaled.u *= cxd(2.5, -1.0);
  CHECK(metrics::scnr_echo(ch, scaled, cfg) == doctest::Approx(base).epsilon(1e-12));
  CHECK(metrics::sinr_user(ch, scaled, cfg, 0) ==
        doctest::Approx(metrics::sinr_user(ch, s, cfg, 0)).epsilon(1e-15));

  BeamformingState zero_u = s;
  zero_u.u.setZero();
  CHECK_THROWS_AS(metrics::scnr_echo(ch, zero_u, cfg), std::domain_error);
}

TEST_CASE("AE sees no signal from an orthogonal column") {
  Rng rng(23);
  const ChannelSet ch = random_channels(1, 2, 0, rng);
  const SystemConfig cfg = synthetic_config(1, 2, 0);
  BeamformingState s = random_state(ch, cfg.P, rng);
  // Project column 0 orthogonal to h_bt.
  const CVec h = ch.h_bt / ch.h_bt.norm();
  s.W.col(0) -= h * (h.adjoint() * s.W.col(0))(0);
  CHECK(metrics::sinr_ae(ch, s, cfg, 0) <= 1e-24);
}

TEST_CASE("secrecy terms clamp at zero") {
  Rng rng(31);
  const ChannelSet ch = random_channels(2, 2, 2, rng);
  const SystemConfig cfg = synthetic_config(2, 2, 2);
  const BeamformingState s = random_state(ch, cfg.P, rng);
  const auto rep = metrics::secrecy_rate(ch, s, cfg);
  for (int k = 0; k < 2; ++k) {
    const double expect = std::max(
        0.0, rep.rate_user(k) - std::max(rep.rate_ae(k), rep.rate_pe(k)));
    CHECK(rep.secrecy_term(k) == doctest::Approx(expect).epsilon(1e-15));
    CHECK(rep.secrecy_term(k) >= 0.0);
  }
  CHECK(rep.secrecy_rate ==
        doctest::Approx(rep.secrecy_term.sum()).epsilon(1e-15));
}

TEST_CASE("global column phase rotation leaves everything unchanged") {
  Rng rng(37);
  const ChannelSet ch = random_channels(2, 3, 3, rng);
  const SystemConfig cfg = synthetic_config(2, 3, 3);
  BeamformingState s = random_state(ch, cfg.P, rng);
  const auto before = metrics::secrecy_rate(ch, s, cfg);
  s.W.col(1) *= std::polar(1.0, 1.234);
  const auto after = metrics::secrecy_rate(ch, s, cfg);
  CHECK(after.secrecy_rate == doctest::Approx(before.secrecy_rate).epsilon(1e-12));
  CHECK(after.scnr == doctest::Approx(before.scnr).epsilon(1e-12));
}

TEST_CASE("metrics match the scalar-expansion reference on small instances") {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const int K = 1 + static_cast<int>(rng.next_u64() % 2);
    const int N = 1 + static_cast<int>(rng.next_u64() % 2);
    const int M = static_cast<int>(rng.next_u64() % 3);
    const ChannelSet ch = random_channels(K, N, M, rng);
    const SystemConfig cfg = synthetic_config(K, N, M);
    const BeamformingState s = random_state(ch, cfg.P, rng);
    for (int k = 0; k < K; ++k) {
      CHECK(metrics::sinr_user(ch, s, cfg, k) ==
            doctest::Approx(oracle_metrics::sinr_user(ch, s, cfg, k)).epsilon(1e-10));
      CHECK(metrics::sinr_ae(ch, s, cfg, k) ==
            doctest::Approx(oracle_metrics::sinr_ae(ch, s, cfg, k)).epsilon(1e-10));
      CHECK(metrics::sinr_pe(ch, s, cfg, k) ==
            doctest::Approx(oracle_metrics::sinr_pe(ch, s, cfg, k)).epsilon(1e-10));
    }
    CHECK(metrics::scnr_echo(ch, s, cfg) ==
          doctest::Approx(oracle_metrics::scnr_echo(ch, s, cfg)).epsilon(1e-10));
    CHECK(metrics::secrecy_rate(ch, s, cfg).secrecy_rate ==
          doctest::Approx(oracle_metrics::secrecy_rate(ch, s, cfg)).epsilon(1e-10));
  }
}

TEST_CASE("PE metrics reduce to direct-link values at M = 0") {
  Rng rng(43);
  const ChannelSet full = random_channels(1, 2, 3, rng);
  const ChannelSet direct = channel::strip_ris(full);
  const SystemConfig cfg = synthetic_config(1, 2, 3);
  BeamformingState s = random_state(full, cfg.P, rng);
  BeamformingState s0 = s;
  s0.phi = CVec(0);
  // Same W: the PE SINR with the RIS removed equals the direct-only formula.
  const CRowVec row = metrics::composite_pe_channel(direct, s0.phi);
  CHECK((row - full.h_bp.adjoint()).norm() == 0.0);
  CHECK(metrics::sinr_pe(direct, s0, cfg, 0) ==
        doctest::Approx(oracle_metrics::sinr_pe(direct, s0, cfg, 0)).epsilon(1e-12));
}
