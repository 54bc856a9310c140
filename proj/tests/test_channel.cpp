#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <vector>

#include "uavnet/channel.hpp"
#include "uavnet/geometry.hpp"
#include "uavnet/rng.hpp"

using namespace uavnet;

namespace {

const Environment kEnv{};

ChannelRealization seeded_channel(std::uint64_t seed, FadingMode mode) {
  Environment env;
  env.fading_mode = mode;
  const auto rsus = sample_matern_type1(Region{}, {5e-6, 200.0}, seed);
  const auto [drones, res] = kmeans_place_drones(rsus, 6, 200.0, seed);
  const std::vector<double> rates{5e6, 10e6, 15e6, 20e6, 25e6};
  const auto demands = DemandProfile::draw(rsus.size(), rates, seed);
  return compute_channel_serial(rsus, drones, env, TransmitPolicy{}, demands, seed);
}

}  // namespace

TEST_CASE("los probability examples") {
  CHECK(std::abs(los_probability(kEnv.alpha, kEnv) - 1.0 / (1.0 + kEnv.alpha)) <= 1e-12);
  CHECK(los_probability(9.61, kEnv) == doctest::Approx(0.09425).epsilon(1e-4));
  CHECK(los_probability(90.0, kEnv) == doctest::Approx(0.99997).epsilon(1e-5));
  CHECK(los_probability(45.0, kEnv) == doctest::Approx(0.9678).epsilon(1e-4));
  CHECK_THROWS_AS(los_probability(0.0, kEnv), std::invalid_argument);
  CHECK_THROWS_AS(los_probability(90.5, kEnv), std::invalid_argument);
}

TEST_CASE("los probability is increasing and bounded") {
  double prev = 0.0;
  for (int k = 1; k <= 900; ++k) {
    const double r = los_probability(0.1 * k, kEnv);
    CHECK(r > prev);
    CHECK(r < 1.0);
    prev = r;
  }
}

TEST_CASE("free-space path loss") {
  const double lambda = 0.15;
  CHECK(free_space_path_loss_db(lambda / (4.0 * std::numbers::pi), lambda) == 0.0);
  CHECK(free_space_path_loss_db(10.0 * lambda / (4.0 * std::numbers::pi), lambda) ==
        doctest::Approx(20.0).epsilon(1e-12));
  CHECK(free_space_path_loss_db(200.0, lambda) == doctest::Approx(84.4832).epsilon(1e-5));
  CHECK_THROWS_AS(free_space_path_loss_db(0.0, lambda), std::invalid_argument);
  CHECK_THROWS_AS(free_space_path_loss_db(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("path loss composition") {
  const LinkGeometry overhead{0.0, 200.0, 90.0};
  const double rho = los_probability(90.0, kEnv);
  const double f0 = free_space_path_loss_db(200.0, 0.15);
  const double pl = path_loss_db(overhead, kEnv, 0.0);
  CHECK(pl == doctest::Approx(f0 + rho * 1.0 + (1.0 - rho) * 20.0).epsilon(1e-14));
  CHECK(pl == doctest::Approx(85.48).epsilon(1e-4));
  CHECK(path_loss_db(overhead, kEnv, -10.0) == doctest::Approx(pl + 10.0).epsilon(1e-14));

  // Increasing in distance at fixed elevation and fading.
  CHECK(path_loss_db({0.0, 300.0, 90.0}, kEnv, 0.0) > pl);
}

TEST_CASE("fading draws") {
  CHECK(sample_fading_db(0.5, kEnv, 1) == 0.0);

  Environment env;
  env.fading_mode = FadingMode::sampled;
  env.nakagami_shape = 1.0;
  env.fading_floor_db = -1e9;
  const int n = 100000;
  double s = 0.0, ss = 0.0;
  for (int k = 0; k < n; ++k) {
    const double x = sample_fading_db(1.0, env, derive_seed(11, {static_cast<std::uint64_t>(k)}));
    s += x;
    ss += x * x;
  }
  const double mean = s / n;
  const double se = std::sqrt((ss / n - mean * mean) / n);
  const double expected = -(10.0 / std::log(10.0)) * std::numbers::egamma;
  CHECK(expected == doctest::Approx(-2.507).epsilon(1e-3));
  CHECK(std::abs(mean - expected) <= 3.0 * se);

  env.fading_floor_db = -10.0;
  env.nakagami_shape = 4.0;
  for (int k = 0; k < 20000; ++k) {
    CHECK(sample_fading_db(0.3, env, static_cast<std::uint64_t>(k)) >= -10.0);
  }
  CHECK(sample_fading_db(0.3, env, 5) == sample_fading_db(0.3, env, 5));
}

TEST_CASE("spectral efficiency and bandwidth") {
  CHECK(spectral_efficiency(0.0) == 0.0);
  CHECK(spectral_efficiency(1.0) == 1.0);
  CHECK(spectral_efficiency(1023.0) == 10.0);
  CHECK(required_bandwidth_hz(20e6, 3.0) == 10e6);
  CHECK(std::isinf(required_bandwidth_hz(20e6, 0.0)));
  CHECK_THROWS_AS(spectral_efficiency(-1.0), std::invalid_argument);
}

TEST_CASE("dB round trip") {
  for (double x = -150.0; x <= 150.0; x += 0.37) {
    CHECK(std::abs(linear_to_db(db_to_linear(x)) - x) <= 1e-9);
  }
}

TEST_CASE("single drone sees only noise") {
  const std::vector<RsuSite> rsus{{1, 0, 0}, {2, 300, 400}};
  const std::vector<DroneSite> drones{{1, 100, 0, 200}};
  const DemandProfile demands{{10e6, 20e6}};
  const auto ch = compute_channel(rsus, drones, kEnv, TransmitPolicy{}, demands, 1);
  const double noise = db_to_linear(-125.0);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(ch.interference_w(i, 0) == 0.0);
    CHECK(ch.sinr_linear(i, 0) == doctest::Approx(ch.received_power_w(i, 0) / noise).epsilon(1e-14));
    const double gain = std::pow(10.0, -ch.path_loss_db(i, 0) / 10.0);
    CHECK(ch.link_gain(i, 0) == doctest::Approx(gain).epsilon(1e-14));
    CHECK(ch.received_power_w(i, 0) == doctest::Approx(1.5 * gain).epsilon(1e-14));
  }
}

TEST_CASE("symmetric pair of drones") {
  const std::vector<RsuSite> rsus{{1, 0, 0}};
  const std::vector<DroneSite> drones{{1, -150, 0, 200}, {2, 150, 0, 200}};
  const DemandProfile demands{{10e6}};
  const auto ch = compute_channel(rsus, drones, kEnv, TransmitPolicy{}, demands, 1);
  const double rx = ch.received_power_w(0, 0);
  CHECK(ch.received_power_w(0, 1) == rx);
  CHECK(ch.interference_w(0, 0) == rx);
  const double expected = rx / (db_to_linear(-125.0) + rx);
  CHECK(ch.sinr_linear(0, 0) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(ch.sinr_linear(0, 0) < 1.0);
  CHECK(ch.sinr_linear(0, 1) == ch.sinr_linear(0, 0));
}

TEST_CASE("rate over bandwidth equals spectral efficiency on every link") {
  for (auto mode : {FadingMode::deterministic_zero, FadingMode::sampled}) {
    const auto ch = seeded_channel(21, mode);
    const auto rates = DemandProfile::draw(ch.rsu_count(), std::vector<double>{5e6, 10e6, 15e6, 20e6, 25e6}, 21);
    for (std::size_t i = 0; i < ch.rsu_count(); ++i)
      for (std::size_t j = 0; j < ch.drone_count(); ++j) {
        const double se = std::log2(1.0 + ch.sinr_linear(i, j));
        const double ratio = rates.rate_bps[i] / ch.required_bandwidth_hz(i, j);
        CHECK(std::abs(ratio - se) <= 1e-9 * se);
      }
  }
}

TEST_CASE("extra drone never raises SINR") {
  const auto rsus = sample_matern_type1(Region{}, {5e-6, 200.0}, 4);
  const std::vector<double> rates{5e6, 10e6};
  const auto demands = DemandProfile::draw(rsus.size(), rates, 4);
  std::vector<DroneSite> drones{{1, 1000, 1000, 200}, {2, 4000, 3000, 200}};
  Environment env;
  env.fading_mode = FadingMode::sampled;
  const auto before = compute_channel(rsus, drones, env, TransmitPolicy{}, demands, 4);
  drones.push_back({3, 2500, 2500, 200});
  const auto after = compute_channel(rsus, drones, env, TransmitPolicy{}, demands, 4);
  for (std::size_t i = 0; i < rsus.size(); ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(after.sinr_linear(i, j) <= before.sinr_linear(i, j));
}

TEST_CASE("channel is deterministic and parallel matches serial") {
  const auto a = seeded_channel(8, FadingMode::sampled);
  const auto b = seeded_channel(8, FadingMode::sampled);
  CHECK(a == b);
  CHECK(channel_to_csv(a) == channel_to_csv(b));
  CHECK(channel_to_csv(a).rfind("rsu_id,drone_id,s_m,d_m,theta_deg,plos,pathloss_db,sinr_db,bw_req_hz\n", 0) == 0);
}

TEST_CASE("demand draws come from the rate vector") {
  const std::vector<double> rates{5e6, 10e6, 15e6};
  const auto d = DemandProfile::draw(500, rates, 3);
  REQUIRE(d.rate_bps.size() == 500);
  int hits[3] = {0, 0, 0};
  for (double r : d.rate_bps) {
    const auto k = static_cast<int>(r / 5e6) - 1;
    REQUIRE(k >= 0);
    REQUIRE(k < 3);
    CHECK(rates[static_cast<std::size_t>(k)] == r);
    ++hits[k];
  }
  for (int h : hits) CHECK(h > 100);
}
