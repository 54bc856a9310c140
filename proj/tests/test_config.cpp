#include <doctest.h>

#include <cmath>
#include <string>

#include "uavnet/config.hpp"
#include "uavnet/error.hpp"

using namespace uavnet;

namespace {

void check_same(const ScenarioConfig& a, const ScenarioConfig& b) {
  for (auto key : config_keys()) {
    INFO(key);
    CHECK(get_config_value(a, key) == get_config_value(b, key));
  }
}

}  // namespace

TEST_CASE("defaults are the reference operating point") {
  const ScenarioConfig c;
  CHECK(c.region.width_m * c.region.height_m == 25e6);
  CHECK(c.drone_altitude_m == 200.0);
  CHECK(c.env.carrier_wavelength_m == 0.15);
  CHECK(c.env.alpha == 9.61);
  CHECK(c.env.beta_per_deg == 0.16);
  CHECK(c.env.excess_los_db == 1.0);
  CHECK(c.env.excess_nlos_db == 20.0);
  CHECK(c.points.density_per_m2 == 5e-6);
  CHECK(c.points.min_distance_m == 200.0);
  CHECK(c.constraints.bandwidth_per_drone_hz == 400e6);
  CHECK(c.constraints.max_links_per_drone == 20);
  CHECK(c.constraints.max_power_w == 1.5);
  CHECK(c.power.per_drone_power_w == 1.5);
  CHECK(c.energy.pa_inefficiency == 0.20);
  CHECK(c.constraints.backhaul_rate_bps == 1.40e9);
  CHECK(c.env.fading_floor_db == -10.0);
  CHECK(c.env.noise_power_dbw == -125.0);
  CHECK(c.energy.circuit_power_per_link_w == 0.1);
  CHECK(c.demand_rates_bps == std::vector<double>{5e6, 10e6, 15e6, 20e6, 25e6});
  CHECK(c.drone_count == 6);
  CHECK(c.env.nakagami_shape == 4.0);
  CHECK(c.replications == 100);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("default config round-trips through text") {
  const ScenarioConfig c;
  const auto text = config_to_text(c);
  const auto back = parse_config(text);
  check_same(c, back);
  CHECK(config_to_text(back) == text);
}

TEST_CASE("edited config round-trips through text") {
  ScenarioConfig c;
  set_config_value(c, "constraints.backhaul_bps", "inf");
  set_config_value(c, "channel.fading_mode", "sampled");
  set_config_value(c, "ledger.rogue_drones", "2, 5");
  set_config_value(c, "ledger.cc_address", "0x00112233445566778899aabbccddeeff00112233");
  set_config_value(c, "constraints.sinr_min_db", "-3");
  set_config_value(c, "geometry.density_per_m2", "7e-6");
  CHECK(std::isinf(c.constraints.backhaul_rate_bps));
  CHECK(c.env.fading_mode == FadingMode::sampled);
  CHECK(c.ledger.rogue_drones == std::vector<int>{2, 5});
  CHECK(c.constraints.sinr_min_linear == doctest::Approx(std::pow(10.0, -0.3)));
  const auto back = parse_config(config_to_text(c));
  check_same(c, back);
  CHECK(back.constraints.sinr_min_linear == c.constraints.sinr_min_linear);
}

TEST_CASE("parser accepts comments and blank lines") {
  const auto c = parse_config("# header\n\ndrones.count = 4   # trailing\n  run.seed=9\n");
  CHECK(c.drone_count == 4);
  CHECK(c.seed == 9);
}

TEST_CASE("config errors name the key") {
  ScenarioConfig c;
  try {
    set_config_value(c, "drones.cuont", "3");
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::config);
    CHECK(std::string(e.what()).find("drones.cuont") != std::string::npos);
  }
  CHECK_THROWS_AS(set_config_value(c, "drones.count", "three"), Error);
  CHECK_THROWS_AS(set_config_value(c, "channel.fading_mode", "rayleigh"), Error);
  CHECK_THROWS_AS(parse_config("no equals sign\n"), Error);

  c.drone_count = 0;
  c.constraints.bandwidth_per_drone_hz = -1.0;
  try {
    c.validate();
    FAIL("expected an error");
  } catch (const Error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("drones.count") != std::string::npos);
    CHECK(msg.find("constraints.bandwidth_hz") != std::string::npos);
  }
}

TEST_CASE("error categories map to exit codes") {
  CHECK(exit_code(ErrorCategory::invalid_argument) == 2);
  CHECK(exit_code(ErrorCategory::config) == 3);
  CHECK(exit_code(ErrorCategory::io) == 4);
  CHECK(exit_code(ErrorCategory::ledger) == 5);
  CHECK(category_name(ErrorCategory::config) == "config-invalid");
}
