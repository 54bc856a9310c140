#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "uavnet/association.hpp"
#include "uavnet/channel.hpp"
#include "uavnet/geometry.hpp"
#include "uavnet/ledger.hpp"

namespace uavnet {

struct LedgerSettings {
  GasSchedule gas;
  std::uint64_t block_gas_limit = 6'000'000;
  /// 40 hex chars; empty derives the C&C address from the scenario seed.
  std::string cc_address_hex;
  /// Drone / RSU ids the C&C never registers. They fail authentication and
  /// are dropped before placement.
  std::vector<int> rogue_drones;
  std::vector<int> rogue_rsus;
  int sv_count = 10;
  /// Entities registered per replication in a block-gas-limit sweep.
  int sweep_population = 200;
};

/// Every knob of one scenario. Defaults are the reference urban operating
/// point (5 km x 5 km, six drones at 200 m).
struct ScenarioConfig {
  Region region;
  PointProcessParams points{5e-6, 200.0};
  int drone_count = 6;
  double drone_altitude_m = 200.0;
  KMeansOptions kmeans;
  Environment env;
  TransmitPolicy power;
  std::vector<double> demand_rates_bps{5e6, 10e6, 15e6, 20e6, 25e6};
  Constraints constraints;
  EnergyModel energy;
  LedgerSettings ledger;
  std::uint64_t seed = 1;
  int replications = 100;

  /// Throws Error(config) listing every offending key.
  void validate() const;
};

/// Every key understood by the config format, in file order.
std::vector<std::string_view> config_keys();

/// Current value of `key` in config-file syntax.
std::string get_config_value(const ScenarioConfig& config, std::string_view key);

/// Throws Error(config) naming the key on unknown keys or unparsable values.
void set_config_value(ScenarioConfig& config, std::string_view key, std::string_view value);

/// `key = value` lines grouped under `# section` comments.
std::string config_to_text(const ScenarioConfig& config);

/// Starts from defaults and applies each `key = value` line. `#` starts a
/// comment; blank lines are ignored.
ScenarioConfig parse_config(std::string_view text);

ScenarioConfig load_config(const std::string& path);

}  // namespace uavnet
