#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "uavnet/association.hpp"
#include "uavnet/config.hpp"

namespace uavnet {

/// Everything one scenario run produces.
struct ScenarioResult {
  std::uint64_t seed = 0;
  std::vector<RsuSite> rsus;      // authenticated RSUs, renumbered 1..U
  std::vector<DroneSite> drones;  // placed, authenticated drones
  ClusteringResult clustering;
  ChannelRealization channel;
  DemandProfile demands;
  AssociationMatrix association;
  NetworkMetrics metrics;
  int backhaul_iterations = 0;
  std::size_t excluded_drones = 0;
  std::size_t excluded_rsus = 0;
  LedgerStats ledger;
  std::vector<std::string> stage_log;
};

/// Registration and authentication through the ledger, RSU sampling,
/// placement, channel, demands, greedy association and metrics.
ScenarioResult run_scenario(const ScenarioConfig& config, std::uint64_t seed);

/// Writes rsus.csv, drones.csv, channel.csv, association.csv, metrics.csv
/// and stages.log into `dir`.
void write_scenario_artifacts(const ScenarioResult& result, const std::filesystem::path& dir);

/// seed,sum_rate_bps,served_frac,avg_bw_hz,ee_bps_per_w
std::string metrics_csv_header();
std::string metrics_csv_row(std::uint64_t seed, const NetworkMetrics& m);

enum class SweepParameter { bandwidth, drones, backhaul, tau, density, gas_limit };

std::string_view parameter_name(SweepParameter p);
SweepParameter parse_parameter(std::string_view name);

struct SweepSpec {
  SweepParameter parameter = SweepParameter::bandwidth;
  std::vector<double> values;
  int replications = 100;
};

struct SeedSample {
  std::uint64_t seed = 0;
  NetworkMetrics metrics;
  double tx_per_block = 0.0;  // gas-limit sweeps only
};

struct ResultRow {
  double value = 0.0;
  std::vector<SeedSample> samples;  // ascending seed
  NetworkMetrics mean;
  NetworkMetrics stderr_;
  double tx_per_block_mean = 0.0;
  double tx_per_block_stderr = 0.0;
};

/// Applies a sweep value to a copy of `base`.
ScenarioConfig with_parameter(const ScenarioConfig& base, SweepParameter p, double value);

/// Transactions that fit in one block of `gas_limit` for a seeded mixed
/// population of `population` registrations.
std::size_t transactions_per_block(const ScenarioConfig& config, std::uint64_t gas_limit,
                                   std::uint64_t seed);

/// Replication r of every sweep point uses seed config.seed + r, so points
/// share random numbers. Runs in parallel; output does not depend on the
/// thread count.
std::vector<ResultRow> run_sweep(const ScenarioConfig& config, const SweepSpec& spec);

/// Aggregates per-seed samples (sorted by seed first).
ResultRow aggregate(double value, std::vector<SeedSample> samples);

enum class Recipe { generic, bandwidth_tau, bandwidth_backhaul, drones_efficiency, drones_sum_rate, gas_limit };

std::string_view recipe_name(Recipe r);
Recipe parse_recipe(std::string_view name);

struct Series {
  double curve_value = 0.0;  // tau, backhaul or density depending on recipe
  std::vector<ResultRow> rows;
};

struct FigureData {
  Recipe recipe = Recipe::generic;
  SweepParameter x_parameter = SweepParameter::bandwidth;
  std::vector<Series> series;
};

/// Runs the sweeps behind one figure recipe.
FigureData run_recipe(Recipe recipe, const ScenarioConfig& base);

/// CSV text for a figure; throws std::invalid_argument when there are no rows.
std::string plot_csv(const FigureData& fig);
/// Same data as whitespace-separated columns with a commented header.
std::string plot_dat(const FigureData& fig);

/// Writes <recipe>.csv and <recipe>.dat into `dir`; returns the CSV path.
std::filesystem::path emit_plot_data(const FigureData& fig, const std::filesystem::path& dir);

/// C&C address of a scenario: the configured one, else derived from the seed.
Address scenario_cc_address(const ScenarioConfig& config, std::uint64_t seed);

/// A random association instance small enough for brute_force_optimal:
/// 1..max_rsus RSUs and 1..max_drones drones in a 1 km square, with tight
/// link-count, bandwidth and backhaul limits so the constraints bind.
struct SmallInstance {
  std::uint64_t seed = 0;
  ChannelRealization channel;
  DemandProfile demands;
  Constraints constraints;
  TransmitPolicy policy;
};

SmallInstance random_small_instance(std::uint64_t seed, int max_rsus, int max_drones);

struct OracleComparison {
  std::uint64_t seed = 0;
  std::size_t rsus = 0;
  std::size_t drones = 0;
  double greedy_bps = 0.0;
  double optimal_bps = 0.0;
  std::size_t greedy_violations = 0;
};

/// Greedy versus exhaustive optimum on `count` instances seeded
/// first_seed, first_seed + 1, ...
std::vector<OracleComparison> oracle_compare(std::uint64_t first_seed, int count, int max_rsus, int max_drones);

/// seed,rsus,drones,greedy_bps,optimal_bps,gap_bps,greedy_violations
std::string oracle_csv(const std::vector<OracleComparison>& rows);

}  // namespace uavnet
