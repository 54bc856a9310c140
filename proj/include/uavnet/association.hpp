#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "uavnet/channel.hpp"

namespace uavnet {

struct Constraints {
  double bandwidth_per_drone_hz = 400e6;  // W_j
  int max_links_per_drone = 20;           // tau_j
  double max_power_w = 1.5;               // P_j^max
  double sinr_min_linear = 0.1;           // -10 dB
  double interference_threshold_w = 1e-3;
  double backhaul_rate_bps = 1.40e9;      // may be +inf

  void validate() const;
};

struct EnergyModel {
  double pa_inefficiency = 0.20;      // eta
  double circuit_power_per_link_w = 0.1;
};

/// Binary U x V association. Row i is RSU position i, column j drone position j.
class AssociationMatrix {
 public:
  AssociationMatrix() = default;
  AssociationMatrix(std::size_t rsus, std::size_t drones) : links_(rsus, drones, 0) {}

  std::size_t rsu_count() const { return links_.rows(); }
  std::size_t drone_count() const { return links_.cols(); }
  bool linked(std::size_t i, std::size_t j) const { return links_(i, j) != 0; }
  void set(std::size_t i, std::size_t j, bool on) { links_(i, j) = on ? 1 : 0; }

  /// Drone position serving RSU i, or -1.
  int serving_drone(std::size_t i) const;
  std::size_t load(std::size_t j) const;
  std::size_t link_count() const;

  bool operator==(const AssociationMatrix&) const = default;

 private:
  Matrix<std::uint8_t> links_;
};

struct NetworkMetrics {
  double sum_rate_bps = 0.0;
  double served_fraction = 0.0;
  double avg_bandwidth_consumed_hz = 0.0;  // per drone
  double energy_efficiency_bps_per_w = 0.0;
  std::size_t served_count = 0;
};

/// Three-phase greedy association: max-SINR nomination, per-drone admission
/// in descending spectral efficiency under the link-count, bandwidth and
/// SINR-floor limits, then backhaul_enforce.
AssociationMatrix greedy_associate(const ChannelRealization& channel, const DemandProfile& demands,
                                   const Constraints& constraints);

/// Phases 1-2 only (no backhaul step).
AssociationMatrix greedy_admit(const ChannelRealization& channel, const DemandProfile& demands,
                               const Constraints& constraints);

/// Parent-drone de-association loop. While the sum-rate exceeds the
/// backhaul limit, drop the minimum-rate RSU of the most-loaded drone
/// (ties to the lowest index in both choices).
AssociationMatrix backhaul_enforce(AssociationMatrix assoc, const DemandProfile& demands,
                                   const Constraints& constraints, int* iterations = nullptr);

double sum_rate(const AssociationMatrix& assoc, const DemandProfile& demands);

/// S_R / (eta * sum p_ij c_ij + links * circuit power). Zero with no links.
double energy_efficiency(const AssociationMatrix& assoc, const ChannelRealization& channel,
                         const EnergyModel& model, const DemandProfile& demands);

/// Same, from the per-drone power of a policy instead of a channel.
double energy_efficiency(const AssociationMatrix& assoc, const TransmitPolicy& policy,
                         const EnergyModel& model, const DemandProfile& demands);

NetworkMetrics compute_metrics(const AssociationMatrix& assoc, const ChannelRealization& channel,
                               const DemandProfile& demands, const EnergyModel& model);

enum class ConstraintKind {
  bandwidth,
  link_count,
  power,
  interference,
  sinr_floor,
  single_drone,
  backhaul,
};

std::string_view constraint_name(ConstraintKind kind);

struct Violation {
  ConstraintKind kind;
  int rsu = -1;    // RSU position, -1 when not link-specific
  int drone = -1;  // drone position, -1 when not drone-specific
  double value = 0.0;
  double limit = 0.0;
};

/// Every violated constraint with its indices. Empty means feasible.
std::vector<Violation> check_feasibility(const AssociationMatrix& assoc,
                                         const ChannelRealization& channel,
                                         const DemandProfile& demands, const Constraints& constraints,
                                         const TransmitPolicy& policy);

struct OracleResult {
  AssociationMatrix assoc;
  double sum_rate_bps = 0.0;
  std::uint64_t enumerated = 0;
};

/// Exhaustive maximiser of the sum-rate subject to bandwidth, link-count,
/// SINR floor, single association and backhaul. Requires U*V <= 20.
OracleResult brute_force_optimal(const ChannelRealization& channel, const DemandProfile& demands,
                                 const Constraints& constraints);

/// rsu_id,drone_id,rate_bps,bw_hz
std::string association_to_csv(const AssociationMatrix& assoc, const ChannelRealization& channel,
                               const DemandProfile& demands);

}  // namespace uavnet
