#include "uavnet/association.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "uavnet/csv.hpp"

namespace uavnet {

void Constraints::validate() const {
  if (!(bandwidth_per_drone_hz >= 0.0)) {
    throw std::invalid_argument("constraints.bandwidth_hz must be >= 0");
  }
  if (max_links_per_drone < 0) throw std::invalid_argument("constraints.max_links must be >= 0");
  if (!(max_power_w > 0.0)) throw std::invalid_argument("constraints.max_power_w must be > 0");
  if (!(sinr_min_linear >= 0.0)) throw std::invalid_argument("constraints.sinr_min must be >= 0");
  if (!(interference_threshold_w > 0.0)) {
    throw std::invalid_argument("constraints.interference_threshold_w must be > 0");
  }
  if (!(backhaul_rate_bps > 0.0)) throw std::invalid_argument("constraints.backhaul_bps must be > 0");
}

int AssociationMatrix::serving_drone(std::size_t i) const {
  for (std::size_t j = 0; j < drone_count(); ++j) {
    if (linked(i, j)) return static_cast<int>(j);
  }
  return -1;
}

std::size_t AssociationMatrix::load(std::size_t j) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < rsu_count(); ++i) n += linked(i, j) ? 1 : 0;
  return n;
}

std::size_t AssociationMatrix::link_count() const {
  const auto& d = links_.data();
  return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [](auto c) { return c != 0; }));
}

namespace {

void check_dimensions(const ChannelRealization& channel, const DemandProfile& demands) {
  if (demands.rate_bps.size() != channel.rsu_count()) {
    throw std::invalid_argument("association: demand profile and channel disagree on RSU count");
  }
  if (channel.sinr_linear.rows() != channel.rsu_count() ||
      channel.sinr_linear.cols() != channel.drone_count() ||
      channel.required_bandwidth_hz.rows() != channel.rsu_count() ||
      channel.required_bandwidth_hz.cols() != channel.drone_count()) {
    throw std::invalid_argument("association: channel matrices have inconsistent dimensions");
  }
}

}  // namespace

AssociationMatrix greedy_admit(const ChannelRealization& channel, const DemandProfile& demands,
                               const Constraints& constraints) {
  check_dimensions(channel, demands);
  const std::size_t u = channel.rsu_count();
  const std::size_t v = channel.drone_count();
  AssociationMatrix assoc(u, v);
  if (v == 0) {
    return assoc;
  }

  // Phase 1: every RSU nominates its max-SINR drone.
  std::vector<std::vector<std::size_t>> nominees(v);
  for (std::size_t i = 0; i < u; ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < v; ++j) {
      if (channel.sinr_linear(i, j) > channel.sinr_linear(i, best)) best = j;
    }
    nominees[best].push_back(i);
  }

  // Phase 2: each drone admits its nominees, best spectral efficiency first.
  for (std::size_t j = 0; j < v; ++j) {
    auto& list = nominees[j];
    std::stable_sort(list.begin(), list.end(), [&](std::size_t a, std::size_t b) {
      return spectral_efficiency(channel.sinr_linear(a, j)) >
             spectral_efficiency(channel.sinr_linear(b, j));
    });
    int admitted = 0;
    double used_hz = 0.0;
    for (std::size_t i : list) {
      if (admitted >= constraints.max_links_per_drone) break;
      // Sorted by SINR, so every later nominee is also below the floor.
      if (channel.sinr_linear(i, j) < constraints.sinr_min_linear) break;
      const double w = channel.required_bandwidth_hz(i, j);
      if (!(used_hz + w <= constraints.bandwidth_per_drone_hz)) break;
      assoc.set(i, j, true);
      ++admitted;
      used_hz += w;
    }
  }
  return assoc;
}

AssociationMatrix backhaul_enforce(AssociationMatrix assoc, const DemandProfile& demands,
                                   const Constraints& constraints, int* iterations) {
  if (demands.rate_bps.size() != assoc.rsu_count()) {
    throw std::invalid_argument("backhaul_enforce: demand profile does not match association");
  }
  int steps = 0;
  double total = sum_rate(assoc, demands);
  while (total > constraints.backhaul_rate_bps) {
    std::size_t drone = 0;
    std::size_t best_load = 0;
    for (std::size_t j = 0; j < assoc.drone_count(); ++j) {
      const std::size_t l = assoc.load(j);
      if (l > best_load) {
        best_load = l;
        drone = j;
      }
    }
    if (best_load == 0) break;
    std::size_t victim = 0;
    double min_rate = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < assoc.rsu_count(); ++i) {
      if (assoc.linked(i, drone) && demands.rate_bps[i] < min_rate) {
        min_rate = demands.rate_bps[i];
        victim = i;
      }
    }
    assoc.set(victim, drone, false);
    ++steps;
    total = sum_rate(assoc, demands);
  }
  if (iterations != nullptr) *iterations = steps;
  return assoc;
}

AssociationMatrix greedy_associate(const ChannelRealization& channel, const DemandProfile& demands,
                                   const Constraints& constraints) {
  return backhaul_enforce(greedy_admit(channel, demands, constraints), demands, constraints);
}

double sum_rate(const AssociationMatrix& assoc, const DemandProfile& demands) {
  double total = 0.0;
  for (std::size_t i = 0; i < assoc.rsu_count(); ++i) {
    for (std::size_t j = 0; j < assoc.drone_count(); ++j) {
      if (assoc.linked(i, j)) total += demands.rate_bps.at(i);
    }
  }
  return total;
}

namespace {

template <typename PowerOf>
double ee_with(const AssociationMatrix& assoc, PowerOf power_of, const EnergyModel& model,
               const DemandProfile& demands) {
  double tx_power = 0.0;
  std::size_t links = 0;
  for (std::size_t i = 0; i < assoc.rsu_count(); ++i) {
    for (std::size_t j = 0; j < assoc.drone_count(); ++j) {
      if (assoc.linked(i, j)) {
        tx_power += power_of(j);
        ++links;
      }
    }
  }
  const double denom =
      model.pa_inefficiency * tx_power + static_cast<double>(links) * model.circuit_power_per_link_w;
  if (denom <= 0.0) return 0.0;
  return sum_rate(assoc, demands) / denom;
}

}  // namespace

double energy_efficiency(const AssociationMatrix& assoc, const ChannelRealization& channel,
                         const EnergyModel& model, const DemandProfile& demands) {
  return ee_with(assoc, [&](std::size_t j) { return channel.drone_power_w.at(j); }, model, demands);
}

double energy_efficiency(const AssociationMatrix& assoc, const TransmitPolicy& policy,
                         const EnergyModel& model, const DemandProfile& demands) {
  return ee_with(assoc, [&](std::size_t j) { return policy.power_w(static_cast<int>(j) + 1); },
                 model, demands);
}

NetworkMetrics compute_metrics(const AssociationMatrix& assoc, const ChannelRealization& channel,
                               const DemandProfile& demands, const EnergyModel& model) {
  NetworkMetrics m;
  m.sum_rate_bps = sum_rate(assoc, demands);
  m.served_count = assoc.link_count();
  m.served_fraction = assoc.rsu_count() == 0
                          ? 0.0
                          : static_cast<double>(m.served_count) / static_cast<double>(assoc.rsu_count());
  double bw = 0.0;
  for (std::size_t i = 0; i < assoc.rsu_count(); ++i) {
    for (std::size_t j = 0; j < assoc.drone_count(); ++j) {
      if (assoc.linked(i, j)) bw += channel.required_bandwidth_hz(i, j);
    }
  }
  m.avg_bandwidth_consumed_hz =
      assoc.drone_count() == 0 ? 0.0 : bw / static_cast<double>(assoc.drone_count());
  m.energy_efficiency_bps_per_w = energy_efficiency(assoc, channel, model, demands);
  return m;
}

std::string_view constraint_name(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::bandwidth: return "bandwidth";
    case ConstraintKind::link_count: return "link-count";
    case ConstraintKind::power: return "power";
    case ConstraintKind::interference: return "interference";
    case ConstraintKind::sinr_floor: return "sinr-floor";
    case ConstraintKind::single_drone: return "single-association";
    case ConstraintKind::backhaul: return "backhaul";
  }
  return "unknown";
}

std::vector<Violation> check_feasibility(const AssociationMatrix& assoc,
                                         const ChannelRealization& channel,
                                         const DemandProfile& demands, const Constraints& constraints,
                                         const TransmitPolicy& policy) {
  check_dimensions(channel, demands);
  if (assoc.rsu_count() != channel.rsu_count() || assoc.drone_count() != channel.drone_count()) {
    throw std::invalid_argument("check_feasibility: association and channel dimensions differ");
  }
  std::vector<Violation> out;
  const std::size_t u = assoc.rsu_count();
  const std::size_t v = assoc.drone_count();
  // Admission accumulates in a different order than this sum.
  constexpr double kRel = 1e-9;

  for (std::size_t j = 0; j < v; ++j) {
    double bw = 0.0;
    std::size_t links = 0;
    for (std::size_t i = 0; i < u; ++i) {
      if (assoc.linked(i, j)) {
        bw += channel.required_bandwidth_hz(i, j);
        ++links;
      }
    }
    if (bw > constraints.bandwidth_per_drone_hz * (1.0 + kRel)) {
      out.push_back({ConstraintKind::bandwidth, -1, static_cast<int>(j), bw,
                     constraints.bandwidth_per_drone_hz});
    }
    if (links > static_cast<std::size_t>(std::max(constraints.max_links_per_drone, 0))) {
      out.push_back({ConstraintKind::link_count, -1, static_cast<int>(j), static_cast<double>(links),
                     static_cast<double>(constraints.max_links_per_drone)});
    }
  }

  for (std::size_t i = 0; i < u; ++i) {
    std::size_t row = 0;
    for (std::size_t j = 0; j < v; ++j) {
      if (!assoc.linked(i, j)) continue;
      ++row;
      const double p = policy.power_w(channel.drone_ids.at(j));
      const auto ii = static_cast<int>(i);
      const auto jj = static_cast<int>(j);
      if (p > constraints.max_power_w) {
        out.push_back({ConstraintKind::power, ii, jj, p, constraints.max_power_w});
      }
      const double rx = channel.link_gain(i, j) * p;
      if (rx > constraints.interference_threshold_w) {
        out.push_back({ConstraintKind::interference, ii, jj, rx, constraints.interference_threshold_w});
      }
      if (channel.sinr_linear(i, j) < constraints.sinr_min_linear) {
        out.push_back({ConstraintKind::sinr_floor, ii, jj, channel.sinr_linear(i, j),
                       constraints.sinr_min_linear});
      }
    }
    if (row > 1) {
      out.push_back({ConstraintKind::single_drone, static_cast<int>(i), -1, static_cast<double>(row), 1.0});
    }
  }

  const double sr = sum_rate(assoc, demands);
  if (sr > constraints.backhaul_rate_bps) {
    out.push_back({ConstraintKind::backhaul, -1, -1, sr, constraints.backhaul_rate_bps});
  }
  return out;
}

namespace {

struct OracleSearch {
  const ChannelRealization& channel;
  const DemandProfile& demands;
  const Constraints& constraints;
  std::vector<int> choice;
  std::vector<int> load;
  std::vector<double> used_hz;
  double rate = 0.0;
  double best_rate = -1.0;
  std::vector<int> best_choice;
  std::uint64_t leaves = 0;

  void run(std::size_t i) {
    if (i == choice.size()) {
      ++leaves;
      if (rate > best_rate) {
        best_rate = rate;
        best_choice = choice;
      }
      return;
    }
    choice[i] = -1;
    run(i + 1);
    const double r = demands.rate_bps[i];
    if (rate + r > constraints.backhaul_rate_bps) return;
    for (std::size_t j = 0; j < channel.drone_count(); ++j) {
      const double w = channel.required_bandwidth_hz(i, j);
      if (load[j] >= constraints.max_links_per_drone) continue;
      if (channel.sinr_linear(i, j) < constraints.sinr_min_linear) continue;
      if (!(used_hz[j] + w <= constraints.bandwidth_per_drone_hz)) continue;
      choice[i] = static_cast<int>(j);
      ++load[j];
      const double saved_hz = used_hz[j];
      used_hz[j] += w;
      rate += r;
      run(i + 1);
      rate -= r;
      used_hz[j] = saved_hz;
      --load[j];
    }
    choice[i] = -1;
  }
};

}  // namespace

OracleResult brute_force_optimal(const ChannelRealization& channel, const DemandProfile& demands,
                                 const Constraints& constraints) {
  check_dimensions(channel, demands);
  const std::size_t u = channel.rsu_count();
  const std::size_t v = channel.drone_count();
  if (u * v > 20) {
    throw std::invalid_argument("brute_force_optimal: instance too large (U*V = " +
                                std::to_string(u * v) + " > 20)");
  }
  OracleSearch s{channel, demands, constraints, std::vector<int>(u, -1), std::vector<int>(v, 0),
                 std::vector<double>(v, 0.0), 0.0, -1.0, {}, 0};
  s.run(0);
  OracleResult res;
  res.assoc = AssociationMatrix(u, v);
  for (std::size_t i = 0; i < u; ++i) {
    if (s.best_choice[i] >= 0) res.assoc.set(i, static_cast<std::size_t>(s.best_choice[i]), true);
  }
  res.sum_rate_bps = sum_rate(res.assoc, demands);
  res.enumerated = s.leaves;
  return res;
}

std::string association_to_csv(const AssociationMatrix& assoc, const ChannelRealization& channel,
                               const DemandProfile& demands) {
  std::ostringstream os;
  os << "rsu_id,drone_id,rate_bps,bw_hz\n";
  for (std::size_t i = 0; i < assoc.rsu_count(); ++i) {
    for (std::size_t j = 0; j < assoc.drone_count(); ++j) {
      if (!assoc.linked(i, j)) continue;
      os << channel.rsu_ids.at(i) << ',' << channel.drone_ids.at(j) << ','
         << format_number(demands.rate_bps.at(i)) << ','
         << format_number(channel.required_bandwidth_hz(i, j)) << '\n';
    }
  }
  return os.str();
}

}  // namespace uavnet
