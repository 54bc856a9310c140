#include "uavnet/channel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "uavnet/csv.hpp"
#include "uavnet/rng.hpp"

namespace uavnet {

void Environment::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("channel.alpha must be > 0");
  if (!(beta_per_deg > 0.0)) throw std::invalid_argument("channel.beta_per_deg must be > 0");
  if (!(carrier_wavelength_m > 0.0)) {
    throw std::invalid_argument("channel.carrier_wavelength_m must be > 0");
  }
  if (!(nakagami_shape >= 0.5)) throw std::invalid_argument("channel.nakagami_shape must be >= 0.5");
}

void TransmitPolicy::validate() const {
  if (!(per_drone_power_w > 0.0) || !(per_drone_power_w <= max_power_w)) {
    throw std::invalid_argument("power: need 0 < per_drone_w <= max_w");
  }
}

DemandProfile DemandProfile::draw(std::size_t rsu_count, std::span<const double> rate_vector_bps,
                                  std::uint64_t seed) {
  if (rate_vector_bps.empty()) {
    throw std::invalid_argument("demand rate vector is empty");
  }
  Rng rng(seed, Stream::demand);
  DemandProfile d;
  d.rate_bps.reserve(rsu_count);
  for (std::size_t i = 0; i < rsu_count; ++i) {
    d.rate_bps.push_back(rate_vector_bps[rng.uniform_index(rate_vector_bps.size())]);
  }
  return d;
}

ChannelRealization ChannelRealization::empty(std::vector<int> rsu_ids, std::vector<int> drone_ids) {
  ChannelRealization ch;
  const std::size_t u = rsu_ids.size();
  const std::size_t v = drone_ids.size();
  ch.rsu_ids = std::move(rsu_ids);
  ch.drone_ids = std::move(drone_ids);
  ch.drone_power_w.assign(v, 0.0);
  ch.geometry = Matrix<LinkGeometry>(u, v);
  ch.los_probability = Matrix<double>(u, v);
  ch.fading_db = Matrix<double>(u, v);
  ch.path_loss_db = Matrix<double>(u, v);
  ch.link_gain = Matrix<double>(u, v);
  ch.received_power_w = Matrix<double>(u, v);
  ch.interference_w = Matrix<double>(u, v);
  ch.sinr_linear = Matrix<double>(u, v);
  ch.required_bandwidth_hz = Matrix<double>(u, v);
  return ch;
}

double los_probability(double theta_deg, const Environment& env) {
  if (!(theta_deg > 0.0) || !(theta_deg <= 90.0)) {
    throw std::invalid_argument("los_probability: elevation must be in (0, 90] degrees");
  }
  return 1.0 / (1.0 + env.alpha * std::exp(-env.beta_per_deg * (theta_deg - env.alpha)));
}

double free_space_path_loss_db(double distance_m, double wavelength_m) {
  if (!(distance_m > 0.0) || !(wavelength_m > 0.0)) {
    throw std::invalid_argument("free_space_path_loss_db: distance and wavelength must be > 0");
  }
  return 20.0 * std::log10(4.0 * std::numbers::pi * distance_m / wavelength_m);
}

double sample_fading_db(double rho_los, const Environment& env, std::uint64_t seed) {
  if (env.fading_mode == FadingMode::deterministic_zero) {
    return 0.0;
  }
  Rng rng(seed);
  const double m = env.nakagami_shape;
  // Nakagami(m, omega=1) envelope: sqrt of Gamma(m, 1/m).
  const double g0 = std::sqrt(rng.gamma(m) / m);
  const double g1 = std::sqrt(rng.gamma(m) / m);
  const double xi0 = 20.0 * std::log10(g0);
  const double xi1 = 20.0 * std::log10(g1);
  const double psi = rho_los * xi0 + (1.0 - rho_los) * xi1;
  return psi < env.fading_floor_db ? env.fading_floor_db : psi;
}

double path_loss_db(const LinkGeometry& geom, const Environment& env, double psi_db) {
  const double rho_los = los_probability(geom.elevation_deg, env);
  const double rho_nlos = 1.0 - rho_los;
  return free_space_path_loss_db(geom.slant_m, env.carrier_wavelength_m) +
         rho_los * env.excess_los_db + rho_nlos * env.excess_nlos_db - psi_db;
}

double spectral_efficiency(double sinr_linear) {
  if (!(sinr_linear >= 0.0)) {
    throw std::invalid_argument("spectral_efficiency: SINR must be >= 0");
  }
  return std::log2(1.0 + sinr_linear);
}

double required_bandwidth_hz(double rate_bps, double sinr_linear) {
  const double se = spectral_efficiency(sinr_linear);
  if (rate_bps <= 0.0) {
    return 0.0;
  }
  if (se <= 0.0) {
    return std::numeric_limits<double>::infinity();
  }
  return rate_bps / se;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

namespace {

void check_inputs(std::span<const RsuSite> rsus, std::span<const DroneSite> drones,
                  const DemandProfile& demands) {
  if (demands.rate_bps.size() != rsus.size()) {
    throw std::invalid_argument("compute_channel: demand profile does not match RSU count");
  }
  for (const auto& d : drones) {
    if (!(d.altitude_m > 0.0)) {
      throw std::invalid_argument("compute_channel: drone altitude must be positive");
    }
  }
}

ChannelRealization prepare(std::span<const RsuSite> rsus, std::span<const DroneSite> drones,
                           const TransmitPolicy& policy) {
  std::vector<int> rsu_ids;
  std::vector<int> drone_ids;
  for (const auto& r : rsus) rsu_ids.push_back(r.id);
  for (const auto& d : drones) drone_ids.push_back(d.id);
  auto ch = ChannelRealization::empty(std::move(rsu_ids), std::move(drone_ids));
  for (std::size_t j = 0; j < drones.size(); ++j) {
    ch.drone_power_w[j] = policy.power_w(drones[j].id);
  }
  return ch;
}

// Fills row i. Each row only reads shared inputs and writes its own slots.
void fill_row(ChannelRealization& ch, std::size_t i, std::span<const RsuSite> rsus,
              std::span<const DroneSite> drones, const Environment& env, double rate_bps,
              double noise_w, std::uint64_t seed) {
  const std::size_t v = drones.size();
  for (std::size_t j = 0; j < v; ++j) {
    const auto g = link_geometry(rsus[i], drones[j]);
    const double rho = los_probability(g.elevation_deg, env);
    const std::uint64_t link_seed =
        derive_seed(seed, {static_cast<std::uint64_t>(Stream::fading),
                           static_cast<std::uint64_t>(rsus[i].id),
                           static_cast<std::uint64_t>(drones[j].id)});
    const double psi = sample_fading_db(rho, env, link_seed);
    const double pl = path_loss_db(g, env, psi);
    const double gain = db_to_linear(-pl);
    ch.geometry(i, j) = g;
    ch.los_probability(i, j) = rho;
    ch.fading_db(i, j) = psi;
    ch.path_loss_db(i, j) = pl;
    ch.link_gain(i, j) = gain;
    ch.received_power_w(i, j) = ch.drone_power_w[j] * gain;
  }
  for (std::size_t j = 0; j < v; ++j) {
    double interference = 0.0;
    for (std::size_t k = 0; k < v; ++k) {
      if (k != j) {
        interference += ch.received_power_w(i, k);
      }
    }
    const double sinr = ch.received_power_w(i, j) / (noise_w + interference);
    ch.interference_w(i, j) = interference;
    ch.sinr_linear(i, j) = sinr;
    ch.required_bandwidth_hz(i, j) = required_bandwidth_hz(rate_bps, sinr);
  }
}

}  // namespace

ChannelRealization compute_channel(std::span<const RsuSite> rsus, std::span<const DroneSite> drones,
                                   const Environment& env, const TransmitPolicy& policy,
                                   const DemandProfile& demands, std::uint64_t seed) {
  check_inputs(rsus, drones, demands);
  auto ch = prepare(rsus, drones, policy);
  const double noise_w = db_to_linear(env.noise_power_dbw);
  const auto u = static_cast<std::int64_t>(rsus.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < u; ++i) {
    const auto row = static_cast<std::size_t>(i);
    fill_row(ch, row, rsus, drones, env, demands.rate_bps[row], noise_w, seed);
  }
  return ch;
}

ChannelRealization compute_channel_serial(std::span<const RsuSite> rsus,
                                          std::span<const DroneSite> drones,
                                          const Environment& env, const TransmitPolicy& policy,
                                          const DemandProfile& demands, std::uint64_t seed) {
  check_inputs(rsus, drones, demands);
  auto ch = prepare(rsus, drones, policy);
  const double noise_w = db_to_linear(env.noise_power_dbw);
  for (std::size_t i = 0; i < rsus.size(); ++i) {
    fill_row(ch, i, rsus, drones, env, demands.rate_bps[i], noise_w, seed);
  }
  return ch;
}

std::string channel_to_csv(const ChannelRealization& ch) {
  std::ostringstream os;
  os << "rsu_id,drone_id,s_m,d_m,theta_deg,plos,pathloss_db,sinr_db,bw_req_hz\n";
  for (std::size_t i = 0; i < ch.rsu_count(); ++i) {
    for (std::size_t j = 0; j < ch.drone_count(); ++j) {
      const auto& g = ch.geometry(i, j);
      const double sinr = ch.sinr_linear(i, j);
      os << ch.rsu_ids[i] << ',' << ch.drone_ids[j] << ',' << format_number(g.horizontal_m) << ','
         << format_number(g.slant_m) << ',' << format_number(g.elevation_deg) << ','
         << format_number(ch.los_probability(i, j)) << ',' << format_number(ch.path_loss_db(i, j))
         << ',' << format_number(sinr > 0.0 ? linear_to_db(sinr) : -std::numeric_limits<double>::infinity())
         << ',' << format_number(ch.required_bandwidth_hz(i, j)) << '\n';
    }
  }
  return os.str();
}

}  // namespace uavnet
