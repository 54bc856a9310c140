#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "uavnet/geometry.hpp"

namespace uavnet {

enum class FadingMode { deterministic_zero, sampled };

/// Air-to-ground propagation environment. Defaults are the urban
/// operating point used throughout the simulator.
struct Environment {
  double alpha = 9.61;
  double beta_per_deg = 0.16;
  double excess_los_db = 1.0;
  double excess_nlos_db = 20.0;
  double carrier_wavelength_m = 0.15;
  double noise_power_dbw = -125.0;
  double nakagami_shape = 4.0;
  double fading_floor_db = -10.0;
  FadingMode fading_mode = FadingMode::deterministic_zero;

  void validate() const;
};

/// Fixed per-drone transmit power. This is the hook for a power-allocation
/// policy; every drone currently transmits `per_drone_power_w`.
struct TransmitPolicy {
  double per_drone_power_w = 1.5;
  double max_power_w = 1.5;

  double power_w(int /*drone_id*/) const { return per_drone_power_w; }
  void validate() const;
};

/// Row-major U x V matrix.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<T> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  const std::vector<T>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Requested rate per RSU, indexed by RSU position (0-based).
struct DemandProfile {
  std::vector<double> rate_bps;

  static DemandProfile draw(std::size_t rsu_count, std::span<const double> rate_vector_bps,
                            std::uint64_t seed);
};

/// Every per-link quantity for all U x V RSU-drone pairs.
struct ChannelRealization {
  std::vector<int> rsu_ids;
  std::vector<int> drone_ids;
  std::vector<double> drone_power_w;
  Matrix<LinkGeometry> geometry;
  Matrix<double> los_probability;
  Matrix<double> fading_db;
  Matrix<double> path_loss_db;
  Matrix<double> link_gain;
  Matrix<double> received_power_w;
  Matrix<double> interference_w;
  Matrix<double> sinr_linear;
  Matrix<double> required_bandwidth_hz;

  std::size_t rsu_count() const { return rsu_ids.size(); }
  std::size_t drone_count() const { return drone_ids.size(); }

  /// Allocates every matrix for the given ids, zero-filled.
  static ChannelRealization empty(std::vector<int> rsu_ids, std::vector<int> drone_ids);

  bool operator==(const ChannelRealization&) const = default;
};

/// 1 / (1 + alpha * exp(-beta (theta - alpha))), theta in degrees, 0 < theta <= 90.
double los_probability(double theta_deg, const Environment& env);

/// 20 log10(4 pi d / lambda).
double free_space_path_loss_db(double distance_m, double wavelength_m);

/// Fading term in dB: LoS/NLoS-weighted Nakagami(m, 1) envelopes, each in
/// 20 log10 form, clamped below at the environment floor. Zero in
/// deterministic mode.
double sample_fading_db(double rho_los, const Environment& env, std::uint64_t seed);

/// F0 + rho_L eps_L + rho_N eps_N - psi.
double path_loss_db(const LinkGeometry& geom, const Environment& env, double psi_db);

/// log2(1 + SINR).
double spectral_efficiency(double sinr_linear);

/// rate / log2(1 + SINR); +inf when the link carries no information.
double required_bandwidth_hz(double rate_bps, double sinr_linear);

double db_to_linear(double db);
double linear_to_db(double linear);

/// Full channel for every pair, interference from all other drones
/// transmitting at their policy power. Fading for link (i, j) is seeded
/// from (seed, rsu id, drone id) so the result does not depend on
/// evaluation order. OpenMP-parallel over RSUs.
ChannelRealization compute_channel(std::span<const RsuSite> rsus, std::span<const DroneSite> drones,
                                   const Environment& env, const TransmitPolicy& policy,
                                   const DemandProfile& demands, std::uint64_t seed);

/// Single-threaded reference of compute_channel; results are bit-identical.
ChannelRealization compute_channel_serial(std::span<const RsuSite> rsus,
                                          std::span<const DroneSite> drones,
                                          const Environment& env, const TransmitPolicy& policy,
                                          const DemandProfile& demands, std::uint64_t seed);

/// rsu_id,drone_id,s_m,d_m,theta_deg,plos,pathloss_db,sinr_db,bw_req_hz
std::string channel_to_csv(const ChannelRealization& ch);

}  // namespace uavnet
