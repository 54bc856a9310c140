#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace uavnet {

/// Axis-aligned rectangle anchored at the origin.
struct Region {
  double width_m = 5000.0;
  double height_m = 5000.0;

  double area_m2() const { return width_m * height_m; }
};

/// Ground node. Altitude is zero by construction.
struct RsuSite {
  int id = 0;  // 1-based, contiguous
  double x_m = 0.0;
  double y_m = 0.0;
};

struct DroneSite {
  int id = 0;  // 1-based, contiguous
  double x_m = 0.0;
  double y_m = 0.0;
  double altitude_m = 0.0;
};

struct PointProcessParams {
  double density_per_m2 = 0.0;  // parent Poisson intensity
  double min_distance_m = 0.0;  // hard-core radius
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct ClusteringResult {
  std::vector<Point2> centroids;
  std::vector<int> assignment;  // assignment[k] = 1-based cluster of rsus[k]
  double final_objective_m2 = 0.0;
  std::vector<double> objective_trace;  // objective after each assignment step
  int iterations = 0;
};

struct KMeansOptions {
  int max_iters = 100;
  double tol_m2 = 1e-6;
};

struct LinkGeometry {
  double horizontal_m = 0.0;
  double slant_m = 0.0;
  double elevation_deg = 0.0;

  bool operator==(const LinkGeometry&) const = default;
};

/// Matern type-I hard-core sample: Poisson parents, then every point with a
/// neighbour closer than min_distance is removed together with that
/// neighbour. Survivors are numbered by ascending (x, y).
std::vector<RsuSite> sample_matern_type1(const Region& region, const PointProcessParams& params,
                                         std::uint64_t seed);

namespace detail {

/// Parent points of the process above, before thinning.
std::vector<Point2> sample_poisson_parents(const Region& region, double density_per_m2,
                                           std::uint64_t seed);

/// Type-I thinning kernel. keep[k] is false when point k has a neighbour
/// strictly closer than min_distance.
std::vector<char> hardcore_keep_mask(std::span<const Point2> points, double min_distance_m);
std::vector<char> hardcore_keep_mask_serial(std::span<const Point2> points, double min_distance_m);

/// Nearest-centroid index for every point (ties to the lowest index).
std::vector<int> nearest_centroid(std::span<const Point2> points, std::span<const Point2> centroids);
std::vector<int> nearest_centroid_serial(std::span<const Point2> points,
                                         std::span<const Point2> centroids);

}  // namespace detail

/// Lloyd's K-means over the RSU positions; drones are placed at the final
/// centroids. Initial centroids are K distinct RSUs drawn uniformly from the
/// seed. An empty cluster is reseeded at the RSU farthest from its assigned
/// centroid. Throws std::invalid_argument unless 1 <= K < rsus.size().
std::pair<std::vector<DroneSite>, ClusteringResult> kmeans_place_drones(
    std::span<const RsuSite> rsus, int k, double altitude_m, std::uint64_t seed,
    const KMeansOptions& options = {});

/// Sum of squared distances from each RSU to its assigned centroid.
double clustering_objective(std::span<const RsuSite> rsus, const ClusteringResult& result);

LinkGeometry link_geometry(const RsuSite& rsu, const DroneSite& drone);

std::string rsus_to_csv(std::span<const RsuSite> rsus);
std::string drones_to_csv(std::span<const DroneSite> drones);

}  // namespace uavnet

namespace uavnet::detail {

/// Lloyd iterations from explicit initial centroids.
ClusteringResult lloyd(std::span<const Point2> points, std::vector<Point2> centroids,
                       const KMeansOptions& options);

}  // namespace uavnet::detail
