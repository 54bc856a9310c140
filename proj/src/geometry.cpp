#include "uavnet/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "uavnet/csv.hpp"
#include "uavnet/rng.hpp"

namespace uavnet {

namespace {

double dist2(const Point2& a, const Point2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

Point2 as_point(const RsuSite& r) { return {r.x_m, r.y_m}; }

bool keep_point(std::span<const Point2> points, std::size_t k, double r2) {
  for (std::size_t m = 0; m < points.size(); ++m) {
    if (m != k && dist2(points[k], points[m]) < r2) {
      return false;
    }
  }
  return true;
}

}  // namespace

namespace detail {

std::vector<Point2> sample_poisson_parents(const Region& region, double density_per_m2,
                                           std::uint64_t seed) {
  Rng rng(seed, Stream::points);
  const std::uint64_t n = rng.poisson(density_per_m2 * region.area_m2());
  std::vector<Point2> pts;
  pts.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    const double x = rng.uniform(0.0, region.width_m);
    const double y = rng.uniform(0.0, region.height_m);
    pts.push_back({x, y});
  }
  return pts;
}

std::vector<char> hardcore_keep_mask_serial(std::span<const Point2> points, double min_distance_m) {
  const double r2 = min_distance_m * min_distance_m;
  std::vector<char> keep(points.size(), 1);
  for (std::size_t k = 0; k < points.size(); ++k) {
    keep[k] = keep_point(points, k, r2) ? 1 : 0;
  }
  return keep;
}

std::vector<char> hardcore_keep_mask(std::span<const Point2> points, double min_distance_m) {
  const double r2 = min_distance_m * min_distance_m;
  const auto n = static_cast<std::int64_t>(points.size());
  std::vector<char> keep(points.size(), 1);
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < n; ++k) {
    keep[static_cast<std::size_t>(k)] = keep_point(points, static_cast<std::size_t>(k), r2) ? 1 : 0;
  }
  return keep;
}

std::vector<int> nearest_centroid_serial(std::span<const Point2> points,
                                         std::span<const Point2> centroids) {
  std::vector<int> out(points.size(), 0);
  for (std::size_t k = 0; k < points.size(); ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t l = 0; l < centroids.size(); ++l) {
      const double d = dist2(points[k], centroids[l]);
      if (d < best) {
        best = d;
        out[k] = static_cast<int>(l);
      }
    }
  }
  return out;
}

std::vector<int> nearest_centroid(std::span<const Point2> points, std::span<const Point2> centroids) {
  std::vector<int> out(points.size(), 0);
  const auto n = static_cast<std::int64_t>(points.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < n; ++k) {
    double best = std::numeric_limits<double>::infinity();
    int arg = 0;
    for (std::size_t l = 0; l < centroids.size(); ++l) {
      const double d = dist2(points[static_cast<std::size_t>(k)], centroids[l]);
      if (d < best) {
        best = d;
        arg = static_cast<int>(l);
      }
    }
    out[static_cast<std::size_t>(k)] = arg;
  }
  return out;
}

}  // namespace detail

std::vector<RsuSite> sample_matern_type1(const Region& region, const PointProcessParams& params,
                                         std::uint64_t seed) {
  if (!(region.width_m > 0.0) || !(region.height_m > 0.0)) {
    throw std::invalid_argument("region dimensions must be positive");
  }
  if (!(params.density_per_m2 >= 0.0) || !(params.min_distance_m >= 0.0)) {
    throw std::invalid_argument("point process parameters must be non-negative");
  }
  const auto parents = detail::sample_poisson_parents(region, params.density_per_m2, seed);
  const auto keep = detail::hardcore_keep_mask(parents, params.min_distance_m);

  std::vector<Point2> kept;
  for (std::size_t k = 0; k < parents.size(); ++k) {
    if (keep[k]) {
      kept.push_back(parents[k]);
    }
  }
  std::sort(kept.begin(), kept.end(), [](const Point2& a, const Point2& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });
  std::vector<RsuSite> out;
  out.reserve(kept.size());
  for (std::size_t k = 0; k < kept.size(); ++k) {
    out.push_back({static_cast<int>(k) + 1, kept[k].x, kept[k].y});
  }
  return out;
}

namespace {

double objective_for(std::span<const Point2> pts, std::span<const int> assign,
                     std::span<const Point2> centroids) {
  double total = 0.0;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    total += dist2(pts[k], centroids[static_cast<std::size_t>(assign[k])]);
  }
  return total;
}

// Reseeds every empty cluster at the point farthest from its own centroid
// and moves that point into the empty cluster.
void fill_empty_clusters(std::span<const Point2> pts, std::vector<int>& assign,
                         std::vector<Point2>& centroids) {
  const std::size_t k = centroids.size();
  std::vector<int> counts(k, 0);
  for (int a : assign) {
    ++counts[static_cast<std::size_t>(a)];
  }
  for (std::size_t l = 0; l < k; ++l) {
    if (counts[l] != 0) {
      continue;
    }
    double worst = -1.0;
    std::size_t arg = 0;
    for (std::size_t p = 0; p < pts.size(); ++p) {
      const auto from = static_cast<std::size_t>(assign[p]);
      if (counts[from] <= 1) {
        continue;  // never empty another cluster
      }
      const double d = dist2(pts[p], centroids[from]);
      if (d > worst) {
        worst = d;
        arg = p;
      }
    }
    if (worst < 0.0) {
      continue;
    }
    --counts[static_cast<std::size_t>(assign[arg])];
    assign[arg] = static_cast<int>(l);
    counts[l] = 1;
    centroids[l] = pts[arg];
  }
}

std::vector<Point2> cluster_means(std::span<const Point2> pts, std::span<const int> assign,
                                  std::span<const Point2> previous) {
  std::vector<Point2> sums(previous.size());
  std::vector<int> counts(previous.size(), 0);
  for (std::size_t p = 0; p < pts.size(); ++p) {
    const auto l = static_cast<std::size_t>(assign[p]);
    sums[l].x += pts[p].x;
    sums[l].y += pts[p].y;
    ++counts[l];
  }
  std::vector<Point2> out(previous.begin(), previous.end());
  for (std::size_t l = 0; l < out.size(); ++l) {
    if (counts[l] > 0) {
      out[l] = {sums[l].x / counts[l], sums[l].y / counts[l]};
    }
  }
  return out;
}

}  // namespace

namespace detail {

ClusteringResult lloyd(std::span<const Point2> pts, std::vector<Point2> centroids,
                       const KMeansOptions& options) {
  ClusteringResult res;
  double previous = std::numeric_limits<double>::infinity();
  std::vector<int> assign;
  for (int it = 0; it < options.max_iters; ++it) {
    assign = nearest_centroid(pts, centroids);
    fill_empty_clusters(pts, assign, centroids);
    const double obj = objective_for(pts, assign, centroids);
    res.objective_trace.push_back(obj);
    centroids = cluster_means(pts, assign, centroids);
    res.iterations = it + 1;
    if (previous - obj < options.tol_m2) {
      break;
    }
    previous = obj;
  }
  assign = nearest_centroid(pts, centroids);
  res.final_objective_m2 = objective_for(pts, assign, centroids);
  res.objective_trace.push_back(res.final_objective_m2);
  res.centroids = std::move(centroids);
  res.assignment.resize(assign.size());
  std::transform(assign.begin(), assign.end(), res.assignment.begin(), [](int a) { return a + 1; });
  return res;
}

}  // namespace detail

std::pair<std::vector<DroneSite>, ClusteringResult> kmeans_place_drones(
    std::span<const RsuSite> rsus, int k, double altitude_m, std::uint64_t seed,
    const KMeansOptions& options) {
  if (rsus.empty()) {
    throw std::invalid_argument("kmeans_place_drones: no RSUs");
  }
  if (k < 1 || static_cast<std::size_t>(k) >= rsus.size()) {
    throw std::invalid_argument("kmeans_place_drones: need 1 <= K < U (K=" + std::to_string(k) +
                                ", U=" + std::to_string(rsus.size()) + ")");
  }
  if (!(altitude_m > 0.0)) {
    throw std::invalid_argument("kmeans_place_drones: altitude must be positive");
  }
  std::vector<Point2> pts;
  pts.reserve(rsus.size());
  for (const auto& r : rsus) {
    pts.push_back(as_point(r));
  }

  // K distinct RSUs via a partial Fisher-Yates shuffle.
  Rng rng(seed, Stream::kmeans);
  std::vector<std::size_t> order(pts.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::vector<Point2> init;
  for (std::size_t l = 0; l < static_cast<std::size_t>(k); ++l) {
    const std::size_t pick = l + rng.uniform_index(order.size() - l);
    std::swap(order[l], order[pick]);
    init.push_back(pts[order[l]]);
  }

  auto res = detail::lloyd(pts, std::move(init), options);
  std::vector<DroneSite> drones;
  drones.reserve(res.centroids.size());
  for (std::size_t l = 0; l < res.centroids.size(); ++l) {
    drones.push_back({static_cast<int>(l) + 1, res.centroids[l].x, res.centroids[l].y, altitude_m});
  }
  return {std::move(drones), std::move(res)};
}

double clustering_objective(std::span<const RsuSite> rsus, const ClusteringResult& result) {
  double total = 0.0;
  for (std::size_t k = 0; k < rsus.size(); ++k) {
    const auto& c = result.centroids.at(static_cast<std::size_t>(result.assignment.at(k) - 1));
    total += dist2(as_point(rsus[k]), c);
  }
  return total;
}

LinkGeometry link_geometry(const RsuSite& rsu, const DroneSite& drone) {
  LinkGeometry g;
  g.horizontal_m = std::hypot(rsu.x_m - drone.x_m, rsu.y_m - drone.y_m);
  g.slant_m = std::sqrt(drone.altitude_m * drone.altitude_m + g.horizontal_m * g.horizontal_m);
  g.elevation_deg = std::atan2(drone.altitude_m, g.horizontal_m) * 180.0 / std::numbers::pi;
  return g;
}

std::string rsus_to_csv(std::span<const RsuSite> rsus) {
  std::ostringstream os;
  os << "id,x_m,y_m\n";
  for (const auto& r : rsus) {
    os << r.id << ',' << format_number(r.x_m) << ',' << format_number(r.y_m) << '\n';
  }
  return os.str();
}

std::string drones_to_csv(std::span<const DroneSite> drones) {
  std::ostringstream os;
  os << "id,x_m,y_m,altitude_m\n";
  for (const auto& d : drones) {
    os << d.id << ',' << format_number(d.x_m) << ',' << format_number(d.y_m) << ','
       << format_number(d.altitude_m) << '\n';
  }
  return os.str();
}

}  // namespace uavnet
