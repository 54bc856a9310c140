#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <numbers>
#include <vector>

#include "uavnet/geometry.hpp"
#include "uavnet/rng.hpp"

using namespace uavnet;

namespace {

double min_pairwise(const std::vector<RsuSite>& s) {
  double best = INFINITY;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      best = std::min(best, std::hypot(s[a].x_m - s[b].x_m, s[a].y_m - s[b].y_m));
  return best;
}

// Area of the disk of radius r at (x, y) clipped to [0, L]^2.
double clipped_disk_area(double x, double y, double r, double L, int steps = 200) {
  double area = 0.0;
  const double du = 2.0 * r / steps;
  for (int k = 0; k < steps; ++k) {
    const double u = -r + (k + 0.5) * du;
    if (x + u < 0.0 || x + u > L) continue;
    const double h = std::sqrt(r * r - u * u);
    area += (std::min(L, y + h) - std::max(0.0, y - h)) * du;
  }
  return area;
}

// Expected type-I survivor count on a square, edge effects included:
// delta * integral over the square of exp(-delta * |disk ∩ square|).
double expected_matern_count(double delta, double r, double L) {
  const int n = 400;
  const double h = L / n;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = (i + 0.5) * h;
    for (int j = 0; j < n; ++j) {
      const double y = (j + 0.5) * h;
      const bool interior = x >= r && x <= L - r && y >= r && y <= L - r;
      const double a = interior ? std::numbers::pi * r * r : clipped_disk_area(x, y, r, L);
      total += std::exp(-delta * a) * h * h;
    }
  }
  return delta * total;
}

struct MeanSe {
  double mean;
  double se;
};

MeanSe mean_se(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  const double m = s / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  const double var = ss / static_cast<double>(v.size() - 1);
  return {m, std::sqrt(var / static_cast<double>(v.size()))};
}

}  // namespace

TEST_CASE("zero density gives no RSUs") {
  CHECK(sample_matern_type1(Region{}, {0.0, 200.0}, 1).empty());
}

TEST_CASE("matern output respects the hard-core distance and numbering") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto s = sample_matern_type1(Region{}, {5e-6, 200.0}, seed);
    REQUIRE(!s.empty());
    CHECK(min_pairwise(s) >= 200.0);
    for (std::size_t k = 0; k < s.size(); ++k) {
      CHECK(s[k].id == static_cast<int>(k) + 1);
      CHECK(s[k].x_m >= 0.0);
      CHECK(s[k].x_m <= 5000.0);
      CHECK(s[k].y_m >= 0.0);
      CHECK(s[k].y_m <= 5000.0);
      if (k > 0) {
        const bool ordered = s[k - 1].x_m < s[k].x_m ||
                             (s[k - 1].x_m == s[k].x_m && s[k - 1].y_m <= s[k].y_m);
        CHECK(ordered);
      }
    }
  }
}

TEST_CASE("matern sampling is deterministic per seed") {
  const auto a = sample_matern_type1(Region{}, {5e-6, 200.0}, 99);
  const auto b = sample_matern_type1(Region{}, {5e-6, 200.0}, 99);
  const auto c = sample_matern_type1(Region{}, {5e-6, 200.0}, 100);
  CHECK(rsus_to_csv(a) == rsus_to_csv(b));
  CHECK(rsus_to_csv(a) != rsus_to_csv(c));
}

TEST_CASE("tiny region with a huge exclusion radius keeps nothing") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto s = sample_matern_type1(Region{100.0, 100.0}, {1e-3, 500.0}, seed);
    CHECK(s.empty());
  }
}

TEST_CASE("thinning removes both members of a close pair") {
  const std::vector<Point2> pts{{0, 0}, {10, 0}, {500, 500}};
  const auto keep = detail::hardcore_keep_mask_serial(pts, 200.0);
  CHECK(keep == std::vector<char>{0, 0, 1});
  CHECK(detail::hardcore_keep_mask(pts, 200.0) == keep);
  // Exactly at the radius is not a conflict.
  const std::vector<Point2> edge{{0, 0}, {200, 0}};
  CHECK(detail::hardcore_keep_mask_serial(edge, 200.0) == std::vector<char>{1, 1});
}

TEST_CASE("matern survivor count and intensity match the retention law") {
  const double delta = 5e-6, zeta = 200.0, L = 5000.0;
  const int seeds = 1000;
  std::vector<double> counts, window;
  counts.reserve(seeds);
  window.reserve(seeds);
  for (int s = 0; s < seeds; ++s) {
    const auto pts = sample_matern_type1(Region{L, L}, {delta, zeta}, 7000 + s);
    counts.push_back(static_cast<double>(pts.size()));
    int inner = 0;
    for (const auto& p : pts)
      if (p.x_m >= zeta && p.x_m <= L - zeta && p.y_m >= zeta && p.y_m <= L - zeta) ++inner;
    window.push_back(inner);
  }

  const double expected_count = expected_matern_count(delta, zeta, L);
  CHECK(expected_count == doctest::Approx(68.2576).epsilon(1e-4));
  const auto c = mean_se(counts);
  CHECK(std::abs(c.mean - expected_count) <= 3.0 * c.se);

  // Away from the border the exclusion disk is never clipped.
  const double inner_area = (L - 2 * zeta) * (L - 2 * zeta);
  const double expected_intensity = delta * std::exp(-delta * std::numbers::pi * zeta * zeta);
  const auto w = mean_se(window);
  CHECK(std::abs(w.mean / inner_area - expected_intensity) <= 3.0 * w.se / inner_area);
}

TEST_CASE("kmeans argument checks") {
  const std::vector<RsuSite> one{{1, 0, 0}};
  CHECK_THROWS_AS(kmeans_place_drones(one, 1, 200.0, 1), std::invalid_argument);
  const std::vector<RsuSite> two{{1, 0, 0}, {2, 100, 50}};
  CHECK_THROWS_AS(kmeans_place_drones(two, 2, 200.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(kmeans_place_drones(two, 0, 200.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(kmeans_place_drones(two, 1, 0.0, 1), std::invalid_argument);
}

TEST_CASE("two RSUs and one drone meet at the midpoint") {
  const std::vector<RsuSite> two{{1, 0, 0}, {2, 100, 50}};
  const auto [drones, res] = kmeans_place_drones(two, 1, 200.0, 3);
  REQUIRE(drones.size() == 1);
  CHECK(drones[0].id == 1);
  CHECK(drones[0].x_m == doctest::Approx(50.0));
  CHECK(drones[0].y_m == doctest::Approx(25.0));
  CHECK(drones[0].altitude_m == 200.0);
  CHECK(res.assignment == std::vector<int>{1, 1});
}

TEST_CASE("four square corners split into side pairs") {
  const std::vector<Point2> corners{{0, 0}, {100, 0}, {0, 100}, {100, 100}};

  // Enumerate every 2-partition with both parts non-empty.
  double best = INFINITY;
  for (unsigned mask = 1; mask < 15; ++mask) {
    double obj = 0.0;
    for (unsigned part = 0; part < 2; ++part) {
      double sx = 0, sy = 0;
      int n = 0;
      for (unsigned k = 0; k < 4; ++k)
        if (((mask >> k) & 1U) == part) sx += corners[k].x, sy += corners[k].y, ++n;
      for (unsigned k = 0; k < 4; ++k)
        if (((mask >> k) & 1U) == part) {
          const double dx = corners[k].x - sx / n, dy = corners[k].y - sy / n;
          obj += dx * dx + dy * dy;
        }
    }
    best = std::min(best, obj);
  }
  CHECK(best == doctest::Approx(10000.0));

  const auto adj = detail::lloyd(corners, {corners[0], corners[1]}, {});
  CHECK(adj.final_objective_m2 == doctest::Approx(best));
  CHECK(adj.assignment[0] != adj.assignment[1]);
  CHECK(adj.assignment[0] == adj.assignment[2]);
  CHECK(adj.assignment[1] == adj.assignment[3]);

  // Opposite corners leave two equidistant points; lowest-index ties send
  // both to the first centroid and Lloyd stops at the 3+1 local optimum.
  const auto opp = detail::lloyd(corners, {corners[0], corners[3]}, {});
  CHECK(opp.final_objective_m2 >= best);
  CHECK(opp.final_objective_m2 == doctest::Approx(40000.0 / 3.0));
}

TEST_CASE("kmeans objective trace never increases and matches the assignment") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto rsus = sample_matern_type1(Region{}, {5e-6, 200.0}, seed);
    REQUIRE(rsus.size() > 6);
    const auto [drones, res] = kmeans_place_drones(rsus, 6, 200.0, seed);
    REQUIRE(drones.size() == 6);
    REQUIRE(!res.objective_trace.empty());
    for (std::size_t k = 1; k < res.objective_trace.size(); ++k)
      CHECK(res.objective_trace[k] <= res.objective_trace[k - 1] * (1 + 1e-12));
    CHECK(clustering_objective(rsus, res) ==
          doctest::Approx(res.final_objective_m2).epsilon(1e-9));
    CHECK(res.iterations <= 100);

    // Converged: every RSU sits with its nearest centroid.
    std::vector<Point2> pts;
    for (const auto& r : rsus) pts.push_back({r.x_m, r.y_m});
    const auto nearest = detail::nearest_centroid_serial(pts, res.centroids);
    for (std::size_t k = 0; k < rsus.size(); ++k) {
      const auto& c = res.centroids[static_cast<std::size_t>(res.assignment[k] - 1)];
      const auto& n = res.centroids[static_cast<std::size_t>(nearest[k])];
      const double da = std::hypot(pts[k].x - c.x, pts[k].y - c.y);
      const double dn = std::hypot(pts[k].x - n.x, pts[k].y - n.y);
      CHECK(da <= dn + 1e-6);
    }
  }
}

TEST_CASE("link geometry examples") {
  const auto a = link_geometry({1, 0, 0}, {1, 0, 0, 200});
  CHECK(a.horizontal_m == 0.0);
  CHECK(a.slant_m == doctest::Approx(200.0));
  CHECK(a.elevation_deg == doctest::Approx(90.0).epsilon(1e-12));

  const auto b = link_geometry({1, 0, 0}, {1, 200, 0, 200});
  CHECK(b.horizontal_m == doctest::Approx(200.0));
  CHECK(b.slant_m == doctest::Approx(282.842712).epsilon(1e-8));
  CHECK(b.elevation_deg == doctest::Approx(45.0).epsilon(1e-12));

  const auto c = link_geometry({1, 3, 4}, {1, 0, 0, 12});
  CHECK(c.horizontal_m == doctest::Approx(5.0));
  CHECK(c.slant_m == doctest::Approx(13.0));
  CHECK(c.elevation_deg == doctest::Approx(67.38013505).epsilon(1e-8));
}

TEST_CASE("elevation falls as the drone moves away") {
  double prev = 91.0;
  for (int k = 0; k <= 100; ++k) {
    const auto g = link_geometry({1, 0, 0}, {1, 50.0 * k, 0, 200});
    CHECK(g.elevation_deg < prev);
    CHECK(g.elevation_deg > 0.0);
    prev = g.elevation_deg;
  }
}

TEST_CASE("csv writers") {
  const std::vector<RsuSite> r{{1, 1.5, 2}};
  CHECK(rsus_to_csv(r) == "id,x_m,y_m\n1,1.5,2\n");
  const std::vector<DroneSite> d{{1, 3, 4.25, 200}};
  CHECK(drones_to_csv(d) == "id,x_m,y_m,altitude_m\n1,3,4.25,200\n");
}
