#include <doctest.h>

#include <omp.h>

#include <vector>

#include "uavnet/channel.hpp"
#include "uavnet/geometry.hpp"
#include "uavnet/harness.hpp"
#include "uavnet/rng.hpp"

using namespace uavnet;

namespace {

struct ThreadCount {
  explicit ThreadCount(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~ThreadCount() { omp_set_num_threads(saved); }
  int saved;
};

}  // namespace

TEST_CASE("parallel thinning matches the serial kernel") {
  ThreadCount t(4);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto pts = detail::sample_poisson_parents(Region{}, 2e-5, seed);
    CHECK(detail::hardcore_keep_mask(pts, 200.0) == detail::hardcore_keep_mask_serial(pts, 200.0));
  }
}

TEST_CASE("parallel nearest centroid matches the serial kernel") {
  ThreadCount t(4);
  Rng rng(3);
  std::vector<Point2> pts(5000), cents(17);
  for (auto& p : pts) p = {rng.uniform(0, 1000), rng.uniform(0, 1000)};
  for (auto& c : cents) c = {rng.uniform(0, 1000), rng.uniform(0, 1000)};
  cents[5] = cents[2];  // exact ties
  CHECK(detail::nearest_centroid(pts, cents) == detail::nearest_centroid_serial(pts, cents));
}

TEST_CASE("parallel channel matches the serial reference") {
  ThreadCount t(4);
  Environment env;
  env.fading_mode = FadingMode::sampled;
  const auto rsus = sample_matern_type1(Region{}, {5e-6, 200.0}, 6);
  const auto placed = kmeans_place_drones(rsus, 6, 200.0, 6);
  const auto demands = DemandProfile::draw(rsus.size(), std::vector<double>{5e6, 25e6}, 6);
  CHECK(compute_channel(rsus, placed.first, env, TransmitPolicy{}, demands, 6) ==
        compute_channel_serial(rsus, placed.first, env, TransmitPolicy{}, demands, 6));
}

TEST_CASE("sweep output does not depend on thread count") {
  ScenarioConfig c;
  c.env.fading_mode = FadingMode::sampled;
  const SweepSpec spec{SweepParameter::drones, {2, 6}, 6};
  std::vector<ResultRow> one, many;
  {
    ThreadCount t(1);
    one = run_sweep(c, spec);
  }
  {
    ThreadCount t(4);
    many = run_sweep(c, spec);
  }
  REQUIRE(one.size() == many.size());
  for (std::size_t k = 0; k < one.size(); ++k) {
    REQUIRE(one[k].samples.size() == many[k].samples.size());
    for (std::size_t s = 0; s < one[k].samples.size(); ++s) {
      CHECK(one[k].samples[s].seed == many[k].samples[s].seed);
      CHECK(one[k].samples[s].metrics.sum_rate_bps == many[k].samples[s].metrics.sum_rate_bps);
      CHECK(one[k].samples[s].metrics.energy_efficiency_bps_per_w ==
            many[k].samples[s].metrics.energy_efficiency_bps_per_w);
    }
    CHECK(one[k].mean.sum_rate_bps == many[k].mean.sum_rate_bps);
  }
}
