#include "uavnet/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "uavnet/csv.hpp"
#include "uavnet/error.hpp"
#include "uavnet/rng.hpp"

namespace uavnet {

namespace {

enum AddressTag : std::uint64_t { kCcTag = 0, kDroneTag = 1, kRsuTag = 2, kSvTag = 3, kPopulationTag = 7 };

Address entity_address(std::uint64_t seed, AddressTag tag, std::uint64_t index) {
  Rng rng(seed, Stream::ledger, {tag, index});
  return Address::random(rng);
}

Address cc_address_for(const ScenarioConfig& config, std::uint64_t seed) {
  if (!config.ledger.cc_address_hex.empty()) {
    return *Address::from_hex(config.ledger.cc_address_hex);
  }
  return entity_address(seed, kCcTag, 0);
}

std::string padded(char prefix, int value, int width) {
  std::ostringstream os;
  os << prefix << std::setw(width) << std::setfill('0') << (value % static_cast<int>(std::pow(10, width)));
  return os.str();
}

bool contains(const std::vector<int>& xs, int x) { return std::find(xs.begin(), xs.end(), x) != xs.end(); }

// Mines until the pending pool is empty.
void mine_all(LedgerChain& chain, std::uint64_t gas_limit) {
  while (!chain.pending().empty()) {
    chain.mine_block(gas_limit);
  }
}

class StageLog {
 public:
  explicit StageLog(std::vector<std::string>& lines) : lines_(lines) {}
  void operator()(std::string_view stage, const std::string& text) {
    lines_.push_back("[" + std::string(stage) + "] " + text);
  }

 private:
  std::vector<std::string>& lines_;
};

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config, std::uint64_t seed) {
  config.validate();
  ScenarioResult res;
  res.seed = seed;
  StageLog log(res.stage_log);

  // Registration of the drone fleet and the smart vehicles by the C&C.
  const Address cc = cc_address_for(config, seed);
  LedgerChain chain(cc, config.ledger.gas);
  std::size_t registered_drones = 0;
  for (int d = 1; d <= config.drone_count; ++d) {
    if (contains(config.ledger.rogue_drones, d)) continue;
    EntityRecord rec{EntityKind::drone, entity_address(seed, kDroneTag, static_cast<std::uint64_t>(d)),
                     padded('D', d, 4), padded('A', d, 3)};
    if (chain.register_entity(cc, rec) == RegisterStatus::accepted) ++registered_drones;
  }
  for (int s = 1; s <= config.ledger.sv_count; ++s) {
    chain.register_entity(cc, {EntityKind::sv, entity_address(seed, kSvTag, static_cast<std::uint64_t>(s)), "", ""});
  }
  mine_all(chain, config.ledger.block_gas_limit);
  log("register", "cc=" + cc.hex() + " drones=" + std::to_string(registered_drones) +
                      " svs=" + std::to_string(config.ledger.sv_count));

  // Drone authentication: only authenticated drones are positioned.
  std::vector<int> drone_fleet;
  std::size_t comparisons = 0;
  for (int d = 1; d <= config.drone_count; ++d) {
    const auto auth = chain.authenticate(entity_address(seed, kDroneTag, static_cast<std::uint64_t>(d)),
                                         EntityKind::drone);
    comparisons += auth.comparisons;
    if (auth.authenticated) {
      drone_fleet.push_back(d);
    } else {
      ++res.excluded_drones;
      log("auth-drones", "drone " + std::to_string(d) + " rejected");
    }
  }
  log("auth-drones", "authenticated=" + std::to_string(drone_fleet.size()) + "/" +
                         std::to_string(config.drone_count) + " comparisons=" + std::to_string(comparisons));

  // RSU deployment, registration and authentication.
  const auto sampled = sample_matern_type1(config.region, config.points, seed);
  log("sample-rsus", "rsus=" + std::to_string(sampled.size()));
  std::size_t registered_rsus = 0;
  for (const auto& r : sampled) {
    if (contains(config.ledger.rogue_rsus, r.id)) continue;
    EntityRecord rec{EntityKind::rsu, entity_address(seed, kRsuTag, static_cast<std::uint64_t>(r.id)), "",
                     padded('R', r.id, 3)};
    if (chain.register_entity(cc, rec) == RegisterStatus::accepted) ++registered_rsus;
  }
  mine_all(chain, config.ledger.block_gas_limit);
  log("register", "rsus=" + std::to_string(registered_rsus));
  comparisons = 0;
  for (const auto& r : sampled) {
    const auto auth = chain.authenticate(entity_address(seed, kRsuTag, static_cast<std::uint64_t>(r.id)),
                                         EntityKind::rsu);
    comparisons += auth.comparisons;
    if (auth.authenticated) {
      res.rsus.push_back({static_cast<int>(res.rsus.size()) + 1, r.x_m, r.y_m});
    } else {
      ++res.excluded_rsus;
      log("auth-rsus", "rsu " + std::to_string(r.id) + " rejected");
    }
  }
  log("auth-rsus", "authenticated=" + std::to_string(res.rsus.size()) + "/" + std::to_string(sampled.size()) +
                       " comparisons=" + std::to_string(comparisons));
  res.ledger = chain.stats();

  // Placement.
  const std::size_t u = res.rsus.size();
  std::size_t k = drone_fleet.size();
  if (u <= k) {
    const std::size_t clamped = u == 0 ? 0 : u - 1;
    log("place", "only " + std::to_string(u) + " RSUs for " + std::to_string(k) + " drones; using " +
                     std::to_string(clamped));
    k = clamped;
  }
  if (k >= 1) {
    auto placed = kmeans_place_drones(res.rsus, static_cast<int>(k), config.drone_altitude_m, seed, config.kmeans);
    res.drones = std::move(placed.first);
    res.clustering = std::move(placed.second);
    for (std::size_t l = 0; l < k; ++l) {
      log("place", "position " + std::to_string(l + 1) + " <- drone " + std::to_string(drone_fleet[l]));
    }
    log("place", "drones=" + std::to_string(k) + " objective_m2=" +
                     format_number(res.clustering.final_objective_m2) +
                     " iterations=" + std::to_string(res.clustering.iterations));
  }

  // Demands, channel, association.
  res.demands = DemandProfile::draw(u, config.demand_rates_bps, seed);
  log("demands", "rsus=" + std::to_string(u));
  res.channel = compute_channel(res.rsus, res.drones, config.env, config.power, res.demands, seed);
  log("channel", "links=" + std::to_string(u * res.drones.size()));
  auto admitted = greedy_admit(res.channel, res.demands, config.constraints);
  const double before = sum_rate(admitted, res.demands);
  res.association = backhaul_enforce(std::move(admitted), res.demands, config.constraints, &res.backhaul_iterations);
  log("associate", "admitted_bps=" + format_number(before) +
                       " backhaul_removals=" + std::to_string(res.backhaul_iterations));
  res.metrics = compute_metrics(res.association, res.channel, res.demands, config.energy);
  log("metrics", metrics_csv_row(seed, res.metrics).substr(0, metrics_csv_row(seed, res.metrics).size() - 1));
  return res;
}

std::string metrics_csv_header() { return "seed,sum_rate_bps,served_frac,avg_bw_hz,ee_bps_per_w\n"; }

std::string metrics_csv_row(std::uint64_t seed, const NetworkMetrics& m) {
  return std::to_string(seed) + "," + format_number(m.sum_rate_bps) + "," + format_number(m.served_fraction) +
         "," + format_number(m.avg_bandwidth_consumed_hz) + "," + format_number(m.energy_efficiency_bps_per_w) +
         "\n";
}

void write_scenario_artifacts(const ScenarioResult& result, const std::filesystem::path& dir) {
  write_text_file(dir / "rsus.csv", rsus_to_csv(result.rsus));
  write_text_file(dir / "drones.csv", drones_to_csv(result.drones));
  write_text_file(dir / "channel.csv", channel_to_csv(result.channel));
  write_text_file(dir / "association.csv", association_to_csv(result.association, result.channel, result.demands));
  write_text_file(dir / "metrics.csv", metrics_csv_header() + metrics_csv_row(result.seed, result.metrics));
  std::string log;
  for (const auto& line : result.stage_log) log += line + "\n";
  write_text_file(dir / "stages.log", log);
}

std::string_view parameter_name(SweepParameter p) {
  switch (p) {
    case SweepParameter::bandwidth: return "bandwidth";
    case SweepParameter::drones: return "drones";
    case SweepParameter::backhaul: return "backhaul";
    case SweepParameter::tau: return "tau";
    case SweepParameter::density: return "density";
    case SweepParameter::gas_limit: return "gas_limit";
  }
  return "unknown";
}

SweepParameter parse_parameter(std::string_view name) {
  for (auto p : {SweepParameter::bandwidth, SweepParameter::drones, SweepParameter::backhaul, SweepParameter::tau,
                 SweepParameter::density, SweepParameter::gas_limit}) {
    if (parameter_name(p) == name) return p;
  }
  throw Error(ErrorCategory::invalid_argument, "unknown sweep parameter '" + std::string(name) + "'");
}

ScenarioConfig with_parameter(const ScenarioConfig& base, SweepParameter p, double value) {
  ScenarioConfig c = base;
  switch (p) {
    case SweepParameter::bandwidth: c.constraints.bandwidth_per_drone_hz = value; break;
    case SweepParameter::drones: c.drone_count = static_cast<int>(std::lround(value)); break;
    case SweepParameter::backhaul: c.constraints.backhaul_rate_bps = value; break;
    case SweepParameter::tau: c.constraints.max_links_per_drone = static_cast<int>(std::lround(value)); break;
    case SweepParameter::density: c.points.density_per_m2 = value; break;
    case SweepParameter::gas_limit: c.ledger.block_gas_limit = static_cast<std::uint64_t>(std::llround(value)); break;
  }
  return c;
}

std::size_t transactions_per_block(const ScenarioConfig& config, std::uint64_t gas_limit, std::uint64_t seed) {
  const Address cc = cc_address_for(config, seed);
  LedgerChain chain(cc, config.ledger.gas);
  Rng rng(seed, Stream::ledger, {kPopulationTag});
  auto random_code = [&](std::size_t max_len) {
    std::string s(1 + rng.uniform_index(max_len), 'A');
    for (char& ch : s) ch = static_cast<char>('A' + rng.uniform_index(26));
    return s;
  };
  for (int n = 0; n < config.ledger.sweep_population; ++n) {
    EntityRecord rec;
    rec.kind = static_cast<EntityKind>(rng.uniform_index(3));
    rec.address = Address::random(rng);
    if (rec.kind == EntityKind::drone) rec.drone_id = random_code(EntityRecord::kMaxDroneId);
    if (rec.kind != EntityKind::sv) rec.area_code = random_code(EntityRecord::kMaxAreaCode);
    chain.register_entity(cc, rec);
  }
  return chain.mine_block(gas_limit).block.transactions.size();
}

ResultRow aggregate(double value, std::vector<SeedSample> samples) {
  std::sort(samples.begin(), samples.end(), [](const SeedSample& a, const SeedSample& b) { return a.seed < b.seed; });
  ResultRow row;
  row.value = value;
  const double n = static_cast<double>(samples.size());
  auto stats = [&](auto get, double& mean, double& se) {
    mean = 0.0;
    se = 0.0;
    if (samples.empty()) return;
    for (const auto& s : samples) mean += get(s);
    mean /= n;
    if (samples.size() < 2) return;
    double ss = 0.0;
    for (const auto& s : samples) ss += (get(s) - mean) * (get(s) - mean);
    se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  };
  stats([](const SeedSample& s) { return s.metrics.sum_rate_bps; }, row.mean.sum_rate_bps, row.stderr_.sum_rate_bps);
  stats([](const SeedSample& s) { return s.metrics.served_fraction; }, row.mean.served_fraction,
        row.stderr_.served_fraction);
  stats([](const SeedSample& s) { return s.metrics.avg_bandwidth_consumed_hz; }, row.mean.avg_bandwidth_consumed_hz,
        row.stderr_.avg_bandwidth_consumed_hz);
  stats([](const SeedSample& s) { return s.metrics.energy_efficiency_bps_per_w; },
        row.mean.energy_efficiency_bps_per_w, row.stderr_.energy_efficiency_bps_per_w);
  double served_mean = 0.0, served_se = 0.0;
  stats([](const SeedSample& s) { return static_cast<double>(s.metrics.served_count); }, served_mean, served_se);
  row.mean.served_count = static_cast<std::size_t>(std::lround(served_mean));
  stats([](const SeedSample& s) { return s.tx_per_block; }, row.tx_per_block_mean, row.tx_per_block_stderr);
  row.samples = std::move(samples);
  return row;
}

std::vector<ResultRow> run_sweep(const ScenarioConfig& config, const SweepSpec& spec) {
  if (spec.values.empty()) throw std::invalid_argument("run_sweep: empty value list");
  if (spec.replications < 1) throw std::invalid_argument("run_sweep: replications must be >= 1");
  std::vector<double> values = spec.values;
  std::sort(values.begin(), values.end());
  for (double v : values) with_parameter(config, spec.parameter, v).validate();

  const auto reps = static_cast<std::size_t>(spec.replications);
  const std::size_t tasks = values.size() * reps;
  std::vector<SeedSample> samples(tasks);
  std::vector<std::exception_ptr> errors(tasks);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(tasks); ++t) {
    const auto task = static_cast<std::size_t>(t);
    const double value = values[task / reps];
    const std::uint64_t seed = config.seed + task % reps;
    try {
      const ScenarioConfig cfg = with_parameter(config, spec.parameter, value);
      SeedSample s;
      s.seed = seed;
      if (spec.parameter == SweepParameter::gas_limit) {
        s.tx_per_block = static_cast<double>(transactions_per_block(cfg, cfg.ledger.block_gas_limit, seed));
      } else {
        s.metrics = run_scenario(cfg, seed).metrics;
      }
      samples[task] = s;
    } catch (...) {
      errors[task] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  std::vector<ResultRow> rows;
  for (std::size_t v = 0; v < values.size(); ++v) {
    std::vector<SeedSample> chunk(samples.begin() + static_cast<std::ptrdiff_t>(v * reps),
                                  samples.begin() + static_cast<std::ptrdiff_t>((v + 1) * reps));
    rows.push_back(aggregate(values[v], std::move(chunk)));
  }
  return rows;
}

std::string_view recipe_name(Recipe r) {
  switch (r) {
    case Recipe::generic: return "sweep";
    case Recipe::bandwidth_tau: return "bandwidth-tau";
    case Recipe::bandwidth_backhaul: return "bandwidth-backhaul";
    case Recipe::drones_efficiency: return "drones-efficiency";
    case Recipe::drones_sum_rate: return "drones-sum-rate";
    case Recipe::gas_limit: return "gas-limit";
  }
  return "unknown";
}

Recipe parse_recipe(std::string_view name) {
  for (auto r : {Recipe::bandwidth_tau, Recipe::bandwidth_backhaul, Recipe::drones_efficiency,
                 Recipe::drones_sum_rate, Recipe::gas_limit}) {
    if (recipe_name(r) == name) return r;
  }
  throw Error(ErrorCategory::invalid_argument, "unknown recipe '" + std::string(name) + "'");
}

namespace {

std::vector<double> linspace(double lo, double hi, double step) {
  std::vector<double> out;
  for (int k = 0; lo + k * step <= hi + step * 1e-9; ++k) out.push_back(lo + k * step);
  return out;
}

}  // namespace

FigureData run_recipe(Recipe recipe, const ScenarioConfig& base) {
  FigureData fig;
  fig.recipe = recipe;
  const int reps = base.replications;
  const auto bandwidths = linspace(0.0, 400e6, 25e6);
  std::vector<double> drone_counts;
  for (int v = 1; v <= 10; ++v) drone_counts.push_back(v);

  switch (recipe) {
    case Recipe::bandwidth_tau: {
      fig.x_parameter = SweepParameter::bandwidth;
      ScenarioConfig cfg = base;
      cfg.constraints.backhaul_rate_bps = 1.60e9;
      cfg.points.density_per_m2 = 5e-6;
      for (int tau : {5, 10, 15, 20}) {
        cfg.constraints.max_links_per_drone = tau;
        fig.series.push_back({static_cast<double>(tau), run_sweep(cfg, {SweepParameter::bandwidth, bandwidths, reps})});
      }
      break;
    }
    case Recipe::bandwidth_backhaul: {
      fig.x_parameter = SweepParameter::bandwidth;
      ScenarioConfig cfg = base;
      cfg.points.density_per_m2 = 7e-6;
      for (double br : {1.5e9, 2.0e9, 2.5e9}) {
        cfg.constraints.backhaul_rate_bps = br;
        fig.series.push_back({br, run_sweep(cfg, {SweepParameter::bandwidth, bandwidths, reps})});
      }
      break;
    }
    case Recipe::drones_efficiency:
    case Recipe::drones_sum_rate: {
      fig.x_parameter = SweepParameter::drones;
      ScenarioConfig cfg = base;
      cfg.constraints.backhaul_rate_bps = std::numeric_limits<double>::infinity();
      for (double density : {3e-6, 5e-6, 7e-6}) {
        cfg.points.density_per_m2 = density;
        fig.series.push_back({density, run_sweep(cfg, {SweepParameter::drones, drone_counts, reps})});
      }
      break;
    }
    case Recipe::gas_limit: {
      fig.x_parameter = SweepParameter::gas_limit;
      const std::vector<double> limits{0.5e6, 1e6, 2e6, 3e6, 4e6, 5e6, 6e6, 8e6, 10e6};
      fig.series.push_back({0.0, run_sweep(base, {SweepParameter::gas_limit, limits, reps})});
      break;
    }
    case Recipe::generic:
      throw std::invalid_argument("run_recipe: generic sweeps go through run_sweep");
  }
  return fig;
}

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

Table figure_table(const FigureData& fig) {
  std::size_t total = 0;
  for (const auto& s : fig.series) total += s.rows.size();
  if (total == 0) throw std::invalid_argument("emit_plot_data: no rows");

  Table t;
  const auto f = [](double x) { return format_number(x); };
  switch (fig.recipe) {
    case Recipe::bandwidth_tau:
      t.header = {"W_hz", "tau", "sum_rate_bps", "bw_consumed_hz", "stderr"};
      for (const auto& s : fig.series)
        for (const auto& r : s.rows)
          t.rows.push_back({f(r.value), f(s.curve_value), f(r.mean.sum_rate_bps), f(r.mean.avg_bandwidth_consumed_hz),
                            f(r.stderr_.sum_rate_bps)});
      break;
    case Recipe::bandwidth_backhaul:
      t.header = {"W_hz", "backhaul_bps", "sum_rate_bps", "stderr"};
      for (const auto& s : fig.series)
        for (const auto& r : s.rows)
          t.rows.push_back({f(r.value), f(s.curve_value), f(r.mean.sum_rate_bps), f(r.stderr_.sum_rate_bps)});
      break;
    case Recipe::drones_efficiency:
      t.header = {"drones", "density_per_m2", "ee_bps_per_w", "ee_stderr", "served_frac", "served_stderr"};
      for (const auto& s : fig.series)
        for (const auto& r : s.rows)
          t.rows.push_back({f(r.value), f(s.curve_value), f(r.mean.energy_efficiency_bps_per_w),
                            f(r.stderr_.energy_efficiency_bps_per_w), f(r.mean.served_fraction),
                            f(r.stderr_.served_fraction)});
      break;
    case Recipe::drones_sum_rate:
      t.header = {"drones", "density_per_m2", "sum_rate_bps", "stderr"};
      for (const auto& s : fig.series)
        for (const auto& r : s.rows)
          t.rows.push_back({f(r.value), f(s.curve_value), f(r.mean.sum_rate_bps), f(r.stderr_.sum_rate_bps)});
      break;
    case Recipe::gas_limit:
      t.header = {"gas_limit", "tx_per_block", "stderr"};
      for (const auto& s : fig.series)
        for (const auto& r : s.rows) t.rows.push_back({f(r.value), f(r.tx_per_block_mean), f(r.tx_per_block_stderr)});
      break;
    case Recipe::generic:
      t.header = {std::string(parameter_name(fig.x_parameter)), "sum_rate_bps", "sum_rate_stderr", "served_frac",
                  "served_stderr", "avg_bw_hz", "ee_bps_per_w", "tx_per_block"};
      for (const auto& s : fig.series)
        for (const auto& r : s.rows)
          t.rows.push_back({f(r.value), f(r.mean.sum_rate_bps), f(r.stderr_.sum_rate_bps), f(r.mean.served_fraction),
                            f(r.stderr_.served_fraction), f(r.mean.avg_bandwidth_consumed_hz),
                            f(r.mean.energy_efficiency_bps_per_w), f(r.tx_per_block_mean)});
      break;
  }
  return t;
}

std::string render(const Table& t, char sep) {
  std::ostringstream os;
  for (std::size_t k = 0; k < t.header.size(); ++k) os << (k ? std::string(1, sep) : "") << t.header[k];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) os << (k ? std::string(1, sep) : "") << row[k];
    os << '\n';
  }
  return os.str();
}

}  // namespace

std::string plot_csv(const FigureData& fig) { return render(figure_table(fig), ','); }

std::string plot_dat(const FigureData& fig) {
  // Blank line between curves so gnuplot treats them as separate data blocks.
  const Table t = figure_table(fig);
  std::ostringstream os;
  os << "# ";
  for (std::size_t k = 0; k < t.header.size(); ++k) os << (k ? " " : "") << t.header[k];
  os << '\n';
  std::size_t at = 0;
  for (std::size_t s = 0; s < fig.series.size(); ++s) {
    if (s) os << "\n\n";
    for (std::size_t r = 0; r < fig.series[s].rows.size(); ++r, ++at) {
      const auto& row = t.rows[at];
      for (std::size_t k = 0; k < row.size(); ++k) os << (k ? " " : "") << row[k];
      os << '\n';
    }
  }
  return os.str();
}

std::filesystem::path emit_plot_data(const FigureData& fig, const std::filesystem::path& dir) {
  const std::string csv = plot_csv(fig);
  const auto csv_path = dir / (std::string(recipe_name(fig.recipe)) + ".csv");
  write_text_file(csv_path, csv);
  write_text_file(dir / (std::string(recipe_name(fig.recipe)) + ".dat"), plot_dat(fig));
  return csv_path;
}

Address scenario_cc_address(const ScenarioConfig& config, std::uint64_t seed) {
  return cc_address_for(config, seed);
}

SmallInstance random_small_instance(std::uint64_t seed, int max_rsus, int max_drones) {
  if (max_rsus < 1 || max_drones < 1) throw std::invalid_argument("random_small_instance: empty bounds");
  Rng rng(seed, Stream::scenario, {0x5a11});
  SmallInstance inst;
  inst.seed = seed;
  const auto u = 1 + rng.uniform_index(static_cast<std::uint64_t>(max_rsus));
  const auto v = 1 + rng.uniform_index(static_cast<std::uint64_t>(max_drones));
  std::vector<RsuSite> rsus;
  for (std::uint64_t i = 0; i < u; ++i) {
    rsus.push_back({static_cast<int>(i) + 1, rng.uniform(0.0, 1000.0), rng.uniform(0.0, 1000.0)});
  }
  std::vector<DroneSite> drones;
  for (std::uint64_t j = 0; j < v; ++j) {
    drones.push_back({static_cast<int>(j) + 1, rng.uniform(0.0, 1000.0), rng.uniform(0.0, 1000.0),
                      rng.uniform(50.0, 300.0)});
  }
  const std::vector<double> rates{5e6, 10e6, 15e6, 20e6, 25e6};
  inst.demands = DemandProfile::draw(u, rates, seed);
  Environment env;
  env.fading_mode = rng.uniform01() < 0.5 ? FadingMode::sampled : FadingMode::deterministic_zero;
  inst.channel = compute_channel(rsus, drones, env, inst.policy, inst.demands, seed);
  inst.constraints.max_links_per_drone = 1 + static_cast<int>(rng.uniform_index(4));
  inst.constraints.bandwidth_per_drone_hz = rng.uniform(2e6, 40e6);
  inst.constraints.backhaul_rate_bps = rng.uniform01() < 0.25 ? std::numeric_limits<double>::infinity()
                                                                 : rng.uniform(10e6, 100e6);
  inst.constraints.sinr_min_linear = db_to_linear(rng.uniform(-15.0, 5.0));
  return inst;
}

std::vector<OracleComparison> oracle_compare(std::uint64_t first_seed, int count, int max_rsus, int max_drones) {
  std::vector<OracleComparison> out(static_cast<std::size_t>(std::max(count, 0)));
  std::vector<std::exception_ptr> errors(out.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t t = 0; t < static_cast<std::int64_t>(out.size()); ++t) {
    const auto k = static_cast<std::size_t>(t);
    try {
      const auto inst = random_small_instance(first_seed + k, max_rsus, max_drones);
      const auto greedy = greedy_associate(inst.channel, inst.demands, inst.constraints);
      const auto best = brute_force_optimal(inst.channel, inst.demands, inst.constraints);
      out[k] = {inst.seed,
                inst.channel.rsu_count(),
                inst.channel.drone_count(),
                sum_rate(greedy, inst.demands),
                best.sum_rate_bps,
                check_feasibility(greedy, inst.channel, inst.demands, inst.constraints, inst.policy).size()};
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::string oracle_csv(const std::vector<OracleComparison>& rows) {
  std::ostringstream os;
  os << "seed,rsus,drones,greedy_bps,optimal_bps,gap_bps,greedy_violations\n";
  for (const auto& r : rows) {
    os << r.seed << ',' << r.rsus << ',' << r.drones << ',' << format_number(r.greedy_bps) << ','
       << format_number(r.optimal_bps) << ',' << format_number(r.optimal_bps - r.greedy_bps) << ','
       << r.greedy_violations << '\n';
  }
  return os.str();
}

}  // namespace uavnet
