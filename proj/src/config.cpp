#include "uavnet/config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <sstream>

#include "uavnet/csv.hpp"
#include "uavnet/error.hpp"

namespace uavnet {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expect) {
  throw Error(ErrorCategory::config, std::string(key) + ": cannot parse '" + std::string(value) +
                                         "' as " + std::string(expect));
}

double parse_double(std::string_view key, std::string_view v) {
  v = trim(v);
  if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
  if (v == "-inf") return -std::numeric_limits<double>::infinity();
  double out = 0.0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) bad_value(key, v, "number");
  return out;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view v) {
  v = trim(v);
  Int out{};
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) bad_value(key, v, "integer");
  return out;
}

template <typename T, typename Parse>
std::vector<T> parse_list(std::string_view v, Parse parse) {
  std::vector<T> out;
  v = trim(v);
  if (v.empty()) return out;
  std::size_t start = 0;
  while (start <= v.size()) {
    const auto comma = v.find(',', start);
    const auto item = v.substr(start, comma == std::string_view::npos ? v.size() - start : comma - start);
    out.push_back(parse(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) s += ',';
    if constexpr (std::is_floating_point_v<T>) {
      s += format_number(xs[k]);
    } else {
      s += std::to_string(xs[k]);
    }
  }
  return s;
}

struct Field {
  std::string_view key;
  std::function<std::string(const ScenarioConfig&)> get;
  std::function<void(ScenarioConfig&, std::string_view key, std::string_view)> set;
};

Field real(std::string_view key, double ScenarioConfig::*member) {
  return {key, [member](const ScenarioConfig& c) { return format_number(c.*member); },
          [member](ScenarioConfig& c, std::string_view k, std::string_view v) {
            c.*member = parse_double(k, v);
          }};
}

template <typename Get>
Field real_ref(std::string_view key, Get ref) {
  return {key, [ref](const ScenarioConfig& c) { return format_number(ref(c)); },
          [ref](ScenarioConfig& c, std::string_view k, std::string_view v) { ref(c) = parse_double(k, v); }};
}

template <typename Int, typename Get>
Field int_ref(std::string_view key, Get ref) {
  return {key, [ref](const ScenarioConfig& c) { return std::to_string(ref(c)); },
          [ref](ScenarioConfig& c, std::string_view k, std::string_view v) { ref(c) = parse_int<Int>(k, v); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(real_ref("region.width_m", [](auto& c) -> auto& { return c.region.width_m; }));
    f.push_back(real_ref("region.height_m", [](auto& c) -> auto& { return c.region.height_m; }));
    f.push_back(real_ref("geometry.density_per_m2",
                         [](auto& c) -> auto& { return c.points.density_per_m2; }));
    f.push_back(real_ref("geometry.min_distance_m",
                         [](auto& c) -> auto& { return c.points.min_distance_m; }));
    f.push_back(int_ref<int>("geometry.kmeans_max_iters",
                             [](auto& c) -> auto& { return c.kmeans.max_iters; }));
    f.push_back(real_ref("geometry.kmeans_tol_m2", [](auto& c) -> auto& { return c.kmeans.tol_m2; }));
    f.push_back(int_ref<int>("drones.count", [](auto& c) -> auto& { return c.drone_count; }));
    f.push_back(real("drones.altitude_m", &ScenarioConfig::drone_altitude_m));
    f.push_back(real_ref("channel.alpha", [](auto& c) -> auto& { return c.env.alpha; }));
    f.push_back(real_ref("channel.beta_per_deg", [](auto& c) -> auto& { return c.env.beta_per_deg; }));
    f.push_back(real_ref("channel.excess_los_db", [](auto& c) -> auto& { return c.env.excess_los_db; }));
    f.push_back(real_ref("channel.excess_nlos_db", [](auto& c) -> auto& { return c.env.excess_nlos_db; }));
    f.push_back(real_ref("channel.carrier_wavelength_m",
                         [](auto& c) -> auto& { return c.env.carrier_wavelength_m; }));
    f.push_back(real_ref("channel.noise_power_dbw", [](auto& c) -> auto& { return c.env.noise_power_dbw; }));
    f.push_back(real_ref("channel.nakagami_shape", [](auto& c) -> auto& { return c.env.nakagami_shape; }));
    f.push_back(real_ref("channel.fading_floor_db", [](auto& c) -> auto& { return c.env.fading_floor_db; }));
    f.push_back({"channel.fading_mode",
                 [](const ScenarioConfig& c) {
                   return std::string(c.env.fading_mode == FadingMode::sampled ? "sampled" : "deterministic_zero");
                 },
                 [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                   v = trim(v);
                   if (v == "sampled") {
                     c.env.fading_mode = FadingMode::sampled;
                   } else if (v == "deterministic_zero") {
                     c.env.fading_mode = FadingMode::deterministic_zero;
                   } else {
                     bad_value(k, v, "sampled|deterministic_zero");
                   }
                 }});
    f.push_back(real_ref("power.per_drone_w", [](auto& c) -> auto& { return c.power.per_drone_power_w; }));
    f.push_back(real_ref("power.max_w", [](auto& c) -> auto& { return c.power.max_power_w; }));
    f.push_back({"demand.rates_bps", [](const ScenarioConfig& c) { return join(c.demand_rates_bps); },
                 [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                   c.demand_rates_bps = parse_list<double>(v, [k](std::string_view s) { return parse_double(k, s); });
                 }});
    f.push_back(real_ref("constraints.bandwidth_hz",
                         [](auto& c) -> auto& { return c.constraints.bandwidth_per_drone_hz; }));
    f.push_back(int_ref<int>("constraints.max_links",
                             [](auto& c) -> auto& { return c.constraints.max_links_per_drone; }));
    f.push_back(real_ref("constraints.max_power_w",
                         [](auto& c) -> auto& { return c.constraints.max_power_w; }));
    f.push_back({"constraints.sinr_min_db",
                 [](const ScenarioConfig& c) { return format_number(linear_to_db(c.constraints.sinr_min_linear)); },
                 [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                   c.constraints.sinr_min_linear = db_to_linear(parse_double(k, v));
                 }});
    f.push_back(real_ref("constraints.interference_threshold_w",
                         [](auto& c) -> auto& { return c.constraints.interference_threshold_w; }));
    f.push_back(real_ref("constraints.backhaul_bps",
                         [](auto& c) -> auto& { return c.constraints.backhaul_rate_bps; }));
    f.push_back(real_ref("energy.pa_inefficiency", [](auto& c) -> auto& { return c.energy.pa_inefficiency; }));
    f.push_back(real_ref("energy.circuit_power_w",
                         [](auto& c) -> auto& { return c.energy.circuit_power_per_link_w; }));
    f.push_back(int_ref<std::uint64_t>("ledger.gas_base",
                                       [](auto& c) -> auto& { return c.ledger.gas.base_tx_gas; }));
    f.push_back(int_ref<std::uint64_t>("ledger.gas_per_byte",
                                       [](auto& c) -> auto& { return c.ledger.gas.per_byte_gas; }));
    f.push_back(int_ref<std::uint64_t>("ledger.gas_overhead_drone",
                                       [](auto& c) -> auto& { return c.ledger.gas.drone_overhead; }));
    f.push_back(int_ref<std::uint64_t>("ledger.gas_overhead_rsu",
                                       [](auto& c) -> auto& { return c.ledger.gas.rsu_overhead; }));
    f.push_back(int_ref<std::uint64_t>("ledger.gas_overhead_sv",
                                       [](auto& c) -> auto& { return c.ledger.gas.sv_overhead; }));
    f.push_back(int_ref<std::uint64_t>("ledger.block_gas_limit",
                                       [](auto& c) -> auto& { return c.ledger.block_gas_limit; }));
    f.push_back({"ledger.cc_address", [](const ScenarioConfig& c) { return c.ledger.cc_address_hex; },
                 [](ScenarioConfig& c, std::string_view, std::string_view v) {
                   c.ledger.cc_address_hex = std::string(trim(v));
                 }});
    f.push_back({"ledger.rogue_drones", [](const ScenarioConfig& c) { return join(c.ledger.rogue_drones); },
                 [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                   c.ledger.rogue_drones = parse_list<int>(v, [k](std::string_view s) { return parse_int<int>(k, s); });
                 }});
    f.push_back({"ledger.rogue_rsus", [](const ScenarioConfig& c) { return join(c.ledger.rogue_rsus); },
                 [](ScenarioConfig& c, std::string_view k, std::string_view v) {
                   c.ledger.rogue_rsus = parse_list<int>(v, [k](std::string_view s) { return parse_int<int>(k, s); });
                 }});
    f.push_back(int_ref<int>("ledger.sv_count", [](auto& c) -> auto& { return c.ledger.sv_count; }));
    f.push_back(int_ref<int>("ledger.sweep_population",
                             [](auto& c) -> auto& { return c.ledger.sweep_population; }));
    f.push_back(int_ref<std::uint64_t>("run.seed", [](auto& c) -> auto& { return c.seed; }));
    f.push_back(int_ref<int>("run.replications", [](auto& c) -> auto& { return c.replications; }));
    return f;
  }();
  return table;
}

const Field* find_field(std::string_view key) {
  for (const auto& f : fields()) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

}  // namespace

void ScenarioConfig::validate() const {
  std::vector<std::string> problems;
  auto need = [&](bool ok, const char* msg) {
    if (!ok) problems.emplace_back(msg);
  };
  need(region.width_m > 0.0, "region.width_m: must be > 0");
  need(region.height_m > 0.0, "region.height_m: must be > 0");
  need(points.density_per_m2 >= 0.0 && std::isfinite(points.density_per_m2),
       "geometry.density_per_m2: must be finite and >= 0");
  need(points.min_distance_m >= 0.0, "geometry.min_distance_m: must be >= 0");
  need(kmeans.max_iters >= 1, "geometry.kmeans_max_iters: must be >= 1");
  need(kmeans.tol_m2 >= 0.0, "geometry.kmeans_tol_m2: must be >= 0");
  need(drone_count >= 1, "drones.count: must be >= 1");
  need(drone_altitude_m > 0.0, "drones.altitude_m: must be > 0");
  need(env.alpha > 0.0, "channel.alpha: must be > 0");
  need(env.beta_per_deg > 0.0, "channel.beta_per_deg: must be > 0");
  need(env.carrier_wavelength_m > 0.0, "channel.carrier_wavelength_m: must be > 0");
  need(env.nakagami_shape >= 0.5, "channel.nakagami_shape: must be >= 0.5");
  need(power.per_drone_power_w > 0.0, "power.per_drone_w: must be > 0");
  need(power.per_drone_power_w <= power.max_power_w, "power.per_drone_w: must be <= power.max_w");
  need(!demand_rates_bps.empty(), "demand.rates_bps: must not be empty");
  for (double r : demand_rates_bps) {
    if (!(r > 0.0) || !std::isfinite(r)) {
      problems.emplace_back("demand.rates_bps: every rate must be finite and > 0");
      break;
    }
  }
  need(constraints.bandwidth_per_drone_hz >= 0.0, "constraints.bandwidth_hz: must be >= 0");
  need(constraints.max_links_per_drone >= 0, "constraints.max_links: must be >= 0");
  need(constraints.max_power_w > 0.0, "constraints.max_power_w: must be > 0");
  need(constraints.sinr_min_linear >= 0.0, "constraints.sinr_min_db: invalid");
  need(constraints.interference_threshold_w > 0.0, "constraints.interference_threshold_w: must be > 0");
  need(constraints.backhaul_rate_bps > 0.0, "constraints.backhaul_bps: must be > 0");
  need(energy.pa_inefficiency > 0.0, "energy.pa_inefficiency: must be > 0");
  need(energy.circuit_power_per_link_w > 0.0, "energy.circuit_power_w: must be > 0");
  need(ledger.gas.base_tx_gas > 0, "ledger.gas_base: must be > 0");
  need(ledger.block_gas_limit > 0, "ledger.block_gas_limit: must be > 0");
  need(ledger.cc_address_hex.empty() || Address::from_hex(ledger.cc_address_hex).has_value(),
       "ledger.cc_address: must be 40 hex characters");
  need(ledger.sv_count >= 0, "ledger.sv_count: must be >= 0");
  need(ledger.sweep_population >= 0, "ledger.sweep_population: must be >= 0");
  need(replications >= 1, "run.replications: must be >= 1");
  if (!problems.empty()) {
    std::string msg = "invalid configuration:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(ErrorCategory::config, msg);
  }
}

std::vector<std::string_view> config_keys() {
  std::vector<std::string_view> keys;
  for (const auto& f : fields()) keys.push_back(f.key);
  return keys;
}

std::string get_config_value(const ScenarioConfig& config, std::string_view key) {
  const Field* f = find_field(key);
  if (f == nullptr) throw Error(ErrorCategory::config, "unknown config key '" + std::string(key) + "'");
  return f->get(config);
}

void set_config_value(ScenarioConfig& config, std::string_view key, std::string_view value) {
  const Field* f = find_field(key);
  if (f == nullptr) throw Error(ErrorCategory::config, "unknown config key '" + std::string(key) + "'");
  f->set(config, key, value);
}

std::string config_to_text(const ScenarioConfig& config) {
  std::ostringstream os;
  std::string_view section;
  for (const auto& f : fields()) {
    const auto dot = f.key.find('.');
    const auto sec = f.key.substr(0, dot);
    if (sec != section) {
      if (!section.empty()) os << '\n';
      os << "# " << sec << '\n';
      section = sec;
    }
    os << f.key << " = " << f.get(config) << '\n';
  }
  return os.str();
}

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig cfg;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCategory::config, "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    set_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

ScenarioConfig load_config(const std::string& path) { return parse_config(read_text_file(path)); }

}  // namespace uavnet
