// Command-line front end: single scenarios, parameter sweeps, figure
// recipes, ledger maintenance and the greedy-vs-optimal comparison.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

#include "uavnet/csv.hpp"
#include "uavnet/error.hpp"
#include "uavnet/harness.hpp"

namespace fs = std::filesystem;
using namespace uavnet;

namespace {

struct GlobalOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::string out;
  std::vector<std::string> overrides;
};

ScenarioConfig effective_config(const GlobalOptions& g) {
  ScenarioConfig cfg = g.config_path.empty() ? ScenarioConfig{} : load_config(g.config_path);
  for (const auto& kv : g.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCategory::invalid_argument, "--set expects key=value, got '" + kv + "'");
    }
    set_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (g.seed) cfg.seed = *g.seed;
  if (g.reps) cfg.replications = *g.reps;
  cfg.validate();
  return cfg;
}

fs::path output_dir(const GlobalOptions& g) {
  if (!g.out.empty()) return g.out;
  if (const char* env = std::getenv("UAVNET_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return "uavnet-out";
}

std::vector<double> parse_values(const std::string& text) {
  ScenarioConfig scratch;
  set_config_value(scratch, "demand.rates_bps", text);  // same list syntax
  return scratch.demand_rates_bps;
}

int cmd_run(const GlobalOptions& g) {
  const auto cfg = effective_config(g);
  const auto res = run_scenario(cfg, cfg.seed);
  const auto dir = output_dir(g);
  write_scenario_artifacts(res, dir);
  std::cout << metrics_csv_header() << metrics_csv_row(res.seed, res.metrics);
  std::cerr << "artifacts written to " << dir.string() << "\n";
  return 0;
}

int cmd_sweep(const GlobalOptions& g, const std::string& param, const std::string& values, const std::string& recipe) {
  const auto cfg = effective_config(g);
  const auto dir = output_dir(g);
  FigureData fig;
  if (!recipe.empty()) {
    fig = run_recipe(parse_recipe(recipe), cfg);
  } else {
    if (param.empty() || values.empty()) {
      throw Error(ErrorCategory::invalid_argument, "sweep needs --recipe, or --param with --values");
    }
    SweepSpec spec{parse_parameter(param), parse_values(values), cfg.replications};
    fig.recipe = Recipe::generic;
    fig.x_parameter = spec.parameter;
    fig.series.push_back({0.0, run_sweep(cfg, spec)});
  }
  const auto path = emit_plot_data(fig, dir);
  std::cout << plot_csv(fig);
  std::cerr << "plot data written to " << path.string() << "\n";
  return 0;
}

LedgerChain open_chain(const fs::path& path, const ScenarioConfig& cfg) {
  if (fs::exists(path)) return LedgerChain::import_text(read_text_file(path));
  return LedgerChain(scenario_cc_address(cfg, cfg.seed), cfg.ledger.gas);
}

Address need_address(const std::string& text, const char* what) {
  auto a = Address::from_hex(text);
  if (!a) throw Error(ErrorCategory::invalid_argument, std::string(what) + " must be 40 hex characters");
  return *a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drone-assisted vehicular network simulator"};
  app.fallthrough();
  app.require_subcommand(1);

  GlobalOptions g;
  std::uint64_t seed = 0;
  int reps = 0;
  app.add_option("--config", g.config_path, "Scenario config file (key = value)")->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "Master seed (overrides run.seed)");
  auto* reps_opt = app.add_option("--reps", reps, "Replications per sweep point")->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Output directory (default $UAVNET_OUT_DIR or ./uavnet-out)");
  app.add_option("--set", g.overrides, "Override one config key: key=value (repeatable)");

  auto* run = app.add_subcommand("run", "Run one scenario and write per-stage CSVs");

  auto* sweep = app.add_subcommand("sweep", "Parameter sweep or figure recipe");
  std::string param, values, recipe;
  sweep->add_option("--param", param, "bandwidth|drones|backhaul|tau|density|gas_limit");
  sweep->add_option("--values", values, "Comma-separated sweep values");
  sweep->add_option("--recipe", recipe, "bandwidth-tau|bandwidth-backhaul|drones-efficiency|drones-sum-rate|gas-limit");

  auto* config_cmd = app.add_subcommand("config", "Print the effective configuration");

  auto* ledger = app.add_subcommand("ledger", "Inspect or extend a ledger file");
  ledger->require_subcommand(1);
  std::string chain_file;
  ledger->add_option("--chain", chain_file, "Ledger file (default <out>/chain.ledger)");
  auto* reg = ledger->add_subcommand("register", "Submit a registration transaction");
  std::string kind = "sv", address, sender, drone_id, area;
  reg->add_option("--kind", kind, "drone|rsu|sv")->check(CLI::IsMember({"drone", "rsu", "sv"}));
  reg->add_option("--address", address, "Entity address (40 hex chars)")->required();
  reg->add_option("--sender", sender, "Sender address (default: the C&C)");
  reg->add_option("--id", drone_id, "Drone id (<= 5 chars)");
  reg->add_option("--area", area, "Area code (<= 4 chars)");
  auto* auth = ledger->add_subcommand("auth", "Authenticate an address");
  std::string auth_address, auth_kind;
  auth->add_option("--address", auth_address, "Address to look up")->required();
  auth->add_option("--kind", auth_kind, "Restrict the scan to one kind")->check(CLI::IsMember({"drone", "rsu", "sv"}));
  auto* mine = ledger->add_subcommand("mine", "Pack pending transactions into a block");
  std::optional<std::uint64_t> gas_limit;
  mine->add_option("--gas-limit", gas_limit, "Block gas limit (default ledger.block_gas_limit)");
  auto* verify = ledger->add_subcommand("verify", "Recompute hashes and linkage");
  auto* stats = ledger->add_subcommand("stats", "Chain summary");

  auto* oracle = app.add_subcommand("oracle-compare", "Greedy association versus exhaustive optimum");
  int instances = 500, max_rsus = 8, max_drones = 2;
  oracle->add_option("--instances", instances)->check(CLI::PositiveNumber);
  oracle->add_option("--max-rsus", max_rsus)->check(CLI::Range(1, 20));
  oracle->add_option("--max-drones", max_drones)->check(CLI::Range(1, 20));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (*seed_opt) g.seed = seed;
  if (*reps_opt) g.reps = reps;

  try {
    if (*run) return cmd_run(g);
    if (*sweep) return cmd_sweep(g, param, values, recipe);
    if (*config_cmd) {
      std::cout << config_to_text(effective_config(g));
      return 0;
    }
    if (*oracle) {
      const auto cfg = effective_config(g);
      const auto rows = oracle_compare(cfg.seed, instances, max_rsus, max_drones);
      const auto dir = output_dir(g);
      write_text_file(dir / "oracle.csv", oracle_csv(rows));
      std::size_t strict = 0, infeasible = 0, dominated = 0;
      for (const auto& r : rows) {
        strict += r.optimal_bps > r.greedy_bps ? 1 : 0;
        infeasible += r.greedy_violations > 0 ? 1 : 0;
        dominated += r.optimal_bps < r.greedy_bps ? 1 : 0;
      }
      std::cout << "instances=" << rows.size() << " optimal_strictly_better=" << strict
                << " greedy_infeasible=" << infeasible << " oracle_below_greedy=" << dominated << "\n";
      return infeasible == 0 && dominated == 0 ? 0 : 1;
    }
    if (*ledger) {
      const auto cfg = effective_config(g);
      const fs::path path = chain_file.empty() ? output_dir(g) / "chain.ledger" : fs::path(chain_file);
      LedgerChain chain = open_chain(path, cfg);
      if (*reg) {
        EntityRecord rec{*parse_kind(kind), need_address(address, "--address"), drone_id, area};
        const Address from = sender.empty() ? chain.cc_address() : need_address(sender, "--sender");
        const auto status = chain.register_entity(from, rec);
        write_text_file(path, chain.export_text());
        std::cout << status_name(status) << " gas=" << gas_cost(rec, chain.schedule()) << "\n";
        if (status != RegisterStatus::accepted) {
          std::cerr << "error: " << category_name(ErrorCategory::ledger) << ": " << status_name(status) << "\n";
          return exit_code(ErrorCategory::ledger);
        }
        return 0;
      }
      if (*auth) {
        const Address a = need_address(auth_address, "--address");
        const auto res = auth_kind.empty() ? chain.authenticate(a) : chain.authenticate(a, *parse_kind(auth_kind));
        std::cout << "authenticated=" << (res.authenticated ? "true" : "false")
                  << " comparisons=" << res.comparisons << "\n";
        return res.authenticated ? 0 : exit_code(ErrorCategory::ledger);
      }
      if (*mine) {
        const auto res = chain.mine_block(gas_limit.value_or(cfg.ledger.block_gas_limit));
        write_text_file(path, chain.export_text());
        std::cout << "block=" << res.block.index << " transactions=" << res.block.transactions.size()
                  << " gas_total=" << res.block.gas_total << " gas_limit=" << res.block.gas_limit
                  << " rejected_over_gas_limit=" << res.rejected_over_gas_limit.size() << "\n";
        return 0;
      }
      if (*verify) {
        const bool ok = chain.verify();
        std::cout << (ok ? "valid" : "invalid") << "\n";
        return ok ? 0 : exit_code(ErrorCategory::ledger);
      }
      if (*stats) {
        const auto s = chain.stats();
        std::cout << "cc=" << chain.cc_address().hex() << "\nblocks=" << s.blocks
                  << "\ncommitted_transactions=" << s.committed_transactions
                  << "\npending_transactions=" << s.pending_transactions << "\ncommitted_gas=" << s.committed_gas
                  << "\nregistered_drones=" << s.registered_drones << "\nregistered_rsus=" << s.registered_rsus
                  << "\nregistered_svs=" << s.registered_svs << "\n";
        return 0;
      }
    }
  } catch (const Error& e) {
    std::cerr << "error: " << category_name(e.category()) << ": " << e.what() << "\n";
    return exit_code(e.category());
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << category_name(ErrorCategory::invalid_argument) << ": " << e.what() << "\n";
    return exit_code(ErrorCategory::invalid_argument);
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
