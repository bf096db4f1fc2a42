#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "patchcp/harness.hpp"

namespace {

using namespace patchcp;

struct StrategyFlags {
  std::string policy = "bl";
  std::string transforms = "some";
  std::string eval = "first";

  void add(CLI::App* cmd) {
    cmd->add_option("--policy", policy, "Placement policy")
        ->check(CLI::Validator([](std::string& s) { return strategies::parse_policy(s) ? "" : "unknown policy " + s; },
                               "POLICY"));
    cmd->add_option("--transforms", transforms, "some or every")
        ->check(CLI::Validator(
            [](std::string& s) { return strategies::parse_transforms(s) ? "" : "unknown transform mode " + s; },
            "MODE"));
    cmd->add_option("--eval", eval, "Placement evaluation")
        ->check(CLI::Validator(
            [](std::string& s) { return strategies::parse_evaluation(s) ? "" : "unknown evaluation " + s; }, "EVAL"));
  }

  strategies::StrategyDescriptor descriptor(std::uint64_t eval_seed = 0) const {
    return {{*strategies::parse_policy(policy), *strategies::parse_transforms(transforms)},
            {*strategies::parse_evaluation(eval), eval_seed}};
  }
};

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error("cannot write " + out);
  f << text;
}

std::string table(const std::vector<harness::MetricsRow>& rows, const std::string& format) {
  return format == "markdown" ? harness::write_markdown(rows) : harness::write_csv(rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Patchwork placement strategies over a finite-domain constraint solver"};
  app.require_subcommand(1);

  int orders = 1000;
  std::uint64_t seed = 1;
  std::string out;
  std::string format = "csv";
  StrategyFlags flags;

  auto* bench = app.add_subcommand("bench", "Pack random patch orders with one strategy");
  bench->add_option("--orders", orders, "Number of random orders")->check(CLI::PositiveNumber);
  bench->add_option("--seed", seed, "Seed of the orders");
  flags.add(bench);
  bench->add_option("--out", out, "Output file (default stdout)");
  bench->add_option("--format", format, "csv or markdown")->check(CLI::IsMember({"csv", "markdown"}));

  auto* matrix = app.add_subcommand("bench-matrix", "Pack random patch orders with every strategy of the table");
  matrix->add_option("--orders", orders, "Number of random orders")->check(CLI::PositiveNumber);
  matrix->add_option("--seed", seed, "Seed of the orders");
  matrix->add_option("--out", out, "Output file (default stdout)");
  matrix->add_option("--format", format, "csv or markdown")->check(CLI::IsMember({"csv", "markdown"}));

  int games = 100;
  auto* selfplay = app.add_subcommand("selfplay", "Greedy self-play statistics");
  selfplay->add_option("--games", games, "Number of games")->check(CLI::PositiveNumber);
  selfplay->add_option("--seed", seed, "Seed of the circle shuffles");

  int steps = 33;
  auto* place = app.add_subcommand("place", "Show the board after each placement of one random order");
  place->add_option("--seed", seed, "Seed of the order");
  place->add_option("--steps", steps, "Number of patches to place")->check(CLI::Range(1, catalog::kCirclePatches));
  flags.add(place);

  bool print = false;
  auto* cat = app.add_subcommand("catalog", "Patch catalog");
  cat->add_flag("--print", print, "Write the catalog file to stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const catalog::Catalog catalog = catalog::load_catalog();

    if (bench->parsed()) {
      harness::BenchConfig config{orders, seed, {flags.descriptor()}};
      emit(table(harness::run_packing(config, catalog), format), out);
    } else if (matrix->parsed()) {
      harness::BenchConfig config{orders, seed, harness::table_grid()};
      const auto total = config.strategies.size();
      auto progress = [&](std::size_t s, int o) {
        if (o + 1 == orders) std::cerr << "strategy " << s + 1 << "/" << total << " done\n";
      };
      emit(table(harness::run_packing(config, catalog, progress), format), out);
    } else if (selfplay->parsed()) {
      std::cout << harness::write_selfplay(harness::run_selfplay(games, seed, catalog));
    } else if (place->parsed()) {
      const auto order = harness::random_orders(1, seed).front();
      const auto built = board::build_model(catalog.circle);
      const auto& m = *built.model;
      auto state = built.root.snapshot();
      strategies::Strategy strategy(flags.descriptor(seed));
      kernel::StatsLedger ledger;
      for (int i = 0; i < steps; ++i) {
        const int p = m.local_index(order[static_cast<std::size_t>(i)]);
        const auto outcome = strategies::try_place(m, state, p, strategy, ledger);
        std::cout << "patch " << order[static_cast<std::size_t>(i)] << ": "
                  << (outcome.placed ? "placed" : "unplaceable") << ", " << outcome.alternatives
                  << " alternatives, area " << board::view(m, state).area << "\n"
                  << board::render(m, state) << "\n";
      }
    } else if (cat->parsed()) {
      if (!print) {
        std::cerr << "catalog: nothing to do (use --print)\n";
        return 2;
      }
      const char* env = std::getenv("PATCHCP_CATALOG");
      std::cout << ((env && *env) ? catalog::serialize_catalog(catalog) : std::string(catalog::builtin_catalog_text()));
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
