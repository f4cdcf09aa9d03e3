// ghostpin: lensless biphoton ghost-imaging simulator and design tool.
//
//   ghostpin <jsp|ghost|analytic|sweep|optimize|reproduce>
//            --config <path> [--out <dir>] [--threads N]
//            [--mode paraxial|exact] [--pm sinc|gaussian]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical error.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "ghostpin/commands.hpp"
#include "ghostpin/errors.hpp"
#include "ghostpin/version.hpp"

namespace {

struct CliArgs {
  std::string config_path;
  std::string figure;
  ghostpin::CommandOptions options;
};

void add_common(CLI::App* cmd, CliArgs& args, std::string* mode, std::string* pm) {
  cmd->add_option("--out", args.options.out_dir, "Output directory (overrides config)");
  cmd->add_option("--threads", args.options.threads, "Worker threads (overrides config)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mode", *mode, "Propagation mode")
      ->check(CLI::IsMember({"paraxial", "exact"}));
  cmd->add_option("--pm", *pm, "Phase-matching model")
      ->check(CLI::IsMember({"sinc", "gaussian"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lensless biphoton ghost imaging: numerical engine and design model"};
  app.set_version_flag("--version", ghostpin::kVersion);
  app.require_subcommand(1);

  CliArgs args;
  std::string mode, pm;

  auto* jsp = app.add_subcommand("jsp", "Joint spatial probability at the detectors");
  auto* ghost = app.add_subcommand("ghost", "Bucket-detector ghost pattern G(x_i)");
  auto* analytic = app.add_subcommand("analytic", "Closed-form design report");
  auto* sweep = app.add_subcommand("sweep", "Design quantities along one parameter axis");
  auto* optimize = app.add_subcommand("optimize", "Pump width minimizing sigma_g or resolution");
  auto* reproduce = app.add_subcommand("reproduce", "Built-in parameter sets (fig2|fig3|fig4)");

  for (CLI::App* cmd : {jsp, ghost, analytic, sweep, optimize}) {
    cmd->add_option("--config", args.config_path, "Experiment config file")->required();
    add_common(cmd, args, &mode, &pm);
  }
  reproduce->add_option("figure", args.figure, "fig2, fig3 or fig4")->required();
  add_common(reproduce, args, &mode, &pm);

  CLI11_PARSE(app, argc, argv);

  try {
    if (!mode.empty()) args.options.mode = ghostpin::propagation_mode_from_string(mode);
    if (!pm.empty()) args.options.pm = ghostpin::pm_model_from_string(pm);

    if (reproduce->parsed()) {
      ghostpin::cmd_reproduce(args.figure, args.options);
      return 0;
    }
    const ghostpin::RunConfig config = ghostpin::RunConfig::parse_file(args.config_path);
    if (jsp->parsed()) ghostpin::cmd_jsp(config, args.options);
    else if (ghost->parsed()) ghostpin::cmd_ghost(config, args.options);
    else if (analytic->parsed()) ghostpin::cmd_analytic(config, args.options);
    else if (sweep->parsed()) ghostpin::cmd_sweep(config, args.options);
    else if (optimize->parsed()) ghostpin::cmd_optimize(config, args.options);
    return 0;
  } catch (const ghostpin::Error& e) {
    std::fprintf(stderr, "ghostpin: %s\n", e.what());
    return ghostpin::is_config_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ghostpin: %s\n", e.what());
    return 3;
  }
}
