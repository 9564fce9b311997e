#include <iostream>
#include <utility>

#include "CLI11.hpp"

#include "aqrsm/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"dissipative anisotropic Rabi-Stark model pipeline"};
  app.set_version_flag("--version", aqrsm::kVersion);
  app.require_subcommand(1);

  aqrsm::cli::Options opt;
  std::string out;
  std::string scale;
  const std::pair<const char*, const char*> commands[] = {
      {"spectrum", "energies and parities along g"},
      {"critical", "ground-state critical coupling and level crossings"},
      {"observables", "steady-state statistics at one parameter point"},
      {"sweep", "1-D or 2-D parameter sweep, optional SVG heatmap"}};
  for (const auto& [name, about] : commands) {
    CLI::App* sub = app.add_subcommand(name, about);
    sub->add_option("--config", opt.config_path, "JSON config file")->required();
    sub->add_option("--out", out, "output directory (overrides output.dir)");
    sub->add_option("--workers", opt.workers, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--scale", scale, "heatmap colour scale")->check(CLI::IsMember({"linear", "log10"}));
    if (std::string(name) == "sweep") sub->add_flag("--plot", opt.plot, "write sweep.svg");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : aqrsm::cli::kConfigError;
  }
  opt.command = app.get_subcommands().front()->get_name();
  if (!out.empty()) opt.out = out;
  if (scale == "linear") opt.scale = aqrsm::io::ColorScale::linear;
  if (scale == "log10") opt.scale = aqrsm::io::ColorScale::log10;
  return aqrsm::cli::run(opt);
}
