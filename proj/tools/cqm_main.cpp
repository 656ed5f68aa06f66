// cqm: figure reproductions and custom protocol sweeps, written as CSV.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cqm/errors.hpp"
#include "cqm/experiments.hpp"
#include "cqm/kernels.hpp"
#include "cqm/run_config.hpp"

#ifndef CQM_PLOT_SCRIPT
#define CQM_PLOT_SCRIPT "plot_figures.py"
#endif

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int run(cqm::Experiment experiment, const std::optional<std::string>& config, const std::optional<std::string>& out,
        const std::vector<std::string>& sets, int jobs, bool plots) {
  std::vector<std::string> overrides = sets;
  if (out) overrides.push_back("output_dir=" + *out);
  if (jobs > 0) overrides.push_back("jobs=" + std::to_string(jobs));
  if (plots) overrides.push_back("emit_plots=true");
  const cqm::RunConfig cfg = cqm::load_run_config(experiment, config, overrides);

  cqm::kernels::set_thread_count(cfg.jobs);
  std::size_t failures = 0;
  for (const auto& path : cqm::run_and_write(cfg, failures)) std::cout << path << '\n';

  if (cfg.emit_plots) {
    const std::string cmd = std::string("python3 \"") + CQM_PLOT_SCRIPT + "\" \"" + cfg.output_dir + "\"";
    if (std::system(cmd.c_str()) != 0) std::cerr << "warning: plotting step failed\n";
  }
  if (failures > 0) {
    std::cerr << failures << " propagation(s) failed; their fields are empty\n";
    return kExitNumerical;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adiabatic and counter-diabatic critical metrology experiments"};
  app.require_subcommand(1);

  std::optional<std::string> config;
  std::optional<std::string> out;
  std::vector<std::string> sets;
  int jobs = 0;
  bool plots = false;

  for (const char* name : {"fig1", "fig2", "fig3", "fig4", "fig6", "custom"}) {
    CLI::App* sub = app.add_subcommand(name, std::string("run ") + name);
    sub->add_option("--config", config, "key=value configuration file");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--set", sets, "override one configuration key (KEY=VALUE)")->allow_extra_args(false);
    sub->add_option("--jobs", jobs, "worker threads (0: runtime default)")->check(CLI::NonNegativeNumber);
    sub->add_flag("--plots", plots, "render plots from the CSV files afterwards");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    const CLI::App* chosen = app.get_subcommands().front();
    return run(cqm::parse_experiment(chosen->get_name()), config, out, sets, jobs, plots);
  } catch (const cqm::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const cqm::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const cqm::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}
