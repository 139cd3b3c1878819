#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sslab/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Magnetic Stark Hamiltonian laboratory"};
  std::string experiment, config_path, out_dir;
  std::vector<std::string> overrides;
  app.add_option("experiment", experiment, "experiment name")
      ->required()
      ->check(CLI::IsMember(sslab::experiment_names()));
  app.add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--set", overrides, "override, section.key=value")->allow_extra_args(false);
  app.add_option("--out", out_dir, "output directory")->required();
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : sslab::kExitError;
  }

  try {
    sslab::Config cfg = config_path.empty() ? sslab::Config() : sslab::Config::from_file(config_path);
    for (const auto& s : overrides) cfg.set(s);
    const auto env = sslab::run_experiment(experiment, cfg);
    sslab::write_envelope(env, out_dir);
    for (const auto& g : env.gates)
      std::cout << (g.pass ? "PASS " : "FAIL ") << g.name << ": " << sslab::format_double(g.value) << " " << g.op
                << " " << (g.op == ">=" ? sslab::format_double(g.lo)
                           : g.op == "<=" ? sslab::format_double(g.hi)
                                          : "[" + sslab::format_double(g.lo) + ", " + sslab::format_double(g.hi) + "]")
                << "\n";
    std::cout << experiment << ": " << (env.pass() ? "pass" : "gate failure") << " (" << env.wall_seconds << " s)\n";
    return env.pass() ? sslab::kExitPass : sslab::kExitGateFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return sslab::kExitError;
  }
}
