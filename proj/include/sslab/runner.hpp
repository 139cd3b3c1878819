#pragma once

#include <string>
#include <vector>

#include "sslab/config.hpp"
#include "sslab/hamiltonian.hpp"
#include "sslab/report.hpp"
#include "sslab/spectral.hpp"

namespace sslab {

const std::vector<std::string>& experiment_names();

GridSpec grid_from(const Config& c);
GridSpec grid_from(const Config& c, int nx, int ny);
FieldParams fields_from(const Config& c);
// Applies potential.clamp against the configured eps.
PotentialSpec potential_from(const Config& c);
BumpFunction function_from(const Config& c);
WeightSpec weight_from(const Config& c);

struct Level {
  int nx = 0, ny = 0;
};

// experiment.levels (and levels_ny); empty when no refinement was requested.
// Fewer than three levels is a configuration error.
std::vector<Level> levels_from(const Config& c);

// Observed order between successive levels: log(r_k / r_k+1) / log(h_k / h_k+1).
std::vector<double> observed_orders(const std::vector<double>& h, const std::vector<double>& residual);

// Runs one experiment. Applies thread count and dense limit from the config.
Envelope run_experiment(const std::string& name, const Config& c);

enum ExitCode { kExitPass = 0, kExitError = 1, kExitGateFail = 2 };

}  // namespace sslab
