#pragma once

#include <string>
#include <vector>

#include "trilinpa/config.hpp"
#include "trilinpa/states.hpp"

namespace trilinpa::app {

// One executed scenario, still in memory. Columns are ordered by the
// config's observable list; rows align with times.
struct RunArtifacts {
  std::vector<double> times;
  std::vector<std::string> columns;  // without the leading t
  std::vector<std::vector<double>> rows;
  long basis_dimension = 0;  // 0 for the linear model
  double truncation_loss = 0.0;
  double final_leakage = 0.0;
  double max_norm_drift = 0.0;
  bool norm_ok = true;
  double wall_ms = 0.0;
};

// Runs the scenario. Fock models evolve the capped four-mode problem (the
// input state is prepared at t = 0, or at the window start for pulsed
// schedules); the linear model propagates Gaussian moments in closed form.
RunArtifacts run_scenario(const ScenarioConfig& cfg);

// Looks a column up by name; throws ValidationError when absent.
double run_cell(const RunArtifacts& run, const std::string& column,
                std::size_t row);

// timeseries.csv, run.meta and plot.gp under dir (created when missing).
// CSV bytes are deterministic; run.meta carries the wall time and is
// exempt from byte-level reproducibility.
void write_run(const RunArtifacts& run, const ScenarioConfig& cfg,
               const std::string& dir);

// Shared CSV cell format: shortest 17-significant-digit decimal (%.17g).
std::string format_csv_cell(double v);

// Builds the initial state of a Fock-model scenario over the given basis.
QuantumState scenario_state(const ScenarioConfig& cfg,
                            const FockBasisPtr& basis);

// Basis for a Fock-model scenario: sector-filtered when both occupied
// inputs are Fock-like (vacuum counts), charge-blind otherwise.
FockBasisPtr scenario_basis(const ScenarioConfig& cfg);

}  // namespace trilinpa::app
