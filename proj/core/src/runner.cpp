#include "trilinpa/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include <Eigen/Core>
#include <json.hpp>

#include "trilinpa/analytic.hpp"
#include "trilinpa/dynamics.hpp"
#include "trilinpa/errors.hpp"
#include "trilinpa/observables.hpp"

namespace trilinpa::app {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

bool fock_like(const ModeSpec& spec) {
  return spec.kind == ModeSpec::Kind::Vacuum ||
         spec.kind == ModeSpec::Kind::Fock;
}

long fock_n(const ModeSpec& spec) {
  return spec.kind == ModeSpec::Kind::Fock ? spec.n : 0;
}

std::vector<cplx> mode_profile(const ModeSpec& spec, int cap,
                               double* tail_loss) {
  *tail_loss = 0.0;
  switch (spec.kind) {
    case ModeSpec::Kind::Vacuum:
    case ModeSpec::Kind::Fock: {
      std::vector<cplx> prof(static_cast<std::size_t>(cap) + 1, cplx(0.0));
      prof[static_cast<std::size_t>(fock_n(spec))] = 1.0;
      return prof;
    }
    case ModeSpec::Kind::Coherent:
      return coherent_profile(cap, spec.amp, tail_loss);
    case ModeSpec::Kind::SqueezedCoherent:
      return squeezed_coherent_profile(cap, spec.r, spec.phi, spec.amp,
                                       tail_loss);
    case ModeSpec::Kind::SqueezedVacuum:
      return squeezed_coherent_profile(cap, spec.r, spec.phi, cplx(0.0),
                                       tail_loss);
  }
  throw ValidationError("unhandled input kind");
}

// Column layout for one observable name under the given model.
std::vector<std::string> observable_columns(const std::string& name,
                                            ModelKind model) {
  const bool linear = model == ModelKind::Linear;
  if (name == "numbers") {
    if (linear) return {"n_a", "n_e", "n_g"};
    return {"n_a", "n_b", "n_e", "n_g"};
  }
  if (name == "mandel_q") return {"Q_a", "Q_g"};
  if (name == "squeezing") return {"S1_a", "S2_a", "S1_g", "S2_g"};
  if (name == "g2_ag") return {"g2_ag"};
  if (name == "charges") return {"C1", "C2"};
  throw ValidationError("observable '" + name + "' is not recognized");
}

void append_fock_cells(const std::string& name, const QuantumState& psi,
                       std::vector<double>& out) {
  if (name == "numbers") {
    for (int m = 0; m < kNumModes; ++m) out.push_back(mode_number(psi, m));
    return;
  }
  if (name == "mandel_q") {
    for (int m : {Mode::Light_a, Mode::GndMol_g}) {
      try {
        out.push_back(mandel_q(psi, m));
      } catch (const EmptyMode&) {
        out.push_back(kNan);
      }
    }
    return;
  }
  if (name == "squeezing") {
    for (int m : {Mode::Light_a, Mode::GndMol_g}) {
      const auto [s1, s2] = quadrature_squeezing(psi, m);
      out.push_back(s1);
      out.push_back(s2);
    }
    return;
  }
  if (name == "g2_ag") {
    try {
      out.push_back(cross_correlation_g2(psi, Mode::Light_a, Mode::GndMol_g));
    } catch (const EmptyMode&) {
      out.push_back(kNan);
    }
    return;
  }
  if (name == "charges") {
    const auto [c1, c2] = charge_expectations(psi);
    out.push_back(c1);
    out.push_back(c2);
    return;
  }
  throw ValidationError("observable '" + name + "' is not recognized");
}

void append_linear_cells(const std::string& name,
                         const LinearOutputMoments& mom,
                         std::vector<double>& out) {
  const GaussianModeMoments& a = mom.modes[0];
  const GaussianModeMoments& g = mom.modes[2];
  if (name == "numbers") {
    for (const auto& m : mom.modes) out.push_back(m.mean_n);
    return;
  }
  if (name == "mandel_q") {
    out.push_back(a.q);
    out.push_back(g.q);
    return;
  }
  if (name == "squeezing") {
    out.push_back(a.s1);
    out.push_back(a.s2);
    out.push_back(g.s1);
    out.push_back(g.s2);
    return;
  }
  if (name == "g2_ag") {
    out.push_back(mom.g2_ag);
    return;
  }
  throw ValidationError("observable '" + name +
                        "' is unavailable in the linear model");
}

RunArtifacts run_linear(const ScenarioConfig& cfg,
                        const std::vector<double>& times) {
  const MixingContext ctx = mixing_angles(
      cfg.params.omega_pa(), cfg.schedule.amplitude, cfg.params.delta);
  RunArtifacts run;
  run.times = times;
  for (const auto& name : cfg.observables)
    for (auto& col : observable_columns(name, cfg.model))
      run.columns.push_back(col);
  run.rows.reserve(times.size());
  for (double t : times) {
    const LinearOutputMoments mom = linear_output_moments(ctx, cfg.input, t);
    std::vector<double> row;
    row.reserve(run.columns.size());
    for (const auto& name : cfg.observables)
      append_linear_cells(name, mom, row);
    run.rows.push_back(std::move(row));
  }
  return run;
}

RunArtifacts run_fock(const ScenarioConfig& cfg,
                      const std::vector<double>& times) {
  const FockBasisPtr basis = scenario_basis(cfg);
  const QuantumState psi0 = scenario_state(cfg, basis);

  Trajectory traj;
  std::size_t drop = 0;
  if (cfg.model == ModelKind::Full &&
      cfg.schedule.shape != PulseShape::Constant) {
    const HamiltonianParts parts = full_hamiltonian_parts(cfg.params, basis);
    // The pulsed input is prepared at the window start so the envelope can
    // ramp before the first sample.
    std::vector<double> march = times;
    if (times.front() > cfg.schedule.t_start) {
      march.insert(march.begin(), cfg.schedule.t_start);
      drop = 1;
    }
    traj = evolve_schedule(parts, cfg.schedule, psi0, march);
  } else {
    SparseOperator h =
        cfg.model == ModelKind::Full
            ? build_full_hamiltonian(cfg.params, basis, cfg.schedule.amplitude)
            : build_effective_hamiltonian(cfg.params, basis,
                                          cfg.include_mu_term);
    traj = evolve_fixed(h, psi0, times);
  }

  RunArtifacts run;
  run.times = times;
  run.basis_dimension = static_cast<long>(basis->dimension());
  run.truncation_loss = psi0.truncation_loss();
  run.final_leakage = traj.final_leakage();
  run.max_norm_drift = traj.max_norm_drift();
  run.norm_ok = traj.norm_ok;
  for (const auto& name : cfg.observables)
    for (auto& col : observable_columns(name, cfg.model))
      run.columns.push_back(col);
  run.rows.reserve(times.size());
  for (std::size_t k = drop; k < traj.states.size(); ++k) {
    std::vector<double> row;
    row.reserve(run.columns.size());
    for (const auto& name : cfg.observables)
      append_fock_cells(name, traj.states[k], row);
    run.rows.push_back(std::move(row));
  }
  return run;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace

std::string format_csv_cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

FockBasisPtr scenario_basis(const ScenarioConfig& cfg) {
  if (cfg.model == ModelKind::Linear)
    throw ValidationError("the linear model has no Fock basis");
  if (fock_like(cfg.input.light) && fock_like(cfg.input.atoms)) {
    const Occupation occ = {static_cast<int>(fock_n(cfg.input.light)),
                            static_cast<int>(fock_n(cfg.input.atoms)), 0, 0};
    const SectorFilter sector = {charge_c1(occ), charge_c2(occ)};
    return std::make_shared<const FockBasis>(cfg.caps, sector);
  }
  return std::make_shared<const FockBasis>(cfg.caps);
}

QuantumState scenario_state(const ScenarioConfig& cfg,
                            const FockBasisPtr& basis) {
  if (basis->sector().has_value()) {
    const Occupation occ = {static_cast<int>(fock_n(cfg.input.light)),
                            static_cast<int>(fock_n(cfg.input.atoms)), 0, 0};
    return fock_state(basis, occ);
  }
  std::array<std::vector<cplx>, kNumModes> profiles;
  std::array<double, kNumModes> tails{};
  profiles[Mode::Light_a] = mode_profile(
      cfg.input.light, cfg.caps[Mode::Light_a], &tails[Mode::Light_a]);
  profiles[Mode::Atom_b] = mode_profile(
      cfg.input.atoms, cfg.caps[Mode::Atom_b], &tails[Mode::Atom_b]);
  ModeSpec vac;
  profiles[Mode::ExcMol_e] =
      mode_profile(vac, cfg.caps[Mode::ExcMol_e], &tails[Mode::ExcMol_e]);
  profiles[Mode::GndMol_g] =
      mode_profile(vac, cfg.caps[Mode::GndMol_g], &tails[Mode::GndMol_g]);
  return product_state(basis, profiles, tails);
}

RunArtifacts run_scenario(const ScenarioConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<double> times = cfg.times.resolve();
  RunArtifacts run = cfg.model == ModelKind::Linear ? run_linear(cfg, times)
                                                    : run_fock(cfg, times);
  run.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
  return run;
}

double run_cell(const RunArtifacts& run, const std::string& column,
                std::size_t row) {
  if (row >= run.rows.size())
    throw ValidationError("run has no row " + std::to_string(row));
  for (std::size_t c = 0; c < run.columns.size(); ++c)
    if (run.columns[c] == column) return run.rows[row][c];
  throw ValidationError("run has no column '" + column + "'");
}

void write_run(const RunArtifacts& run, const ScenarioConfig& cfg,
               const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "'");

  std::string csv = "t";
  for (const auto& col : run.columns) csv += "," + col;
  csv += "\n";
  for (std::size_t k = 0; k < run.rows.size(); ++k) {
    csv += format_csv_cell(run.times[k]);
    for (double v : run.rows[k]) csv += "," + format_csv_cell(v);
    csv += "\n";
  }
  write_text_file(fs::path(dir) / "timeseries.csv", csv);

  nlohmann::ordered_json meta;
  meta["config"] = nlohmann::ordered_json::parse(resolved_config_json(cfg));
  meta["result"] = {{"basis_dimension", run.basis_dimension},
                    {"truncation_loss", run.truncation_loss},
                    {"final_leakage", run.final_leakage},
                    {"max_norm_drift", run.max_norm_drift},
                    {"norm_ok", run.norm_ok},
                    {"samples", run.rows.size()},
                    {"wall_ms", run.wall_ms}};
  meta["environment"] = {
      {"compiler", __VERSION__},
      {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                    std::to_string(EIGEN_MAJOR_VERSION) + "." +
                    std::to_string(EIGEN_MINOR_VERSION)},
      {"cpp", static_cast<long>(__cplusplus)},
#ifdef NDEBUG
      {"assertions", false},
#else
      {"assertions", true},
#endif
  };
  write_text_file(fs::path(dir) / "run.meta", meta.dump(2) + "\n");

  std::string gp;
  gp += "# plots timeseries.csv from the same directory\n";
  gp += "set datafile separator ','\n";
  gp += "set key autotitle columnhead outside\n";
  gp += "set xlabel 't  [1/Omega0]'\n";
  gp += "set grid\n";
  gp += "plot for [i=2:" + std::to_string(run.columns.size() + 1) +
        "] 'timeseries.csv' using 1:i with lines\n";
  write_text_file(fs::path(dir) / "plot.gp", gp);
}

}  // namespace trilinpa::app
