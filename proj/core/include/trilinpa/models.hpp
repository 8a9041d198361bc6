#pragma once

#include "trilinpa/operators.hpp"
#include "trilinpa/types.hpp"

namespace trilinpa {

// Physical inputs, hbar = 1. All frequencies are quoted in units of the
// control Rabi scale Omega_0 and times in 1/Omega_0.
struct ModelParams {
  double epsilon = 0.0;  // PA coupling of the quantized light, > 0
  double omega0 = 0.0;   // control Rabi frequency reference value, >= 0
  double delta = 0.0;    // intermediate detuning
  long n0 = 0;           // total atom-equivalent charge N0, > 0

  // Bogoliubov coupling omega = epsilon N0 / 2, with b0 = sqrt(N0) taken
  // real positive (a b0 phase only rotates the light quadrature reference).
  double omega_pa() const { return 0.5 * epsilon * static_cast<double>(n0); }

  // The adiabatic elimination behind the effective model assumes a weak PA
  // field, epsilon much smaller than omega0; the audit warns past 0.1.
  double weak_pa_ratio() const;

  void validate() const;
};

struct EffectiveParams {
  double gamma = 0.0;  // 2 Omega^2 / delta
  double mu_c = 0.0;   // epsilon^2 / delta (mu names the coupling, not the
                       // atomic amplitude, which is called beta throughout)
  double chi = 0.0;    // 2 Omega epsilon / delta

  // gamma * mu_c = chi^2 / 2 holds exactly by construction.
};

EffectiveParams effective_couplings(const ModelParams& params);

enum class PulseShape { Constant, Gaussian, StirapPair };

// Control-field envelope Omega(t), plus the pump envelope for the
// counterintuitive pair. For StirapPair the control Gaussian is centered at
// center - delay/2 and the pump at center + delay/2, so the control leads.
struct PulseSchedule {
  PulseShape shape = PulseShape::Constant;
  double amplitude = 0.0;
  double center = 0.0;
  double width = 1.0;
  double delay = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;

  void validate() const;
};

// Omega(t); throws OutOfWindow outside [t_start, t_end].
double omega_at(const PulseSchedule& schedule, double t);

// Dimensionless factor multiplying epsilon at time t: the pump Gaussian for
// StirapPair, 1 otherwise.
double pump_scale_at(const PulseSchedule& schedule, double t);

// Full four-mode Hamiltonian,
// H = delta e†e + (epsilon/2)(e†bba + h.c.) + omega_value (g†e + h.c.).
// Commutes with both charges by construction.
SparseOperator build_full_hamiltonian(const ModelParams& params,
                                      const FockBasisPtr& basis,
                                      double omega_value);

// Split of the full Hamiltonian for time-dependent drives,
// H(t) = detuning + pump_scale(t) * pump + omega(t) * control,
// with pump = (epsilon/2)(e†bba + h.c.) and control = g†e + e†g at unit
// amplitude. build_full_hamiltonian(p, b, w) equals
// detuning + pump + w * control.
struct HamiltonianParts {
  SparseOperator detuning;
  SparseOperator pump;
  SparseOperator control;
};

HamiltonianParts full_hamiltonian_parts(const ModelParams& params,
                                        const FockBasisPtr& basis);

// Effective trilinear Hamiltonian after eliminating mode e,
// H3 = -gamma g†g - chi (g†bba + h.c.) [- mu_c (a a† b b b† b† + h.c.)].
// The mu term is the diagonal correction usually dropped for mu_c << gamma;
// it stays behind a toggle so its effect can be quantified.
SparseOperator build_effective_hamiltonian(const ModelParams& params,
                                           const FockBasisPtr& basis,
                                           bool include_mu_term);

// Linearized (undepleted-atom) model on the Fock space of (a, e, g):
// H = omega (e†a + a†e) + delta e†e + omega_value (g†e + e†g). Mode b is
// untouched; use cap_b = 0 to keep the basis small.
SparseOperator build_bogoliubov_hamiltonian(const FockBasisPtr& basis,
                                            double omega, double omega_value,
                                            double delta);

// Mode-space matrix of the linearized model over (a, e, g):
// [[0, omega, 0], [omega, delta, omega_value], [0, omega_value, 0]].
DenseMatrix bogoliubov_mode_matrix(const ModelParams& params,
                                   double omega_value);

// Conserved charges. C1 = n_b + 2 n_e + 2 n_g and C2 = n_a + n_e + n_g for
// the full model; the effective model conserves the primed pair
// C1' = n_b + 2 n_g and C2' = n_a + n_g (identical on bases with cap_e = 0).
SparseOperator charge_c1_operator(const FockBasisPtr& basis);
SparseOperator charge_c2_operator(const FockBasisPtr& basis);
SparseOperator charge_c1_effective_operator(const FockBasisPtr& basis);
SparseOperator charge_c2_effective_operator(const FockBasisPtr& basis);

}  // namespace trilinpa
