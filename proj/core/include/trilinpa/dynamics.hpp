#pragma once

#include <vector>

#include "trilinpa/models.hpp"
#include "trilinpa/operators.hpp"
#include "trilinpa/states.hpp"
#include "trilinpa/types.hpp"

namespace trilinpa {

inline constexpr double kNormDriftTol = 1e-8;

// Sampled Schroedinger evolution. leakage[k] is the running truncation
// diagnostic Lambda(t_k) = (integral of sqrt(<psi|W|psi>) dt)^2 where W is
// the diagonal of per-source leak weights collected while assembling H;
// it bounds the population that boundary-clipped matrix elements could have
// moved. norm_drift[k] = | ||psi_k|| - 1 |; no renormalization is ever
// applied, and norm_ok flags whether every sample stayed under
// kNormDriftTol.
struct Trajectory {
  std::vector<double> times;
  std::vector<QuantumState> states;
  std::vector<double> leakage;
  std::vector<double> norm_drift;
  bool norm_ok = true;

  double max_norm_drift() const;
  double final_leakage() const;
};

struct EvolveOptions {
  double krylov_tol = 1e-12;  // per-substep Lanczos truncation target
  int krylov_max = 80;        // Krylov dimension ceiling
  int dense_cutoff = 1500;    // below this, one dense eigensolve instead
};

// psi0 lives at t = 0; times must be finite, non-negative and
// non-decreasing. Dimension <= dense_cutoff uses a single dense
// eigendecomposition (exact to roundoff), larger problems use Lanczos with
// full reorthogonalization and adaptive substepping.
Trajectory evolve_fixed(const SparseOperator& h, const QuantumState& psi0,
                        const std::vector<double>& times,
                        const EvolveOptions& options = {});

// One-shot exp(-i h t) psi via dense eigendecomposition; the oracle the
// Krylov path is tested against.
QuantumState dense_propagate(const SparseOperator& h, const QuantumState& psi,
                             double t);

// Time-dependent evolution under
//   H(t) = parts.detuning + pump_scale(t) parts.pump + omega(t) parts.control
// with embedded Dormand-Prince RK45, local tolerance rk_tol. psi0 lives at
// times.front(); all sample times must lie inside the schedule window.
Trajectory evolve_schedule(const HamiltonianParts& parts,
                           const PulseSchedule& schedule,
                           const QuantumState& psi0,
                           const std::vector<double>& times,
                           double rk_tol = 1e-10);

// Mode-space propagator exp(-i m t) for the linearized model; m must be
// hermitian. Heisenberg picture, v(t) = V(t) v(0).
DenseMatrix propagate_linear_modes(const DenseMatrix& m, double t);

}  // namespace trilinpa
