#pragma once

#include <array>
#include <vector>

#include "trilinpa/fock_basis.hpp"
#include "trilinpa/types.hpp"

namespace trilinpa {

// Normalized amplitude vector over a shared basis. truncation_loss is the
// probability weight the caps discarded at construction time; propagation
// does not touch it.
class QuantumState {
 public:
  QuantumState(FockBasisPtr basis, Vector amps, double truncation_loss = 0.0);

  const FockBasisPtr& basis() const { return basis_; }
  const Vector& amps() const { return amps_; }
  Vector& amps() { return amps_; }
  double truncation_loss() const { return truncation_loss_; }
  double norm() const { return amps_.norm(); }

 private:
  FockBasisPtr basis_;
  Vector amps_;
  double truncation_loss_;
};

inline constexpr double kDefaultTruncationTol = 1e-10;

QuantumState fock_state(const FockBasisPtr& basis, const Occupation& occ);

// |alpha> on one mode, vacuum elsewhere. Requires a charge-blind basis
// (coherent states superpose charge sectors). Throws TruncationTooSevere
// when the Poisson tail beyond the cap reaches tol.
QuantumState coherent_state(const FockBasisPtr& basis, int mode, cplx alpha,
                            double tol = kDefaultTruncationTol);

// S(r, angle)|alpha> with S = exp[(r/2)(e^{i angle} a^2 - e^{-i angle} a†^2)],
// so the angle = 0 quadrature variances are (e^{-2r}/4, e^{2r}/4) and the
// mean transforms to alpha cosh r - e^{-i angle} conj(alpha) sinh r. Built in
// a padded space, cap' = cap + max(8, ceil(10 sinh^2 r)), then projected and
// renormalized.
QuantumState squeezed_coherent_state(const FockBasisPtr& basis, int mode,
                                     double r, double angle, cplx alpha,
                                     double tol = kDefaultTruncationTol);

// Per-mode single-mode amplitude profiles combined into the product state
// over a charge-blind basis. profiles[m] has length caps[m] + 1; tail_loss[m]
// is the analytic weight beyond the cap for that mode. Used by the scenario
// runner to combine light and atom inputs.
QuantumState product_state(const FockBasisPtr& basis,
                           const std::array<std::vector<cplx>, kNumModes>& profiles,
                           const std::array<double, kNumModes>& tail_loss,
                           double tol = kDefaultTruncationTol);

// Single-mode amplitude profiles (length cap + 1, unnormalized tail loss
// reported separately). These feed product_state.
std::vector<cplx> coherent_profile(int cap, cplx alpha, double* tail_loss);
std::vector<cplx> squeezed_coherent_profile(int cap, double r, double angle,
                                            cplx alpha, double* tail_loss);

}  // namespace trilinpa
