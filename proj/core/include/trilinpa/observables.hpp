#pragma once

#include <utility>

#include <Eigen/Dense>

#include "trilinpa/states.hpp"
#include "trilinpa/types.hpp"

namespace trilinpa {

// All expectations are normalized by <psi|psi> so a slightly decayed norm
// (leakage) cannot masquerade as population transfer. Amplitude-type
// expectations <m> and <m^2> are evaluated within the retained basis;
// contributions whose partner state was truncated away are absent, which is
// the same approximation the dynamics itself makes.

inline constexpr double kEmptyModeTol = 1e-14;

double mode_number(const QuantumState& psi, int mode);
double mode_number_variance(const QuantumState& psi, int mode);

// Mandel Q = (Var n - <n>) / <n>. Throws EmptyMode below kEmptyModeTol.
double mandel_q(const QuantumState& psi, int mode);

cplx mode_amplitude(const QuantumState& psi, int mode);  // <m>
cplx mode_square(const QuantumState& psi, int mode);     // <m^2>

// Normally ordered quadrature variances (S1, S2) for X1 = (m + m†)/2 and
// X2 = (m - m†)/(2i): S = 4 Var X - 1, so vacuum gives (0, 0) and S < 0
// flags squeezing. S1 = 2<n> + 2 Re<m^2> - 4 (Re<m>)^2 and S2 likewise with
// the sign of <m^2> flipped and Im<m>.
std::pair<double, double> quadrature_squeezing(const QuantumState& psi,
                                               int mode);

// <n_p n_q> / (<n_p><n_q>); throws EmptyMode when either mean vanishes.
double cross_correlation_g2(const QuantumState& psi, int mode_p, int mode_q);

// (C1, C2) = (n_b + 2 n_e + 2 n_g, n_a + n_e + n_g).
std::pair<double, double> charge_expectations(const QuantumState& psi);

// Marginal occupation distribution of one mode, length cap + 1.
Eigen::VectorXd number_distribution(const QuantumState& psi, int mode);

// Max deviation of [X1, X2] from i/2 over matrix rows whose mode occupation
// sits strictly below the cap. Confirms the hard-coded 1/4 vacuum variance
// against the ladder algebra on the truncated basis.
double quadrature_commutator_deviation(const FockBasisPtr& basis, int mode);

}  // namespace trilinpa
