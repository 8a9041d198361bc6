#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>

#include "trilinpa/models.hpp"
#include "trilinpa/normal_order.hpp"
#include "trilinpa/types.hpp"

namespace trilinpa {

// Closed-form predictions plus exact Gaussian moment propagation: the oracle
// side of every audit comparison. Formula values are returned as printed in
// their source even where they disagree with the exact propagation; the
// audit decides what to make of the difference. Corrected forms carry the
// derivation in comments next to their implementation.

struct SqueezingPair {
  double s1 = 0.0;
  double s2 = 0.0;
};

// One mode of the factorized input. The atomic coherent amplitude is called
// beta throughout (amp here); mu is reserved for the effective coupling.
struct ModeSpec {
  enum class Kind { Vacuum, Fock, Coherent, SqueezedCoherent, SqueezedVacuum };
  Kind kind = Kind::Vacuum;
  long n = 0;          // Fock
  cplx amp = 0.0;      // alpha / beta
  double r = 0.0;      // squeeze modulus
  double phi = 0.0;    // squeeze angle, convention of states.hpp
};

// Molecules start in vacuum throughout; only light and atoms are free.
struct InputSpec {
  ModeSpec light;
  ModeSpec atoms;
};

bool gaussian_input(const ModeSpec& spec);  // anything but Fock
double mean_occupation(const ModeSpec& spec);
ModeInput to_mode_input(const ModeSpec& spec);

struct MixingContext {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double lambda_ = 0.0;      // sqrt(omega^2 + Omega^2)
  double omega_plus = 0.0;   // (delta + sqrt(4 lambda^2 + delta^2)) / 2
  double omega_minus = 0.0;  // (delta - sqrt(4 lambda^2 + delta^2)) / 2
  double omega_zero = 0.0;   // identically zero dressed branch
  double omega = 0.0;        // epsilon N0 / 2

  double control() const { return lambda_ * std::cos(theta1); }  // Omega
  double detuning() const { return omega_plus + omega_minus; }   // delta
};

// theta1 = atan2(omega, Omega) in [0, pi/2]; 2 theta2 = atan2(2 lambda,
// delta) in (0, pi). Throws DegenerateCoupling at omega = Omega = 0.
MixingContext mixing_angles(double omega, double omega_value, double delta);

// Rows (a, e, g), columns (+, 0, -):
//   [ sin t1 sin t2,  cos t1,  sin t1 cos t2 ]
//   [ cos t2,         0,      -sin t2        ]
//   [ cos t1 sin t2, -sin t1,  cos t1 cos t2 ]
// Orthogonal with det -1. The columns are the eigenvectors, so it is
// U^T M U (not U M U^T) that equals diag(omega_plus, 0, omega_minus).
RealMatrix transformation_matrix(const MixingContext& ctx);

// Intermediate population as printed:
// sin^2 t1 sin^2 t2 cos^2 t2 [1 - cos((w+ - w-) t)] n_scale.
double predicted_population_e(const MixingContext& ctx, double t,
                              double n_scale);
// Exact counterpart |V_ea(t)|^2 n_scale = 2 * printed form (any delta).
double corrected_population_e(const MixingContext& ctx, double t,
                              double n_scale);

struct PopulationG {
  double eq5 = 0.0;           // sin^2 t1 cos^2 t1 [1 - cos(w+ t)] n_scale
  double eq6_transfer = 0.0;  // [2 w W / (w^2 + W^2)]^2 n_scale
};
PopulationG predicted_population_g(const MixingContext& ctx, double t,
                                   double n_scale);
// Exact |V_ga(t)|^2 n_scale; reduces to the bracket-squared form at
// delta = 0 and to eq6_transfer at the transfer time.
double corrected_population_g(const MixingContext& ctx, double t,
                              double n_scale);

// Transfer-time Mandel Q of the molecules given the input light's Q.
double predicted_mandel_transfer(const MixingContext& ctx, double q_a0);
double corrected_mandel_transfer(const MixingContext& ctx, double q_a0);

// Transfer-time molecular squeezing for squeezed light input:
// 2 sin^2(2 t1) sinh r1 (sinh r1 -/+ cosh r1 cos phi1).
SqueezingPair predicted_linear_squeezing(const MixingContext& ctx, double r1,
                                         double phi1);

struct GaussianModeMoments {
  double mean_n = 0.0;
  double q = 0.0;  // NaN when the mode is empty
  double s1 = 0.0;
  double s2 = 0.0;
  cplx amp = 0.0;  // <m>
};

struct LinearOutputMoments {
  // index order (a, e, g) of the linearized model
  std::array<GaussianModeMoments, 3> modes;
  double g2_ag = 0.0;  // NaN when either mean vanishes
};

// Exact moments under the mode mixing V(t): m -> V m, N -> V* N V^T,
// A -> V A V^T for N_jk = <dv_j† dv_k>, A_jk = <dv_j dv_k>. Atoms are
// already folded into omega; only the light entry of the input is read.
// Throws NonGaussianInput for Fock light.
LinearOutputMoments linear_output_moments(const MixingContext& ctx,
                                          const InputSpec& input, double t);

struct ShortTimeMoments {
  int order = 2;
  // name -> coefficients (c0, c1, c2) of c0 + c1 t + c2 t^2. Keys: n_a, n_b,
  // n_g, na_ng, s1_a, s2_a, s1_g, s2_g.
  std::map<std::string, std::array<double, 3>> predictions;

  double eval(const std::string& name, double t) const;
};

// O(t^2) moments generated mechanically from the effective Hamiltonian via
// K + it[H,K] - t^2/2 [H,[H,K]] and the symbolic expectation rules. The
// faithful truth for whatever Hamiltonian the toggle selects.
ShortTimeMoments shorttime_moments(const InputSpec& input,
                                   const EffectiveParams& eff, double t,
                                   bool include_mu_term = false);

// Same moment set assembled from the printed second-order operator
// solutions (delta-a, delta-b, delta-g with N and M_b0 = b†b†bb/2), kept
// separate so the two routes can be diffed term by term.
ShortTimeMoments eq12_literal_moments(const InputSpec& input,
                                      const EffectiveParams& eff, double t);

struct DepletedPrediction {
  SqueezingPair light;          // printed light pair, when one exists
  SqueezingPair molecules;      // printed molecular pair
  std::string light_id;         // "Eq13" or empty
  std::string molecules_id;     // "Eq14" / "Eq15" / "Eq16"
};

// Printed depleted-regime squeezing for the three treated input combos:
// coherent+coherent (light and molecules), squeezed light + coherent atoms
// (molecules), coherent light + squeezed atoms (molecules). Throws
// ValidationError for other combinations and OutsideValidityWindow past
// t |chi| n_atoms > 0.3.
DepletedPrediction predicted_depleted_squeezing(const InputSpec& input,
                                                const EffectiveParams& eff,
                                                double t);

struct G2Prediction {
  double value = 0.0;         // quoted prediction where one exists
  double moment_value = 0.0;  // <N(N-1)>/<N>^2 of the input light: the exact
                              // t->0 limit of g2_ag for factorized inputs
};

// Short-time cross-correlation g2_ag. The ratio cancels every atomic moment
// for factorized inputs, so only the light statistics enter. Throws
// EmptyMode for unpopulated light.
G2Prediction predicted_g2(const InputSpec& input, const EffectiveParams& eff,
                          double t);

// <a†a g†g>(t) to leading order: 2 chi^2 t^2 <N_a(N_a - 1) M_b>, evaluated
// exactly in the input state. Feeds the g2 audit numerator.
double g2_numerator_t2(const InputSpec& input, const EffectiveParams& eff,
                       double t);

}  // namespace trilinpa
