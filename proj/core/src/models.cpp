#include "trilinpa/models.hpp"

#include <cmath>
#include <limits>

#include "trilinpa/errors.hpp"

namespace trilinpa {

namespace {

LadderFactor ann(int mode) { return {mode, LadderKind::Annihilate}; }
LadderFactor cre(int mode) { return {mode, LadderKind::Create}; }
LadderFactor num(int mode) { return {mode, LadderKind::Number}; }

double gaussian_env(double t, double center, double width) {
  const double u = (t - center) / width;
  return std::exp(-0.5 * u * u);
}

}  // namespace

double ModelParams::weak_pa_ratio() const {
  if (omega0 <= 0.0) return std::numeric_limits<double>::infinity();
  return epsilon / omega0;
}

void ModelParams::validate() const {
  if (epsilon < 0.0)
    throw ValidationError("params.epsilon must be non-negative");
  if (omega0 < 0.0)
    throw ValidationError("params.omega0 must be non-negative");
  if (!std::isfinite(epsilon) || !std::isfinite(omega0) ||
      !std::isfinite(delta))
    throw ValidationError("params must be finite");
  if (n0 < 1) throw ValidationError("params.n0 must be a positive integer");
}

EffectiveParams effective_couplings(const ModelParams& params) {
  params.validate();
  if (params.delta == 0.0)
    throw ZeroDetuning("effective couplings require delta != 0");
  EffectiveParams eff;
  eff.gamma = 2.0 * params.omega0 * params.omega0 / params.delta;
  eff.mu_c = params.epsilon * params.epsilon / params.delta;
  eff.chi = 2.0 * params.omega0 * params.epsilon / params.delta;
  return eff;
}

void PulseSchedule::validate() const {
  if (!(t_end > t_start))
    throw ValidationError("schedule window must have t_end > t_start");
  if (amplitude < 0.0)
    throw ValidationError("schedule amplitude must be non-negative");
  if (shape != PulseShape::Constant && !(width > 0.0))
    throw ValidationError("pulse width must be positive");
  if (shape == PulseShape::StirapPair && delay < 0.0)
    throw ValidationError("stirap_pair delay must be non-negative");
}

double omega_at(const PulseSchedule& schedule, double t) {
  if (t < schedule.t_start || t > schedule.t_end)
    throw OutOfWindow("schedule evaluated outside its window");
  switch (schedule.shape) {
    case PulseShape::Constant:
      return schedule.amplitude;
    case PulseShape::Gaussian:
      return schedule.amplitude * gaussian_env(t, schedule.center,
                                               schedule.width);
    case PulseShape::StirapPair:
      return schedule.amplitude *
             gaussian_env(t, schedule.center - 0.5 * schedule.delay,
                          schedule.width);
  }
  return 0.0;  // unreachable
}

double pump_scale_at(const PulseSchedule& schedule, double t) {
  if (t < schedule.t_start || t > schedule.t_end)
    throw OutOfWindow("schedule evaluated outside its window");
  if (schedule.shape != PulseShape::StirapPair) return 1.0;
  return gaussian_env(t, schedule.center + 0.5 * schedule.delay,
                      schedule.width);
}

SparseOperator build_full_hamiltonian(const ModelParams& params,
                                      const FockBasisPtr& basis,
                                      double omega_value) {
  params.validate();
  const double eps = params.epsilon;
  std::vector<OperatorTerm> terms;
  terms.push_back({cplx(params.delta, 0.0), {num(ExcMol_e)}});
  terms.push_back({cplx(0.5 * eps, 0.0),
                   {cre(ExcMol_e), ann(Atom_b), ann(Atom_b), ann(Light_a)}});
  terms.push_back({cplx(0.5 * eps, 0.0),
                   {cre(Light_a), cre(Atom_b), cre(Atom_b), ann(ExcMol_e)}});
  terms.push_back({cplx(omega_value, 0.0), {cre(GndMol_g), ann(ExcMol_e)}});
  terms.push_back({cplx(omega_value, 0.0), {cre(ExcMol_e), ann(GndMol_g)}});
  return operator_algebra(basis, terms);
}

HamiltonianParts full_hamiltonian_parts(const ModelParams& params,
                                        const FockBasisPtr& basis) {
  params.validate();
  const double eps = params.epsilon;
  std::vector<OperatorTerm> det_terms{
      {cplx(params.delta, 0.0), {num(ExcMol_e)}}};
  std::vector<OperatorTerm> pump_terms{
      {cplx(0.5 * eps, 0.0),
       {cre(ExcMol_e), ann(Atom_b), ann(Atom_b), ann(Light_a)}},
      {cplx(0.5 * eps, 0.0),
       {cre(Light_a), cre(Atom_b), cre(Atom_b), ann(ExcMol_e)}}};
  std::vector<OperatorTerm> ctrl_terms{
      {cplx(1.0, 0.0), {cre(GndMol_g), ann(ExcMol_e)}},
      {cplx(1.0, 0.0), {cre(ExcMol_e), ann(GndMol_g)}}};
  return {operator_algebra(basis, det_terms),
          operator_algebra(basis, pump_terms),
          operator_algebra(basis, ctrl_terms)};
}

SparseOperator build_effective_hamiltonian(const ModelParams& params,
                                           const FockBasisPtr& basis,
                                           bool include_mu_term) {
  const EffectiveParams eff = effective_couplings(params);
  std::vector<OperatorTerm> terms;
  terms.push_back({cplx(-eff.gamma, 0.0), {num(GndMol_g)}});
  terms.push_back({cplx(-eff.chi, 0.0),
                   {cre(GndMol_g), ann(Atom_b), ann(Atom_b), ann(Light_a)}});
  terms.push_back({cplx(-eff.chi, 0.0),
                   {cre(Light_a), cre(Atom_b), cre(Atom_b), ann(GndMol_g)}});
  if (include_mu_term) {
    // a a† b b b†b† and its adjoint; written out so the term list stays
    // closed under the formal adjoint.
    terms.push_back({cplx(-eff.mu_c, 0.0),
                     {ann(Light_a), cre(Light_a), ann(Atom_b), ann(Atom_b),
                      cre(Atom_b), cre(Atom_b)}});
    terms.push_back({cplx(-eff.mu_c, 0.0),
                     {ann(Atom_b), ann(Atom_b), cre(Atom_b), cre(Atom_b),
                      ann(Light_a), cre(Light_a)}});
  }
  return operator_algebra(basis, terms);
}

SparseOperator build_bogoliubov_hamiltonian(const FockBasisPtr& basis,
                                            double omega, double omega_value,
                                            double delta) {
  std::vector<OperatorTerm> terms;
  terms.push_back({cplx(omega, 0.0), {cre(ExcMol_e), ann(Light_a)}});
  terms.push_back({cplx(omega, 0.0), {cre(Light_a), ann(ExcMol_e)}});
  terms.push_back({cplx(delta, 0.0), {num(ExcMol_e)}});
  terms.push_back({cplx(omega_value, 0.0), {cre(GndMol_g), ann(ExcMol_e)}});
  terms.push_back({cplx(omega_value, 0.0), {cre(ExcMol_e), ann(GndMol_g)}});
  return operator_algebra(basis, terms);
}

DenseMatrix bogoliubov_mode_matrix(const ModelParams& params,
                                   double omega_value) {
  params.validate();
  const double omega = params.omega_pa();
  DenseMatrix m = DenseMatrix::Zero(3, 3);
  m(0, 1) = m(1, 0) = cplx(omega, 0.0);
  m(1, 1) = cplx(params.delta, 0.0);
  m(1, 2) = m(2, 1) = cplx(omega_value, 0.0);
  return m;
}

namespace {

SparseOperator weighted_numbers(const FockBasisPtr& basis,
                                std::initializer_list<std::pair<int, double>>
                                    weights) {
  std::vector<OperatorTerm> terms;
  for (const auto& [mode, w] : weights)
    terms.push_back({cplx(w, 0.0), {num(mode)}});
  return operator_algebra(basis, terms);
}

}  // namespace

SparseOperator charge_c1_operator(const FockBasisPtr& basis) {
  return weighted_numbers(basis,
                          {{Atom_b, 1.0}, {ExcMol_e, 2.0}, {GndMol_g, 2.0}});
}

SparseOperator charge_c2_operator(const FockBasisPtr& basis) {
  return weighted_numbers(basis,
                          {{Light_a, 1.0}, {ExcMol_e, 1.0}, {GndMol_g, 1.0}});
}

SparseOperator charge_c1_effective_operator(const FockBasisPtr& basis) {
  return weighted_numbers(basis, {{Atom_b, 1.0}, {GndMol_g, 2.0}});
}

SparseOperator charge_c2_effective_operator(const FockBasisPtr& basis) {
  return weighted_numbers(basis, {{Light_a, 1.0}, {GndMol_g, 1.0}});
}

}  // namespace trilinpa
