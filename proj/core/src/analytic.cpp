#include "trilinpa/analytic.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "trilinpa/dynamics.hpp"
#include "trilinpa/errors.hpp"
#include "trilinpa/observables.hpp"

namespace trilinpa {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

PowerKey key_of(std::initializer_list<std::pair<int, std::pair<int, int>>>
                    exps) {
  PowerKey key{};
  for (const auto& [mode, pq] : exps) {
    key[static_cast<std::size_t>(2 * mode)] = pq.first;
    key[static_cast<std::size_t>(2 * mode + 1)] = pq.second;
  }
  return key;
}

}  // namespace

bool gaussian_input(const ModeSpec& spec) {
  return spec.kind != ModeSpec::Kind::Fock;
}

double mean_occupation(const ModeSpec& spec) {
  const double s = std::sinh(spec.r);
  switch (spec.kind) {
    case ModeSpec::Kind::Vacuum:
      return 0.0;
    case ModeSpec::Kind::Fock:
      return static_cast<double>(spec.n);
    case ModeSpec::Kind::Coherent:
      return std::norm(spec.amp);
    case ModeSpec::Kind::SqueezedCoherent:
      return std::norm(spec.amp) + s * s;
    case ModeSpec::Kind::SqueezedVacuum:
      return s * s;
  }
  return 0.0;  // unreachable
}

ModeInput to_mode_input(const ModeSpec& spec) {
  ModeInput in;
  switch (spec.kind) {
    case ModeSpec::Kind::Vacuum:
      in.kind = ModeInputKind::Vacuum;
      break;
    case ModeSpec::Kind::Fock:
      if (spec.n < 0) throw ValidationError("fock occupation must be >= 0");
      in.kind = ModeInputKind::Fock;
      in.fock_n = spec.n;
      break;
    case ModeSpec::Kind::Coherent:
      in.kind = ModeInputKind::Coherent;
      in.alpha = spec.amp;
      break;
    case ModeSpec::Kind::SqueezedCoherent:
      in.kind = ModeInputKind::SqueezedCoherent;
      in.alpha = spec.amp;
      in.r = spec.r;
      in.angle = spec.phi;
      break;
    case ModeSpec::Kind::SqueezedVacuum:
      in.kind = ModeInputKind::SqueezedCoherent;
      in.r = spec.r;
      in.angle = spec.phi;
      break;
  }
  return in;
}

MixingContext mixing_angles(double omega, double omega_value, double delta) {
  if (omega < 0.0 || omega_value < 0.0)
    throw ValidationError("mixing angles expect omega, Omega >= 0");
  if (omega == 0.0 && omega_value == 0.0)
    throw DegenerateCoupling("mixing angles undefined at omega = Omega = 0");
  MixingContext ctx;
  ctx.omega = omega;
  ctx.lambda_ = std::hypot(omega, omega_value);
  ctx.theta1 = std::atan2(omega, omega_value);
  ctx.theta2 = 0.5 * std::atan2(2.0 * ctx.lambda_, delta);
  const double root =
      std::sqrt(4.0 * ctx.lambda_ * ctx.lambda_ + delta * delta);
  ctx.omega_plus = 0.5 * (delta + root);
  ctx.omega_minus = 0.5 * (delta - root);
  ctx.omega_zero = 0.0;
  return ctx;
}

RealMatrix transformation_matrix(const MixingContext& ctx) {
  const double s1 = std::sin(ctx.theta1), c1 = std::cos(ctx.theta1);
  const double s2 = std::sin(ctx.theta2), c2 = std::cos(ctx.theta2);
  RealMatrix u(3, 3);
  u << s1 * s2, c1, s1 * c2,
       c2, 0.0, -s2,
       c1 * s2, -s1, c1 * c2;
  return u;
}

double predicted_population_e(const MixingContext& ctx, double t,
                              double n_scale) {
  const double s1 = std::sin(ctx.theta1);
  const double s2 = std::sin(ctx.theta2), c2 = std::cos(ctx.theta2);
  const double beat = ctx.omega_plus - ctx.omega_minus;
  return s1 * s1 * s2 * s2 * c2 * c2 * (1.0 - std::cos(beat * t)) * n_scale;
}

double corrected_population_e(const MixingContext& ctx, double t,
                              double n_scale) {
  // |V_ea(t)|^2 = 2 sin^2 t1 sin^2 t2 cos^2 t2 [1 - cos((w+ - w-) t)]:
  // exactly twice the printed form, for every detuning.
  return 2.0 * predicted_population_e(ctx, t, n_scale);
}

PopulationG predicted_population_g(const MixingContext& ctx, double t,
                                   double n_scale) {
  const double s1 = std::sin(ctx.theta1), c1 = std::cos(ctx.theta1);
  PopulationG out;
  out.eq5 = s1 * s1 * c1 * c1 * (1.0 - std::cos(ctx.omega_plus * t)) * n_scale;
  const double s2t = 2.0 * s1 * c1;  // sin(2 theta1) = 2 w W / (w^2 + W^2)
  out.eq6_transfer = s2t * s2t * n_scale;
  return out;
}

double corrected_population_g(const MixingContext& ctx, double t,
                              double n_scale) {
  // V_ga(t) = s1 c1 [sin^2 t2 e^{-i w+ t} + cos^2 t2 e^{-i w- t} - 1]
  const double s1 = std::sin(ctx.theta1), c1 = std::cos(ctx.theta1);
  const double s2 = std::sin(ctx.theta2), c2 = std::cos(ctx.theta2);
  const cplx z = s2 * s2 * std::exp(cplx(0.0, -ctx.omega_plus * t)) +
                 c2 * c2 * std::exp(cplx(0.0, -ctx.omega_minus * t)) - 1.0;
  return s1 * s1 * c1 * c1 * std::norm(z) * n_scale;
}

double predicted_mandel_transfer(const MixingContext& ctx, double q_a0) {
  const double c1 = std::cos(ctx.theta1);
  const double s2 = std::sin(ctx.theta2);
  return 4.0 * c1 * c1 * s2 * s2 * q_a0;
}

double corrected_mandel_transfer(const MixingContext& ctx, double q_a0) {
  // g(tau) = -sin(2 t1) a(0) - cos(2 t1) g(0) with vacuum g in: the molecular
  // Q is the light Q scaled by the beamsplitter transmittance sin^2(2 t1).
  const double s2t = std::sin(2.0 * ctx.theta1);
  return s2t * s2t * q_a0;
}

SqueezingPair predicted_linear_squeezing(const MixingContext& ctx, double r1,
                                         double phi1) {
  const double s2t = std::sin(2.0 * ctx.theta1);
  const double sh = std::sinh(r1), ch = std::cosh(r1);
  const double f = 2.0 * s2t * s2t * sh;
  return {f * (sh - ch * std::cos(phi1)), f * (sh + ch * std::cos(phi1))};
}

LinearOutputMoments linear_output_moments(const MixingContext& ctx,
                                          const InputSpec& input, double t) {
  if (!gaussian_input(input.light))
    throw NonGaussianInput("linear propagation requires Gaussian light");

  Eigen::Vector3cd m = Eigen::Vector3cd::Zero();
  Eigen::Matrix3cd nmat = Eigen::Matrix3cd::Zero();
  Eigen::Matrix3cd amat = Eigen::Matrix3cd::Zero();
  {
    const ModeSpec& sp = input.light;
    const double sh = std::sinh(sp.r), ch = std::cosh(sp.r);
    const cplx phase = std::exp(cplx(0.0, -sp.phi));
    switch (sp.kind) {
      case ModeSpec::Kind::Coherent:
        m(0) = sp.amp;
        break;
      case ModeSpec::Kind::SqueezedCoherent:
      case ModeSpec::Kind::SqueezedVacuum:
        m(0) = sp.amp * ch - phase * std::conj(sp.amp) * sh;
        nmat(0, 0) = sh * sh;
        amat(0, 0) = -phase * sh * ch;
        break;
      default:
        break;  // vacuum
    }
  }

  DenseMatrix mm = DenseMatrix::Zero(3, 3);
  mm(0, 1) = mm(1, 0) = cplx(ctx.omega, 0.0);
  mm(1, 1) = cplx(ctx.detuning(), 0.0);
  mm(1, 2) = mm(2, 1) = cplx(ctx.control(), 0.0);
  const DenseMatrix v = propagate_linear_modes(mm, t);

  const Eigen::Vector3cd mt = v * m;
  const Eigen::Matrix3cd nt = v.conjugate() * nmat * v.transpose();
  const Eigen::Matrix3cd at = v * amat * v.transpose();

  LinearOutputMoments out;
  for (int j = 0; j < 3; ++j) {
    const cplx mj = mt(j);
    const double nu = nt(j, j).real();
    const cplx sig = at(j, j);
    GaussianModeMoments& mom = out.modes[static_cast<std::size_t>(j)];
    mom.amp = mj;
    mom.mean_n = std::norm(mj) + nu;
    const double varn = std::norm(mj) * (2.0 * nu + 1.0) +
                        2.0 * (std::conj(mj) * std::conj(mj) * sig).real() +
                        nu * (nu + 1.0) + std::norm(sig);
    mom.q = mom.mean_n > kEmptyModeTol ? varn / mom.mean_n - 1.0 : kNaN;
    const cplx m2 = mj * mj + sig;
    mom.s1 = 2.0 * mom.mean_n + 2.0 * m2.real() -
             4.0 * mj.real() * mj.real();
    mom.s2 = 2.0 * mom.mean_n - 2.0 * m2.real() -
             4.0 * mj.imag() * mj.imag();
  }

  const cplx ma = mt(0), mg = mt(2);
  const cplx nag = nt(0, 2), aag = at(0, 2);
  const double cov = 2.0 * (std::conj(ma) * std::conj(mg) * aag).real() +
                     2.0 * (ma * std::conj(mg) * nag).real() +
                     std::norm(aag) + std::norm(nag);
  const double prod = out.modes[0].mean_n * out.modes[2].mean_n;
  out.g2_ag = prod > kEmptyModeTol * kEmptyModeTol ? 1.0 + cov / prod : kNaN;
  return out;
}

namespace {

std::array<ModeInput, kNumModes> engine_inputs(const InputSpec& input) {
  std::array<ModeInput, kNumModes> arr{};
  arr[Light_a] = to_mode_input(input.light);
  arr[Atom_b] = to_mode_input(input.atoms);
  return arr;  // e, g vacuum
}

void check_window(const InputSpec& input, const EffectiveParams& eff,
                  double t) {
  const double occ = mean_occupation(input.atoms);
  if (std::abs(t) * std::abs(eff.chi) * occ > 0.3 * (1.0 + 1e-12))
    throw OutsideValidityWindow(
        "t * chi * n_atoms exceeds the short-time window 0.3");
}

NormalPolynomial h3_polynomial(const EffectiveParams& eff,
                               bool include_mu_term) {
  const NormalPolynomial x = NormalPolynomial::monomial(
      1.0, key_of({{GndMol_g, {1, 0}}, {Atom_b, {0, 2}}, {Light_a, {0, 1}}}));
  NormalPolynomial h =
      NormalPolynomial::number(GndMol_g).scaled(-eff.gamma) +
      (x + x.adjoint()).scaled(-eff.chi);
  if (include_mu_term) {
    const NormalPolynomial a = NormalPolynomial::ladder(Light_a, false);
    const NormalPolynomial b = NormalPolynomial::ladder(Atom_b, false);
    const NormalPolynomial aad = product(a, a.adjoint());
    const NormalPolynomial bb = product(b, b);
    const NormalPolynomial mu1 = product(aad, product(bb, bb.adjoint()));
    h = h + (mu1 + mu1.adjoint()).scaled(-eff.mu_c);
  }
  return h;
}

using Graded = std::array<NormalPolynomial, 3>;

Graded gmul(const Graded& x, const Graded& y) {
  Graded out;
  for (int i = 0; i <= 2; ++i)
    for (int j = 0; i + j <= 2; ++j)
      out[static_cast<std::size_t>(i + j)] =
          out[static_cast<std::size_t>(i + j)] +
          product(x[static_cast<std::size_t>(i)],
                  y[static_cast<std::size_t>(j)]);
  return out;
}

Graded gdag(const Graded& x) {
  return {x[0].adjoint(), x[1].adjoint(), x[2].adjoint()};
}

std::array<cplx, 3> gval(const Graded& x,
                         const std::array<ModeInput, kNumModes>& in) {
  return {expectation(x[0], in), expectation(x[1], in), expectation(x[2], in)};
}

std::array<double, 3> re3(const std::array<cplx, 3>& v) {
  return {v[0].real(), v[1].real(), v[2].real()};
}

std::array<double, 3> im3(const std::array<cplx, 3>& v) {
  return {v[0].imag(), v[1].imag(), v[2].imag()};
}

// (r0 + r1 t + r2 t^2)^2 truncated at t^2
std::array<double, 3> square3(const std::array<double, 3>& r) {
  return {r[0] * r[0], 2.0 * r[0] * r[1], r[1] * r[1] + 2.0 * r[0] * r[2]};
}

void put_squeezing(std::map<std::string, std::array<double, 3>>& out,
                   const std::string& suffix, const std::array<cplx, 3>& n,
                   const std::array<cplx, 3>& m1,
                   const std::array<cplx, 3>& m2) {
  const auto nn = re3(n);
  const auto m2r = re3(m2);
  const auto sq_re = square3(re3(m1));
  const auto sq_im = square3(im3(m1));
  std::array<double, 3> s1{}, s2{};
  for (int k = 0; k < 3; ++k) {
    s1[static_cast<std::size_t>(k)] =
        2.0 * nn[static_cast<std::size_t>(k)] +
        2.0 * m2r[static_cast<std::size_t>(k)] -
        4.0 * sq_re[static_cast<std::size_t>(k)];
    s2[static_cast<std::size_t>(k)] =
        2.0 * nn[static_cast<std::size_t>(k)] -
        2.0 * m2r[static_cast<std::size_t>(k)] -
        4.0 * sq_im[static_cast<std::size_t>(k)];
  }
  out["s1_" + suffix] = s1;
  out["s2_" + suffix] = s2;
}

ShortTimeMoments assemble_moments(const Graded& a, const Graded& b,
                                  const Graded& g,
                                  const std::array<ModeInput, kNumModes>& in) {
  ShortTimeMoments out;
  const Graded na = gmul(gdag(a), a);
  const Graded nb = gmul(gdag(b), b);
  const Graded ng = gmul(gdag(g), g);
  out.predictions["n_a"] = re3(gval(na, in));
  out.predictions["n_b"] = re3(gval(nb, in));
  out.predictions["n_g"] = re3(gval(ng, in));
  out.predictions["na_ng"] = re3(gval(gmul(na, ng), in));
  put_squeezing(out.predictions, "a", gval(na, in), gval(a, in),
                gval(gmul(a, a), in));
  put_squeezing(out.predictions, "g", gval(ng, in), gval(g, in),
                gval(gmul(g, g), in));
  return out;
}

}  // namespace

double ShortTimeMoments::eval(const std::string& name, double t) const {
  const auto it = predictions.find(name);
  if (it == predictions.end())
    throw ValidationError("unknown short-time moment: " + name);
  const auto& c = it->second;
  return c[0] + t * (c[1] + t * c[2]);
}

ShortTimeMoments shorttime_moments(const InputSpec& input,
                                   const EffectiveParams& eff, double t,
                                   bool include_mu_term) {
  check_window(input, eff, t);
  const NormalPolynomial h = h3_polynomial(eff, include_mu_term);
  const auto heisenberg = [&](const NormalPolynomial& k) -> Graded {
    const NormalPolynomial c1 = commutator(h, k);
    const NormalPolynomial c2 = commutator(h, c1);
    return {k, c1.scaled(cplx(0.0, 1.0)), c2.scaled(-0.5)};
  };
  const Graded a = heisenberg(NormalPolynomial::ladder(Light_a, false));
  const Graded b = heisenberg(NormalPolynomial::ladder(Atom_b, false));
  const Graded g = heisenberg(NormalPolynomial::ladder(GndMol_g, false));
  // Grade-truncated products of the expanded factors reproduce the t^2
  // Taylor polynomial of any product operator exactly, so the assembly is
  // shared with the literal route.
  return assemble_moments(a, b, g, engine_inputs(input));
}

ShortTimeMoments eq12_literal_moments(const InputSpec& input,
                                      const EffectiveParams& eff, double t) {
  check_window(input, eff, t);
  const double chi = eff.chi;
  const cplx ichi(0.0, chi);
  const double chi2 = chi * chi;

  const NormalPolynomial a0 = NormalPolynomial::ladder(Light_a, false);
  const NormalPolynomial b0 = NormalPolynomial::ladder(Atom_b, false);
  const NormalPolynomial g0 = NormalPolynomial::ladder(GndMol_g, false);
  const NormalPolynomial na = NormalPolynomial::number(Light_a);
  const NormalPolynomial nb = NormalPolynomial::number(Atom_b);
  const NormalPolynomial ng = NormalPolynomial::number(GndMol_g);
  const NormalPolynomial mb =
      NormalPolynomial::monomial(0.5, key_of({{Atom_b, {2, 2}}}));
  const NormalPolynomial one = NormalPolynomial::constant(1.0);

  const Graded a = {
      a0,
      NormalPolynomial::monomial(
          ichi, key_of({{Atom_b, {2, 0}}, {GndMol_g, {0, 1}}})),
      product(a0, product(nb, ng).scaled(2.0) - mb).scaled(chi2)};
  const Graded b = {
      b0,
      NormalPolynomial::monomial(
          2.0 * ichi,
          key_of({{Light_a, {1, 0}}, {Atom_b, {1, 0}}, {GndMol_g, {0, 1}}})),
      (product(product(nb, b0), ng - na) +
       product(product(b0, ng), na + one).scaled(2.0))
          .scaled(chi2)};
  const Graded g = {
      g0,
      NormalPolynomial::monomial(
          ichi, key_of({{Atom_b, {0, 2}}, {Light_a, {0, 1}}})),
      product(g0, product(na, nb + one).scaled(2.0) + mb + nb.scaled(2.0) +
                      one)
          .scaled(-chi2)};
  return assemble_moments(a, b, g, engine_inputs(input));
}

DepletedPrediction predicted_depleted_squeezing(const InputSpec& input,
                                                const EffectiveParams& eff,
                                                double t) {
  check_window(input, eff, t);
  const double chit2 = eff.chi * eff.chi * t * t;
  const auto lk = input.light.kind;
  const auto ak = input.atoms.kind;
  const bool light_sq = lk == ModeSpec::Kind::SqueezedCoherent ||
                        lk == ModeSpec::Kind::SqueezedVacuum;

  DepletedPrediction out;
  out.light = {kNaN, kNaN};
  out.molecules = {kNaN, kNaN};

  if (lk == ModeSpec::Kind::Coherent && ak == ModeSpec::Kind::Coherent) {
    const double aa = std::norm(input.light.amp);
    const double bb = std::norm(input.atoms.amp);
    const double pa = std::arg(input.light.amp);
    const double pb = std::arg(input.atoms.amp);
    const double fl = 3.0 * aa * (1.0 - bb * chit2);
    out.light = {fl * std::cos(pa) * std::cos(pa),
                 fl * std::sin(pa) * std::sin(pa)};
    out.light_id = "Eq13";
    const double fm = 3.0 * aa * (1.0 - aa * bb * chit2);
    const double ang = pa + 2.0 * pb;
    out.molecules = {fm * std::sin(ang) * std::sin(ang),
                     fm * std::cos(ang) * std::cos(ang)};
    out.molecules_id = "Eq14";
    return out;
  }
  if (light_sq && ak == ModeSpec::Kind::Coherent) {
    const double bb = std::norm(input.atoms.amp);
    const double sh = std::sinh(input.light.r);
    const double ch = std::cosh(input.light.r);
    const double f = 2.0 * bb * bb * chit2 * sh;
    const double c = std::cos(input.light.phi);
    out.molecules = {f * (sh - ch * c), f * (sh + ch * c)};
    out.molecules_id = "Eq15";
    return out;
  }
  if (lk == ModeSpec::Kind::Coherent &&
      ak == ModeSpec::Kind::SqueezedCoherent) {
    const double aa = std::norm(input.light.amp);
    const double sh = std::sinh(input.atoms.r);
    const double ch = std::cosh(input.atoms.r);
    const double s2 = std::sin(input.atoms.phi) * std::sin(input.atoms.phi);
    const double c2 = std::cos(input.atoms.phi) * std::cos(input.atoms.phi);
    const double base = aa * chit2 * sh * sh;
    out.molecules = {base * (11.0 * ch * ch * s2 - 4.0),
                     base * (11.0 * ch * ch * c2 - 4.0)};
    out.molecules_id = "Eq16";
    return out;
  }
  throw ValidationError("no printed closed form for this input combination");
}

G2Prediction predicted_g2(const InputSpec& input, const EffectiveParams& eff,
                          double t) {
  check_window(input, eff, t);
  const auto in = engine_inputs(input);
  const double e1 =
      expectation(NormalPolynomial::number(Light_a), in).real();
  if (e1 <= kEmptyModeTol) throw EmptyMode("g2 needs populated light");
  const double e2 =
      expectation(NormalPolynomial::monomial(1.0, key_of({{Light_a, {2, 2}}})),
                  in)
          .real();
  G2Prediction out;
  out.moment_value = e2 / (e1 * e1);
  switch (input.light.kind) {
    case ModeSpec::Kind::Coherent:
      out.value = 1.0 - 1.0 / std::norm(input.light.amp);
      break;
    case ModeSpec::Kind::SqueezedVacuum:
      out.value = 3.0;
      break;
    default:
      out.value = out.moment_value;
      break;
  }
  return out;
}

double g2_numerator_t2(const InputSpec& input, const EffectiveParams& eff,
                       double t) {
  const auto in = engine_inputs(input);
  const NormalPolynomial na = NormalPolynomial::number(Light_a);
  const NormalPolynomial mb =
      NormalPolynomial::monomial(0.5, key_of({{Atom_b, {2, 2}}}));
  const NormalPolynomial mom =
      product(product(na, na) - na, mb);  // N_a (N_a - 1) M_b
  return 2.0 * eff.chi * eff.chi * t * t * expectation(mom, in).real();
}

}  // namespace trilinpa
