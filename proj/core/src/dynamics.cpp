#include "trilinpa/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/Dense>

#include "trilinpa/errors.hpp"
#include "trilinpa/linalg.hpp"

namespace trilinpa {

namespace {

void check_sample_times(const std::vector<double>& times) {
  if (times.empty()) throw ValidationError("sample time list is empty");
  for (std::size_t k = 0; k < times.size(); ++k) {
    if (!std::isfinite(times[k]))
      throw ValidationError("sample times must be finite");
    if (k > 0 && times[k] <= times[k - 1])
      throw ValidationError("sample times must be strictly increasing");
  }
}

}  // namespace

double Trajectory::max_norm_drift() const {
  double m = 0.0;
  for (double d : norm_drift) m = std::max(m, d);
  return m;
}

double Trajectory::final_leakage() const {
  return leakage.empty() ? 0.0 : leakage.back();
}

namespace {

void check_state_compat(const SparseOperator& h, const QuantumState& psi) {
  if (h.basis() == psi.basis()) return;
  const FockBasis& lhs = *h.basis();
  const FockBasis& rhs = *psi.basis();
  if (lhs.caps() != rhs.caps() || lhs.dimension() != rhs.dimension() ||
      lhs.sector().has_value() != rhs.sector().has_value())
    throw BasisMismatch("operator and state bases differ");
}

double leak_expectation(const Eigen::VectorXd& w, const Vector& psi) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < psi.size(); ++i)
    s += w[i] * std::norm(psi[i]);
  return std::max(0.0, s);
}

// One Lanczos approximation of exp(-i h dt) v with full reorthogonalization.
// Returns nothing when the Saad residual estimate stays above tol at mmax.
std::optional<Vector> lanczos_once(const SparseOperator& h, const Vector& v,
                                   double dt, double tol, int mmax) {
  const double vnorm = v.norm();
  if (vnorm == 0.0 || dt == 0.0) return v;
  const int dim = static_cast<int>(v.size());
  mmax = std::min(mmax, dim);
  const double breakdown = 1e-14 * std::max(1.0, h.norm_inf());

  std::vector<Vector> krylov;
  krylov.reserve(static_cast<std::size_t>(mmax));
  krylov.push_back(v / vnorm);
  std::vector<double> alpha, beta;

  for (int j = 0; j < mmax; ++j) {
    Vector w = h.apply(krylov[static_cast<std::size_t>(j)]);
    if (j > 0) w -= beta[static_cast<std::size_t>(j - 1)] *
                    krylov[static_cast<std::size_t>(j - 1)];
    alpha.push_back(
        std::real(krylov[static_cast<std::size_t>(j)].dot(w)));
    w -= alpha.back() * krylov[static_cast<std::size_t>(j)];
    for (int pass = 0; pass < 2; ++pass)
      for (int i = 0; i <= j; ++i)
        w -= krylov[static_cast<std::size_t>(i)].dot(w) *
             krylov[static_cast<std::size_t>(i)];
    const double b = w.norm();
    const int m = j + 1;
    const bool happy = b <= breakdown;

    if (happy || m == mmax || m >= 3) {
      Eigen::MatrixXd tmat = Eigen::MatrixXd::Zero(m, m);
      for (int i = 0; i < m; ++i) tmat(i, i) = alpha[static_cast<std::size_t>(i)];
      for (int i = 0; i + 1 < m; ++i)
        tmat(i, i + 1) = tmat(i + 1, i) = beta[static_cast<std::size_t>(i)];
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tmat);
      Eigen::VectorXcd u(m);
      {
        Eigen::VectorXd first = es.eigenvectors().row(0).transpose();
        for (int i = 0; i < m; ++i)
          u[i] = std::exp(cplx(0.0, -dt * es.eigenvalues()[i])) * first[i];
        u = es.eigenvectors().cast<cplx>() * u;
      }
      const double err = happy ? 0.0 : b * std::abs(u[m - 1]);
      if (happy || err < tol) {
        Vector out = Vector::Zero(dim);
        for (int i = 0; i < m; ++i)
          out += (vnorm * u[i]) * krylov[static_cast<std::size_t>(i)];
        return out;
      }
      if (m == mmax) return std::nullopt;
    }
    beta.push_back(b);
    krylov.push_back(w / b);
  }
  return std::nullopt;
}

Vector krylov_phase_exp(const SparseOperator& h, Vector v, double dt,
                        const EvolveOptions& opt, double span) {
  if (dt == 0.0) return v;
  const double min_step = std::max(span, std::abs(dt)) * 1e-12;
  double remaining = dt;
  double trial = dt;
  while (remaining != 0.0) {
    double s = (std::abs(trial) >= std::abs(remaining)) ? remaining : trial;
    auto out = lanczos_once(h, v, s, opt.krylov_tol, opt.krylov_max);
    if (out) {
      v = std::move(*out);
      remaining = (s == remaining) ? 0.0 : remaining - s;
      trial *= 1.4;
    } else {
      trial = 0.5 * s;
      if (std::abs(trial) < min_step)
        throw StepTooLarge(
            "krylov substep underflow; cannot meet tolerance at this norm");
    }
  }
  return v;
}

}  // namespace

QuantumState dense_propagate(const SparseOperator& h, const QuantumState& psi,
                             double t) {
  if (!h.hermitian())
    throw NonHermitian("propagation requires a hermitian generator");
  check_state_compat(h, psi);
  const DenseMatrix u = hermitian_phase_exp(DenseMatrix(h.matrix()), t);
  return QuantumState(psi.basis(), u * psi.amps(), psi.truncation_loss());
}

Trajectory evolve_fixed(const SparseOperator& h, const QuantumState& psi0,
                        const std::vector<double>& times,
                        const EvolveOptions& options) {
  if (!h.hermitian())
    throw NonHermitian("propagation requires a hermitian generator");
  check_state_compat(h, psi0);
  check_sample_times(times);
  if (times.front() < 0.0)
    throw ValidationError("evolve_fixed expects non-negative sample times");

  Trajectory tr;
  tr.times = times;
  tr.states.reserve(times.size());

  if (h.dimension() <= options.dense_cutoff) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es{DenseMatrix(h.matrix())};
    const Vector coef = es.eigenvectors().adjoint() * psi0.amps();
    for (double t : times) {
      Vector phased(coef.size());
      for (Eigen::Index i = 0; i < coef.size(); ++i)
        phased[i] = std::exp(cplx(0.0, -t * es.eigenvalues()[i])) * coef[i];
      tr.states.emplace_back(psi0.basis(), es.eigenvectors() * phased,
                             psi0.truncation_loss());
    }
  } else {
    const double span = std::max(times.back(), 1.0);
    Vector cur = psi0.amps();
    double prev_t = 0.0;
    for (double t : times) {
      cur = krylov_phase_exp(h, std::move(cur), t - prev_t, options, span);
      prev_t = t;
      tr.states.emplace_back(psi0.basis(), cur, psi0.truncation_loss());
    }
  }

  const Eigen::VectorXd& w = h.leak_weight();
  double integral = 0.0;
  double prev_rate = std::sqrt(leak_expectation(w, tr.states.front().amps()));
  tr.leakage.resize(times.size());
  tr.leakage[0] = 0.0;
  tr.norm_drift.resize(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double rate = std::sqrt(leak_expectation(w, tr.states[k].amps()));
    if (k > 0) {
      integral += 0.5 * (rate + prev_rate) * (times[k] - times[k - 1]);
      tr.leakage[k] = integral * integral;
    }
    prev_rate = rate;
    tr.norm_drift[k] = std::abs(tr.states[k].norm() - 1.0);
    if (tr.norm_drift[k] >= kNormDriftTol) tr.norm_ok = false;
  }
  return tr;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                 kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 35.0 / 384 - 5179.0 / 57600,
                 kE3 = 500.0 / 1113 - 7571.0 / 16695,
                 kE4 = 125.0 / 192 - 393.0 / 640,
                 kE5 = -2187.0 / 6784 + 92097.0 / 339200,
                 kE6 = 11.0 / 84 - 187.0 / 2100, kE7 = -1.0 / 40;
constexpr double kC2 = 1.0 / 5, kC3 = 3.0 / 10, kC4 = 4.0 / 5, kC5 = 8.0 / 9;

}  // namespace

Trajectory evolve_schedule(const HamiltonianParts& parts,
                           const PulseSchedule& schedule,
                           const QuantumState& psi0,
                           const std::vector<double>& times, double rk_tol) {
  schedule.validate();
  check_sample_times(times);
  check_state_compat(parts.detuning, psi0);
  check_state_compat(parts.pump, psi0);
  check_state_compat(parts.control, psi0);
  if (times.front() < schedule.t_start || times.back() > schedule.t_end)
    throw OutOfWindow("sample times leave the schedule window");
  if (!(rk_tol > 0.0)) throw ValidationError("rk tolerance must be positive");

  const double span = schedule.t_end - schedule.t_start;
  const double hbound = parts.detuning.norm_inf() + parts.pump.norm_inf() +
                        schedule.amplitude * parts.control.norm_inf();
  const double hmax =
      std::min(hbound > 0.0 ? 0.01 / hbound : span / 16.0, span / 16.0);
  const double hmin = 1e-12 * span;

  auto deriv = [&](double t, const Vector& y) -> Vector {
    Vector out = parts.detuning.apply(y);
    const double p = pump_scale_at(schedule, t);
    const double om = omega_at(schedule, t);
    if (p != 0.0) out += p * parts.pump.apply(y);
    if (om != 0.0) out += om * parts.control.apply(y);
    return cplx(0.0, -1.0) * out;
  };

  Trajectory tr;
  tr.times = times;
  tr.states.reserve(times.size());
  tr.leakage.resize(times.size(), 0.0);
  tr.norm_drift.resize(times.size(), 0.0);

  double t = times.front();
  Vector y = psi0.amps();

  auto leak_rate_at = [&](double tt, const Vector& yy) {
    const double p = pump_scale_at(schedule, tt);
    const double om = omega_at(schedule, tt);
    double s = leak_expectation(parts.detuning.leak_weight(), yy) +
               p * p * leak_expectation(parts.pump.leak_weight(), yy) +
               om * om * leak_expectation(parts.control.leak_weight(), yy);
    return std::sqrt(std::max(0.0, s));
  };

  std::size_t idx = 0;
  double integral = 0.0;
  double prev_rate = leak_rate_at(t, y);
  double prev_sample_t = t;
  auto record = [&]() {
    while (idx < times.size() && times[idx] == t) {
      const double rate = leak_rate_at(t, y);
      integral += 0.5 * (rate + prev_rate) * (t - prev_sample_t);
      prev_rate = rate;
      prev_sample_t = t;
      tr.leakage[idx] = integral * integral;
      tr.states.emplace_back(psi0.basis(), y, psi0.truncation_loss());
      tr.norm_drift[idx] = std::abs(y.norm() - 1.0);
      if (tr.norm_drift[idx] >= kNormDriftTol) tr.norm_ok = false;
      ++idx;
    }
  };
  record();

  double h = hmax;
  Vector k1 = deriv(t, y);
  while (idx < times.size()) {
    const double target = times[idx];
    bool hit = false;
    if (h >= target - t) {
      h = target - t;
      hit = true;
    }
    const Vector k2 = deriv(t + kC2 * h, y + h * (kA21 * k1));
    const Vector k3 = deriv(t + kC3 * h, y + h * (kA31 * k1 + kA32 * k2));
    const Vector k4 =
        deriv(t + kC4 * h, y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
    const Vector k5 = deriv(
        t + kC5 * h, y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
    const Vector k6 =
        deriv(t + h, y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 +
                              kA65 * k5));
    const Vector ynew =
        y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
    const Vector k7 = deriv(t + h, ynew);
    const Vector errv = h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 +
                             kE6 * k6 + kE7 * k7);
    const double errn =
        errv.norm() / (rk_tol * (1.0 + std::max(y.norm(), ynew.norm())));

    const double factor =
        std::clamp(0.9 * std::pow(std::max(errn, 1e-10), -0.2), 0.2, 5.0);
    if (errn <= 1.0) {
      t = hit ? target : t + h;
      y = ynew;
      k1 = k7;
      record();
      h = std::min(h * factor, hmax);
    } else {
      h *= std::min(factor, 1.0);
      if (h < hmin)
        throw StepTooLarge("rk45 step underflow under the local tolerance");
    }
  }
  return tr;
}

DenseMatrix propagate_linear_modes(const DenseMatrix& m, double t) {
  if (m.rows() != m.cols())
    throw DimensionMismatch("mode matrix must be square");
  return hermitian_phase_exp(m, t);
}

}  // namespace trilinpa
