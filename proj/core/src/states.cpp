#include "trilinpa/states.hpp"

#include <cmath>
#include <string>

#include "trilinpa/errors.hpp"
#include "trilinpa/linalg.hpp"

namespace trilinpa {

QuantumState::QuantumState(FockBasisPtr basis, Vector amps,
                           double truncation_loss)
    : basis_(std::move(basis)),
      amps_(std::move(amps)),
      truncation_loss_(truncation_loss) {
  if (amps_.size() != basis_->dimension()) {
    throw DimensionMismatch("state length " + std::to_string(amps_.size()) +
                            " vs basis dimension " +
                            std::to_string(basis_->dimension()));
  }
}

QuantumState fock_state(const FockBasisPtr& basis, const Occupation& occ) {
  Vector amps = Vector::Zero(basis->dimension());
  amps[basis->index_of(occ)] = 1.0;
  return QuantumState(basis, std::move(amps), 0.0);
}

std::vector<cplx> coherent_profile(int cap, cplx alpha, double* tail_loss) {
  std::vector<cplx> c(cap + 1);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n <= cap; ++n) {
    c[n] = c[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  }
  double retained = 0.0;
  for (const cplx& v : c) retained += std::norm(v);
  if (tail_loss) *tail_loss = 1.0 - retained;
  return c;
}

std::vector<cplx> squeezed_coherent_profile(int cap, double r, double angle,
                                            cplx alpha, double* tail_loss) {
  if (r < 0.0) {
    throw ValidationError("squeeze magnitude r must be non-negative");
  }
  if (r == 0.0) return coherent_profile(cap, alpha, tail_loss);

  const double sh = std::sinh(r);
  const int pad = std::max(8, static_cast<int>(std::ceil(10.0 * sh * sh)));
  const int pdim = cap + pad + 1;

  double coherent_tail = 0.0;
  const std::vector<cplx> seed =
      coherent_profile(pdim - 1, alpha, &coherent_tail);

  // Generator G = (r/2)(e^{i angle} a^2 - e^{-i angle} a†^2) is
  // anti-hermitian, so iG is hermitian and exp(G) = exp(-i (iG)) comes out
  // exactly unitary from the eigendecomposition.
  DenseMatrix ig = DenseMatrix::Zero(pdim, pdim);
  const cplx half_r(0.5 * r, 0.0);
  const cplx phase = std::exp(cplx(0.0, angle));
  for (int n = 2; n < pdim; ++n) {
    const double amp = std::sqrt(static_cast<double>(n) * (n - 1));
    // iG entries: i (r/2) e^{i angle} amp at (n-2, n), adjoint below.
    ig(n - 2, n) = cplx(0.0, 1.0) * half_r * phase * amp;
    ig(n, n - 2) = std::conj(ig(n - 2, n));
  }
  const DenseMatrix squeeze = hermitian_phase_exp(ig, 1.0);

  Vector seed_vec(pdim);
  for (int n = 0; n < pdim; ++n) seed_vec[n] = seed[n];
  const Vector out = squeeze * seed_vec;

  std::vector<cplx> c(cap + 1);
  double retained = 0.0;
  for (int n = 0; n <= cap; ++n) {
    c[n] = out[n];
    retained += std::norm(out[n]);
  }
  if (tail_loss) *tail_loss = 1.0 - retained;
  return c;
}

QuantumState product_state(
    const FockBasisPtr& basis,
    const std::array<std::vector<cplx>, kNumModes>& profiles,
    const std::array<double, kNumModes>& tail_loss, double tol) {
  if (basis->sector()) {
    throw ValidationError(
        "product state construction requires a charge-blind basis");
  }
  for (int m = 0; m < kNumModes; ++m) {
    if (static_cast<int>(profiles[m].size()) != basis->caps()[m] + 1) {
      throw DimensionMismatch("profile length for mode " +
                              std::string(mode_name(m)) +
                              " does not match cap");
    }
  }

  double loss = 1.0;
  for (int m = 0; m < kNumModes; ++m) loss *= 1.0 - tail_loss[m];
  loss = 1.0 - loss;
  if (loss >= tol) {
    throw TruncationTooSevere("truncated weight " + std::to_string(loss) +
                              " at tolerance " + std::to_string(tol));
  }

  Vector amps(basis->dimension());
  for (int i = 0; i < basis->dimension(); ++i) {
    const Occupation& occ = basis->occupation(i);
    cplx v = profiles[0][occ[0]];
    for (int m = 1; m < kNumModes; ++m) v *= profiles[m][occ[m]];
    amps[i] = v;
  }
  amps.normalize();
  return QuantumState(basis, std::move(amps), loss);
}

namespace {

std::array<std::vector<cplx>, kNumModes> vacuum_profiles(
    const FockBasisPtr& basis) {
  std::array<std::vector<cplx>, kNumModes> p;
  for (int m = 0; m < kNumModes; ++m) {
    p[m].assign(basis->caps()[m] + 1, cplx(0.0, 0.0));
    p[m][0] = 1.0;
  }
  return p;
}

}  // namespace

QuantumState coherent_state(const FockBasisPtr& basis, int mode, cplx alpha,
                            double tol) {
  auto profiles = vacuum_profiles(basis);
  std::array<double, kNumModes> loss{};
  profiles[mode] = coherent_profile(basis->caps()[mode], alpha, &loss[mode]);
  return product_state(basis, profiles, loss, tol);
}

QuantumState squeezed_coherent_state(const FockBasisPtr& basis, int mode,
                                     double r, double angle, cplx alpha,
                                     double tol) {
  auto profiles = vacuum_profiles(basis);
  std::array<double, kNumModes> loss{};
  profiles[mode] = squeezed_coherent_profile(basis->caps()[mode], r, angle,
                                             alpha, &loss[mode]);
  return product_state(basis, profiles, loss, tol);
}

}  // namespace trilinpa
