#include "trilinpa/observables.hpp"

#include <cmath>

#include "trilinpa/errors.hpp"
#include "trilinpa/operators.hpp"

namespace trilinpa {

namespace {

void check_mode(int mode) {
  if (mode < 0 || mode >= kNumModes)
    throw ValidationError("mode index out of range");
}

double norm2(const QuantumState& psi) {
  const double n2 = psi.amps().squaredNorm();
  if (n2 <= 0.0) throw ValidationError("cannot take expectations of the zero vector");
  return n2;
}

}  // namespace

double mode_number(const QuantumState& psi, int mode) {
  check_mode(mode);
  const FockBasis& basis = *psi.basis();
  const Vector& a = psi.amps();
  double s = 0.0;
  for (int i = 0; i < basis.dimension(); ++i)
    s += static_cast<double>(basis.occupation(i)[static_cast<std::size_t>(mode)]) *
         std::norm(a[i]);
  return s / norm2(psi);
}

double mode_number_variance(const QuantumState& psi, int mode) {
  check_mode(mode);
  const FockBasis& basis = *psi.basis();
  const Vector& a = psi.amps();
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < basis.dimension(); ++i) {
    const double n =
        static_cast<double>(basis.occupation(i)[static_cast<std::size_t>(mode)]);
    const double w = std::norm(a[i]);
    s1 += n * w;
    s2 += n * n * w;
  }
  const double n2 = norm2(psi);
  s1 /= n2;
  s2 /= n2;
  return std::max(0.0, s2 - s1 * s1);
}

double mandel_q(const QuantumState& psi, int mode) {
  const double mean = mode_number(psi, mode);
  if (mean < kEmptyModeTol)
    throw EmptyMode("mandel Q undefined for an unpopulated mode");
  return (mode_number_variance(psi, mode) - mean) / mean;
}

cplx mode_amplitude(const QuantumState& psi, int mode) {
  check_mode(mode);
  const FockBasis& basis = *psi.basis();
  const Vector& a = psi.amps();
  cplx s = 0.0;
  for (int i = 0; i < basis.dimension(); ++i) {
    const int n = basis.occupation(i)[static_cast<std::size_t>(mode)];
    if (n == 0) continue;
    const int j = basis.lowered(i, mode);
    if (j < 0) continue;
    s += std::conj(a[j]) * std::sqrt(static_cast<double>(n)) * a[i];
  }
  return s / norm2(psi);
}

cplx mode_square(const QuantumState& psi, int mode) {
  check_mode(mode);
  const FockBasis& basis = *psi.basis();
  const Vector& a = psi.amps();
  cplx s = 0.0;
  for (int i = 0; i < basis.dimension(); ++i) {
    const int n = basis.occupation(i)[static_cast<std::size_t>(mode)];
    if (n < 2) continue;
    const int j = basis.lowered(i, mode);
    if (j < 0) continue;
    const int k = basis.lowered(j, mode);
    if (k < 0) continue;
    s += std::conj(a[k]) *
         std::sqrt(static_cast<double>(n) * static_cast<double>(n - 1)) * a[i];
  }
  return s / norm2(psi);
}

std::pair<double, double> quadrature_squeezing(const QuantumState& psi,
                                               int mode) {
  const double n = mode_number(psi, mode);
  const cplx m1 = mode_amplitude(psi, mode);
  const cplx m2 = mode_square(psi, mode);
  const double s1 =
      2.0 * n + 2.0 * m2.real() - 4.0 * m1.real() * m1.real();
  const double s2 =
      2.0 * n - 2.0 * m2.real() - 4.0 * m1.imag() * m1.imag();
  return {s1, s2};
}

double cross_correlation_g2(const QuantumState& psi, int mode_p, int mode_q) {
  check_mode(mode_p);
  check_mode(mode_q);
  const FockBasis& basis = *psi.basis();
  const Vector& a = psi.amps();
  double sp = 0.0, sq = 0.0, spq = 0.0;
  for (int i = 0; i < basis.dimension(); ++i) {
    const auto& occ = basis.occupation(i);
    const double np = static_cast<double>(occ[static_cast<std::size_t>(mode_p)]);
    const double nq = static_cast<double>(occ[static_cast<std::size_t>(mode_q)]);
    const double w = std::norm(a[i]);
    sp += np * w;
    sq += nq * w;
    spq += np * nq * w;
  }
  const double n2 = norm2(psi);
  sp /= n2;
  sq /= n2;
  spq /= n2;
  if (sp < kEmptyModeTol || sq < kEmptyModeTol)
    throw EmptyMode("g2 undefined when a mode is unpopulated");
  return spq / (sp * sq);
}

std::pair<double, double> charge_expectations(const QuantumState& psi) {
  const FockBasis& basis = *psi.basis();
  const Vector& a = psi.amps();
  double c1 = 0.0, c2 = 0.0;
  for (int i = 0; i < basis.dimension(); ++i) {
    const auto& occ = basis.occupation(i);
    const double w = std::norm(a[i]);
    c1 += static_cast<double>(charge_c1(occ)) * w;
    c2 += static_cast<double>(charge_c2(occ)) * w;
  }
  const double n2 = norm2(psi);
  return {c1 / n2, c2 / n2};
}

Eigen::VectorXd number_distribution(const QuantumState& psi, int mode) {
  check_mode(mode);
  const FockBasis& basis = *psi.basis();
  const Vector& a = psi.amps();
  Eigen::VectorXd p = Eigen::VectorXd::Zero(
      basis.caps()[static_cast<std::size_t>(mode)] + 1);
  for (int i = 0; i < basis.dimension(); ++i)
    p[basis.occupation(i)[static_cast<std::size_t>(mode)]] += std::norm(a[i]);
  return p / norm2(psi);
}

double quadrature_commutator_deviation(const FockBasisPtr& basis, int mode) {
  check_mode(mode);
  const SparseOperator low = ladder_operator(basis, mode, LadderKind::Annihilate);
  const SparseOperator high = ladder_operator(basis, mode, LadderKind::Create);
  const cplx half(0.5, 0.0);
  const cplx halfi(0.0, -0.5);
  // X1 = (m + m†)/2, X2 = (m - m†)/(2i)
  SparseMatrix x1 = SparseMatrix(half * low.matrix()) +
                    SparseMatrix(half * high.matrix());
  SparseMatrix x2 = SparseMatrix(halfi * low.matrix()) -
                    SparseMatrix(halfi * high.matrix());
  SparseMatrix comm = SparseMatrix(x1 * x2) - SparseMatrix(x2 * x1);
  const int cap = basis->caps()[static_cast<std::size_t>(mode)];
  double dev = 0.0;
  DenseMatrix dense(comm);
  for (int r = 0; r < basis->dimension(); ++r) {
    if (basis->occupation(r)[static_cast<std::size_t>(mode)] >= cap) continue;
    for (int c = 0; c < basis->dimension(); ++c) {
      const cplx want = (r == c) ? cplx(0.0, 0.5) : cplx(0.0, 0.0);
      dev = std::max(dev, std::abs(dense(r, c) - want));
    }
  }
  return dev;
}

}  // namespace trilinpa
