#include "trilinpa/linalg.hpp"

#include <string>

#include <Eigen/Eigenvalues>

#include "trilinpa/errors.hpp"

namespace trilinpa {

DenseMatrix hermitian_phase_exp(const DenseMatrix& h, double scale,
                                double tol) {
  const double dev = (h - h.adjoint()).cwiseAbs().maxCoeff();
  const double ref = std::max(1.0, h.cwiseAbs().maxCoeff());
  if (dev > tol * ref) {
    throw NonHermitian("hermitian_phase_exp: deviation " +
                       std::to_string(dev));
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
  const Eigen::VectorXd& w = es.eigenvalues();
  Vector phases(w.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) {
    phases[k] = std::exp(cplx(0.0, -scale * w[k]));
  }
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

}  // namespace trilinpa
