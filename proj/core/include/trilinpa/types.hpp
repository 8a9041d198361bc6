#pragma once

#include <array>
#include <complex>
#include <cstdint>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace trilinpa {

using cplx = std::complex<double>;

using Vector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<cplx, Eigen::RowMajor>;

// Mode order is fixed everywhere: a = light, b = trapped atoms,
// e = excited molecules, g = ground (stable) molecules.
enum Mode : int { Light_a = 0, Atom_b = 1, ExcMol_e = 2, GndMol_g = 3 };

inline constexpr int kNumModes = 4;

// Occupation tuple (n_a, n_b, n_e, n_g).
using Occupation = std::array<int, kNumModes>;

inline const char* mode_name(int m) {
  static const char* names[kNumModes] = {"a", "b", "e", "g"};
  return names[m];
}

// Conserved charges of the four-mode Hamiltonian.
// C1 counts atoms (each molecule binds two), C2 counts photons plus molecules.
inline long charge_c1(const Occupation& n) {
  return n[Atom_b] + 2L * (n[ExcMol_e] + n[GndMol_g]);
}
inline long charge_c2(const Occupation& n) {
  return n[Light_a] + n[ExcMol_e] + n[GndMol_g];
}

}  // namespace trilinpa
