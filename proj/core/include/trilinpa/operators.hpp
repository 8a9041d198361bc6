#pragma once

#include <vector>

#include <Eigen/Dense>

#include "trilinpa/fock_basis.hpp"
#include "trilinpa/types.hpp"

namespace trilinpa {

enum class LadderKind { Annihilate, Create, Number };

struct LadderFactor {
  int mode = Light_a;
  LadderKind kind = LadderKind::Annihilate;
};

// One normal product coeff * f_1 f_2 ... f_k, factors written left to right
// as in the Hamiltonian, so the rightmost factor acts on the ket first.
struct OperatorTerm {
  cplx coefficient;
  std::vector<LadderFactor> factors;
};

// A transition whose target fell outside the basis (cap ceiling or sector
// filter). weight is the squared amplitude that a single application of the
// operator would move out of the retained space from basis state source.
struct LeakageEntry {
  int source = 0;
  double weight = 0.0;
};

// Immutable sparse matrix over a shared FockBasis. The hermitian flag is
// only set after an exact entrywise M = M^dagger verification.
class SparseOperator {
 public:
  SparseOperator(FockBasisPtr basis, SparseMatrix matrix, bool hermitian,
                 std::vector<LeakageEntry> leakage);

  static SparseOperator identity(FockBasisPtr basis);

  const FockBasisPtr& basis() const { return basis_; }
  const SparseMatrix& matrix() const { return matrix_; }
  int dimension() const { return static_cast<int>(matrix_.rows()); }
  bool hermitian() const { return hermitian_; }

  const std::vector<LeakageEntry>& leakage() const { return leakage_; }
  // Per-source dropped weight, summed over leakage entries; zero vector when
  // the operator is leak-free on its basis.
  const Eigen::VectorXd& leak_weight() const { return leak_weight_; }

  Vector apply(const Vector& x) const;

  // Max absolute row sum; cheap spectral-radius bound for step control.
  double norm_inf() const;

  // Entrywise sums; hermitian flag survives only when both operands carry it.
  SparseOperator operator+(const SparseOperator& rhs) const;
  SparseOperator operator-(const SparseOperator& rhs) const;
  SparseOperator scaled(cplx factor) const;

 private:
  FockBasisPtr basis_;
  SparseMatrix matrix_;
  bool hermitian_ = false;
  std::vector<LeakageEntry> leakage_;
  Eigen::VectorXd leak_weight_;
};

// Single ladder operator on one mode. Transitions crossing the cap or the
// sector filter are dropped and recorded as leakage.
SparseOperator ladder_operator(const FockBasisPtr& basis, int mode,
                               LadderKind kind);

// Sum of normal products. The product is the matrix product of the truncated
// factors (projection after every factor). The hermitian flag is set when the
// term list is closed under formal adjoints with conjugate coefficients; the
// resulting matrix is then verified to satisfy M = M^dagger exactly, which
// the construction guarantees by multiplying the amplitude factors of a
// transition and of its reverse in one fixed (sorted) order.
SparseOperator operator_algebra(const FockBasisPtr& basis,
                                const std::vector<OperatorTerm>& terms);

// Formal adjoint of a term: reversed factors, swapped Create/Annihilate,
// conjugated coefficient.
OperatorTerm adjoint_term(const OperatorTerm& term);

}  // namespace trilinpa
