#include "trilinpa/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace trilinpa {

namespace {

// Product in descending order so that a transition and its reverse, which
// carry the same multiset of sqrt factors, give bitwise-equal values.
double sorted_product(std::vector<double>& factors) {
  std::sort(factors.begin(), factors.end(), std::greater<double>());
  double p = 1.0;
  for (double f : factors) p *= f;
  return p;
}

struct Triplet {
  int row;
  int col;
  cplx value;
};

}  // namespace

SparseOperator::SparseOperator(FockBasisPtr basis, SparseMatrix matrix,
                               bool hermitian,
                               std::vector<LeakageEntry> leakage)
    : basis_(std::move(basis)),
      matrix_(std::move(matrix)),
      hermitian_(hermitian),
      leakage_(std::move(leakage)) {
  leak_weight_ = Eigen::VectorXd::Zero(matrix_.rows());
  for (const auto& e : leakage_) leak_weight_[e.source] += e.weight;
}

SparseOperator SparseOperator::identity(FockBasisPtr basis) {
  const int dim = basis->dimension();
  SparseMatrix m(dim, dim);
  m.setIdentity();
  return SparseOperator(std::move(basis), std::move(m), true, {});
}

Vector SparseOperator::apply(const Vector& x) const {
  if (x.size() != matrix_.cols()) {
    throw DimensionMismatch("operator apply: vector length " +
                            std::to_string(x.size()) + " vs dimension " +
                            std::to_string(matrix_.cols()));
  }
  return matrix_ * x;
}

double SparseOperator::norm_inf() const {
  double best = 0.0;
  for (int r = 0; r < matrix_.outerSize(); ++r) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(matrix_, r); it; ++it) {
      row += std::abs(it.value());
    }
    best = std::max(best, row);
  }
  return best;
}

SparseOperator SparseOperator::operator+(const SparseOperator& rhs) const {
  if (basis_ != rhs.basis_) {
    throw BasisMismatch("operator sum over different bases");
  }
  SparseMatrix m = matrix_ + rhs.matrix_;
  auto leaks = leakage_;
  leaks.insert(leaks.end(), rhs.leakage_.begin(), rhs.leakage_.end());
  return SparseOperator(basis_, std::move(m), hermitian_ && rhs.hermitian_,
                        std::move(leaks));
}

SparseOperator SparseOperator::operator-(const SparseOperator& rhs) const {
  return *this + rhs.scaled(-1.0);
}

SparseOperator SparseOperator::scaled(cplx factor) const {
  SparseMatrix m = matrix_ * factor;
  auto leaks = leakage_;
  const double w = std::norm(factor);
  for (auto& e : leaks) e.weight *= w;
  const bool herm = hermitian_ && factor.imag() == 0.0;
  return SparseOperator(basis_, std::move(m), herm, std::move(leaks));
}

OperatorTerm adjoint_term(const OperatorTerm& term) {
  OperatorTerm adj;
  adj.coefficient = std::conj(term.coefficient);
  adj.factors.reserve(term.factors.size());
  for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
    LadderFactor f = *it;
    if (f.kind == LadderKind::Annihilate) {
      f.kind = LadderKind::Create;
    } else if (f.kind == LadderKind::Create) {
      f.kind = LadderKind::Annihilate;
    }
    adj.factors.push_back(f);
  }
  return adj;
}

namespace {

bool same_factors(const std::vector<LadderFactor>& a,
                  const std::vector<LadderFactor>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].mode != b[i].mode || a[i].kind != b[i].kind) return false;
  }
  return true;
}

// The term list is formally hermitian when it is closed under adjoints:
// every term's adjoint appears with exactly the conjugate coefficient.
bool formally_hermitian(const std::vector<OperatorTerm>& terms) {
  for (const auto& t : terms) {
    const OperatorTerm adj = adjoint_term(t);
    bool found = false;
    for (const auto& u : terms) {
      if (u.coefficient == adj.coefficient && same_factors(u.factors, adj.factors)) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool verify_hermitian_exact(const SparseMatrix& m) {
  SparseMatrix adj = SparseMatrix(m.adjoint());
  if (adj.nonZeros() != m.nonZeros()) return false;
  for (int r = 0; r < m.outerSize(); ++r) {
    SparseMatrix::InnerIterator a(m, r), b(adj, r);
    for (; a && b; ++a, ++b) {
      if (a.col() != b.col() || a.value() != b.value()) return false;
    }
    if (a || b) return false;
  }
  return true;
}

}  // namespace

SparseOperator operator_algebra(const FockBasisPtr& basis,
                                const std::vector<OperatorTerm>& terms) {
  if (terms.empty()) {
    throw ValidationError("operator_algebra: empty term list");
  }
  for (const auto& t : terms) {
    if (t.factors.empty()) {
      throw ValidationError("operator_algebra: term with no factors");
    }
    for (const auto& f : t.factors) {
      if (f.mode < 0 || f.mode >= kNumModes) {
        throw ValidationError("operator_algebra: bad mode index");
      }
    }
  }

  const int dim = basis->dimension();
  std::vector<Triplet> triplets;
  std::vector<LeakageEntry> leaks;
  std::vector<double> amps;

  for (const auto& term : terms) {
    if (term.coefficient == cplx(0.0, 0.0)) continue;
    for (int src = 0; src < dim; ++src) {
      int idx = src;
      amps.clear();
      bool zero = false;
      bool dropped = false;
      // Rightmost factor first.
      for (auto it = term.factors.rbegin(); it != term.factors.rend(); ++it) {
        const Occupation& occ = basis->occupation(idx);
        const int n = occ[it->mode];
        switch (it->kind) {
          case LadderKind::Annihilate: {
            if (n == 0) {
              zero = true;  // exact annihilation of the vacuum, not leakage
              break;
            }
            const int next = basis->lowered(idx, it->mode);
            amps.push_back(std::sqrt(static_cast<double>(n)));
            if (next < 0) {
              dropped = true;  // sector filter removed the target
              break;
            }
            idx = next;
            break;
          }
          case LadderKind::Create: {
            const int next =
                (n < basis->caps()[it->mode]) ? basis->raised(idx, it->mode) : -1;
            amps.push_back(std::sqrt(static_cast<double>(n + 1)));
            if (next < 0) {
              dropped = true;  // cap ceiling or sector filter
              break;
            }
            idx = next;
            break;
          }
          case LadderKind::Number: {
            if (n == 0) {
              zero = true;
              break;
            }
            amps.push_back(static_cast<double>(n));
            break;
          }
        }
        if (zero || dropped) break;
      }
      if (zero) continue;
      if (dropped) {
        const double a = sorted_product(amps);
        leaks.push_back({src, std::norm(term.coefficient) * a * a});
        continue;
      }
      triplets.push_back({idx, src, term.coefficient * sorted_product(amps)});
    }
  }

  std::stable_sort(triplets.begin(), triplets.end(),
                   [](const Triplet& a, const Triplet& b) {
                     return std::tie(a.row, a.col) < std::tie(b.row, b.col);
                   });

  std::vector<Eigen::Triplet<cplx>> merged;
  merged.reserve(triplets.size());
  for (std::size_t i = 0; i < triplets.size();) {
    cplx v = triplets[i].value;
    std::size_t j = i + 1;
    while (j < triplets.size() && triplets[j].row == triplets[i].row &&
           triplets[j].col == triplets[i].col) {
      v += triplets[j].value;
      ++j;
    }
    if (v != cplx(0.0, 0.0)) {
      merged.emplace_back(triplets[i].row, triplets[i].col, v);
    }
    i = j;
  }

  SparseMatrix m(dim, dim);
  m.setFromTriplets(merged.begin(), merged.end());

  bool herm = formally_hermitian(terms);
  if (herm && !verify_hermitian_exact(m)) {
    throw NonHermitian(
        "operator_algebra: formally hermitian term list produced an "
        "asymmetric matrix");
  }
  return SparseOperator(basis, std::move(m), herm, std::move(leaks));
}

SparseOperator ladder_operator(const FockBasisPtr& basis, int mode,
                               LadderKind kind) {
  OperatorTerm t;
  t.coefficient = 1.0;
  t.factors.push_back({mode, kind});
  return operator_algebra(basis, {t});
}

}  // namespace trilinpa
