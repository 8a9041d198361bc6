#pragma once

#include <array>
#include <vector>

#include "trilinpa/types.hpp"

namespace trilinpa {

// Exact normal-ordered polynomial algebra over the four modes. A term is
// coeff * prod_m (m†)^{p_m} (m)^{q_m}; distinct modes commute, so the
// per-mode factorization is complete. Exponents are capped at kMaxPower so
// every contraction coefficient k! C(q,k) C(p,k) stays exactly representable
// in a double.

inline constexpr int kMaxPower = 12;

// Exponent key: [p_a, q_a, p_b, q_b, p_e, q_e, p_g, q_g].
using PowerKey = std::array<int, 2 * kNumModes>;

struct NormalTerm {
  cplx coeff;
  PowerKey key{};
};

class NormalPolynomial {
 public:
  NormalPolynomial() = default;  // zero polynomial

  static NormalPolynomial constant(cplx c);
  static NormalPolynomial monomial(cplx coeff, const PowerKey& key);
  static NormalPolynomial ladder(int mode, bool dagger);
  static NormalPolynomial number(int mode);  // m†m

  const std::vector<NormalTerm>& terms() const { return terms_; }
  bool zero() const { return terms_.empty(); }
  cplx vacuum_coefficient() const;  // coefficient of the all-zero key

  NormalPolynomial operator+(const NormalPolynomial& rhs) const;
  NormalPolynomial operator-(const NormalPolynomial& rhs) const;
  NormalPolynomial scaled(cplx factor) const;
  NormalPolynomial adjoint() const;

 private:
  // canonical: keys strictly increasing, no zero coefficients
  std::vector<NormalTerm> terms_;
  friend NormalPolynomial product(const NormalPolynomial&,
                                  const NormalPolynomial&);
  static NormalPolynomial from_accumulated(
      std::vector<std::pair<PowerKey, cplx>> acc);
};

NormalPolynomial product(const NormalPolynomial& lhs,
                         const NormalPolynomial& rhs);
NormalPolynomial commutator(const NormalPolynomial& lhs,
                            const NormalPolynomial& rhs);

// Single-mode input states the expectation rules know about.
enum class ModeInputKind { Vacuum, Fock, Coherent, SqueezedCoherent };

struct ModeInput {
  ModeInputKind kind = ModeInputKind::Vacuum;
  long fock_n = 0;
  cplx alpha = 0.0;  // coherent displacement (applied before the squeeze)
  double r = 0.0;    // squeeze modulus
  double angle = 0.0;  // squeeze angle, same convention as states.hpp
};

// <prod_m (m†)^p (m)^q> for a product input state. Vacuum and Fock are
// delta rules, coherent is conj(alpha)^p alpha^q, and the squeezed-coherent
// rule substitutes S†D† m D S = cosh r (m + alpha) - e^{-i angle} sinh r
// (m† + conj alpha) and takes the vacuum coefficient of the re-ordered
// polynomial.
cplx expectation(const NormalPolynomial& poly,
                 const std::array<ModeInput, kNumModes>& input);

}  // namespace trilinpa
