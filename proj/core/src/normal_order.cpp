#include "trilinpa/normal_order.hpp"

#include <algorithm>
#include <cmath>

#include "trilinpa/errors.hpp"

namespace trilinpa {

namespace {

constexpr double kCoeffEps = 0.0;  // keep exact zeros out, nothing else

const std::array<double, kMaxPower + 1>& factorials() {
  static const std::array<double, kMaxPower + 1> table = [] {
    std::array<double, kMaxPower + 1> f{};
    f[0] = 1.0;
    for (int n = 1; n <= kMaxPower; ++n) f[n] = f[n - 1] * n;
    return f;
  }();
  return table;
}

double binom(int n, int k) {
  const auto& f = factorials();
  return f[n] / (f[k] * f[n - k]);
}

void check_key(const PowerKey& key) {
  for (int v : key)
    if (v < 0 || v > kMaxPower)
      throw ValidationError("normal-order exponent outside [0, 12]");
}

}  // namespace

NormalPolynomial NormalPolynomial::from_accumulated(
    std::vector<std::pair<PowerKey, cplx>> acc) {
  std::sort(acc.begin(), acc.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  NormalPolynomial out;
  for (std::size_t i = 0; i < acc.size();) {
    cplx c = acc[i].second;
    std::size_t j = i + 1;
    while (j < acc.size() && acc[j].first == acc[i].first) c += acc[j++].second;
    if (std::abs(c.real()) > kCoeffEps || std::abs(c.imag()) > kCoeffEps)
      out.terms_.push_back({c, acc[i].first});
    i = j;
  }
  return out;
}

NormalPolynomial NormalPolynomial::constant(cplx c) {
  return monomial(c, PowerKey{});
}

NormalPolynomial NormalPolynomial::monomial(cplx coeff, const PowerKey& key) {
  check_key(key);
  NormalPolynomial out;
  if (coeff != cplx(0.0, 0.0)) out.terms_.push_back({coeff, key});
  return out;
}

NormalPolynomial NormalPolynomial::ladder(int mode, bool dagger) {
  if (mode < 0 || mode >= kNumModes)
    throw ValidationError("mode index out of range");
  PowerKey key{};
  key[static_cast<std::size_t>(2 * mode + (dagger ? 0 : 1))] = 1;
  return monomial(1.0, key);
}

NormalPolynomial NormalPolynomial::number(int mode) {
  if (mode < 0 || mode >= kNumModes)
    throw ValidationError("mode index out of range");
  PowerKey key{};
  key[static_cast<std::size_t>(2 * mode)] = 1;
  key[static_cast<std::size_t>(2 * mode + 1)] = 1;
  return monomial(1.0, key);
}

cplx NormalPolynomial::vacuum_coefficient() const {
  const PowerKey zero{};
  for (const auto& t : terms_)
    if (t.key == zero) return t.coeff;
  return 0.0;
}

NormalPolynomial NormalPolynomial::operator+(
    const NormalPolynomial& rhs) const {
  std::vector<std::pair<PowerKey, cplx>> acc;
  acc.reserve(terms_.size() + rhs.terms_.size());
  for (const auto& t : terms_) acc.emplace_back(t.key, t.coeff);
  for (const auto& t : rhs.terms_) acc.emplace_back(t.key, t.coeff);
  return from_accumulated(std::move(acc));
}

NormalPolynomial NormalPolynomial::operator-(
    const NormalPolynomial& rhs) const {
  return *this + rhs.scaled(-1.0);
}

NormalPolynomial NormalPolynomial::scaled(cplx factor) const {
  NormalPolynomial out;
  if (factor == cplx(0.0, 0.0)) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.coeff *= factor;
  return out;
}

NormalPolynomial NormalPolynomial::adjoint() const {
  std::vector<std::pair<PowerKey, cplx>> acc;
  acc.reserve(terms_.size());
  for (const auto& t : terms_) {
    PowerKey key = t.key;
    for (int m = 0; m < kNumModes; ++m)
      std::swap(key[static_cast<std::size_t>(2 * m)],
                key[static_cast<std::size_t>(2 * m + 1)]);
    acc.emplace_back(key, std::conj(t.coeff));
  }
  return from_accumulated(std::move(acc));
}

NormalPolynomial product(const NormalPolynomial& lhs,
                         const NormalPolynomial& rhs) {
  std::vector<std::pair<PowerKey, cplx>> acc;
  for (const auto& t1 : lhs.terms_) {
    for (const auto& t2 : rhs.terms_) {
      // per-mode contraction of m^{q1} m†^{p2}
      PowerKey key{};
      struct Choice {
        int kmax;
        int q1, p2;
      };
      std::array<Choice, kNumModes> choice{};
      for (int m = 0; m < kNumModes; ++m) {
        const int q1 = t1.key[static_cast<std::size_t>(2 * m + 1)];
        const int p2 = t2.key[static_cast<std::size_t>(2 * m)];
        choice[static_cast<std::size_t>(m)] = {std::min(q1, p2), q1, p2};
      }
      const cplx base = t1.coeff * t2.coeff;
      std::array<int, kNumModes> k{};
      // walk the (small) cartesian product of contraction counts
      auto walk = [&](auto&& self, int m, double w) -> void {
        if (m == kNumModes) {
          for (int j = 0; j < kNumModes; ++j) {
            const auto& ch = choice[static_cast<std::size_t>(j)];
            key[static_cast<std::size_t>(2 * j)] =
                t1.key[static_cast<std::size_t>(2 * j)] + ch.p2 -
                k[static_cast<std::size_t>(j)];
            key[static_cast<std::size_t>(2 * j + 1)] =
                ch.q1 + t2.key[static_cast<std::size_t>(2 * j + 1)] -
                k[static_cast<std::size_t>(j)];
          }
          check_key(key);
          acc.emplace_back(key, base * w);
          return;
        }
        const auto& ch = choice[static_cast<std::size_t>(m)];
        for (int kk = 0; kk <= ch.kmax; ++kk) {
          k[static_cast<std::size_t>(m)] = kk;
          self(self, m + 1,
               w * factorials()[kk] * binom(ch.q1, kk) * binom(ch.p2, kk));
        }
      };
      walk(walk, 0, 1.0);
    }
  }
  return NormalPolynomial::from_accumulated(std::move(acc));
}

NormalPolynomial commutator(const NormalPolynomial& lhs,
                            const NormalPolynomial& rhs) {
  return product(lhs, rhs) - product(rhs, lhs);
}

namespace {

cplx fock_factor(int p, int q, long n) {
  if (p != q) return 0.0;
  if (q > n) return 0.0;
  double f = 1.0;
  for (int j = 0; j < q; ++j) f *= static_cast<double>(n - j);
  return f;
}

cplx power(cplx base, int e) {
  cplx out = 1.0;
  for (int j = 0; j < e; ++j) out *= base;
  return out;
}

cplx squeezed_factor(int p, int q, const ModeInput& in) {
  // substitute on a scratch single-mode algebra (mode 0 of a fresh key)
  const double c = std::cosh(in.r);
  const double s = std::sinh(in.r);
  const cplx phase = std::exp(cplx(0.0, -in.angle));
  NormalPolynomial msub =
      NormalPolynomial::ladder(0, false).scaled(c) -
      NormalPolynomial::ladder(0, true).scaled(phase * s) +
      NormalPolynomial::constant(c * in.alpha -
                                 phase * s * std::conj(in.alpha));
  NormalPolynomial mdag = msub.adjoint();
  NormalPolynomial accp = NormalPolynomial::constant(1.0);
  for (int j = 0; j < p; ++j) accp = product(accp, mdag);
  for (int j = 0; j < q; ++j) accp = product(accp, msub);
  return accp.vacuum_coefficient();
}

cplx mode_factor(int p, int q, const ModeInput& in) {
  switch (in.kind) {
    case ModeInputKind::Vacuum:
      return (p == 0 && q == 0) ? cplx(1.0) : cplx(0.0);
    case ModeInputKind::Fock:
      return fock_factor(p, q, in.fock_n);
    case ModeInputKind::Coherent:
      return power(std::conj(in.alpha), p) * power(in.alpha, q);
    case ModeInputKind::SqueezedCoherent:
      return squeezed_factor(p, q, in);
  }
  return 0.0;  // unreachable
}

}  // namespace

cplx expectation(const NormalPolynomial& poly,
                 const std::array<ModeInput, kNumModes>& input) {
  cplx total = 0.0;
  for (const auto& t : poly.terms()) {
    cplx c = t.coeff;
    for (int m = 0; m < kNumModes && c != cplx(0.0, 0.0); ++m)
      c *= mode_factor(t.key[static_cast<std::size_t>(2 * m)],
                       t.key[static_cast<std::size_t>(2 * m + 1)],
                       input[static_cast<std::size_t>(m)]);
    total += c;
  }
  return total;
}

}  // namespace trilinpa
