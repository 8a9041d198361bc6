#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "trilinpa/errors.hpp"
#include "trilinpa/types.hpp"

namespace trilinpa {

// Restriction to one simultaneous eigenspace of the conserved charges
// C1 = n_b + 2 n_e + 2 n_g and C2 = n_a + n_e + n_g. Both commute with the
// four-mode Hamiltonian, so a sector basis is closed under the dynamics.
struct SectorFilter {
  long c1 = 0;
  long c2 = 0;
};

class FockBasis;
using FockBasisPtr = std::shared_ptr<const FockBasis>;

// Truncated occupation-number basis over the four modes. States are
// enumerated lexicographically in (n_a, n_b, n_e, n_g). Immutable after
// construction; share via FockBasisPtr.
class FockBasis {
 public:
  // caps[m] is the largest retained occupation of mode m (inclusive).
  // Throws CapOverflow when the enumeration would exceed max_states and
  // EmptySector when no tuple satisfies the constraints.
  explicit FockBasis(const Occupation& caps,
                     std::optional<SectorFilter> sector = std::nullopt,
                     std::size_t max_states = kDefaultMaxStates);

  static constexpr std::size_t kDefaultMaxStates = 5'000'000;

  int dimension() const { return static_cast<int>(states_.size()); }
  const Occupation& caps() const { return caps_; }
  const std::optional<SectorFilter>& sector() const { return sector_; }
  const std::vector<Occupation>& states() const { return states_; }

  const Occupation& occupation(int index) const { return states_[index]; }

  bool contains(const Occupation& occ) const;
  // Throws NotInBasis.
  int index_of(const Occupation& occ) const;

  // Basis index reached by removing (lowered) or adding (raised) one quantum
  // in mode m, or -1 when the neighbor is outside the basis (vacuum floor,
  // cap ceiling, or sector filter). Precomputed, O(1).
  int lowered(int index, int m) const {
    return neighbors_[2 * (static_cast<std::size_t>(index) * kNumModes + m)];
  }
  int raised(int index, int m) const {
    return neighbors_[2 * (static_cast<std::size_t>(index) * kNumModes + m) + 1];
  }

  // Distinct (C1, C2) pairs represented in this basis with their state
  // counts, in ascending (C1, C2) order. Sector bases report exactly one.
  std::vector<std::pair<SectorFilter, int>> sector_partition() const;

 private:
  static std::uint64_t pack(const Occupation& occ);

  Occupation caps_{};
  std::optional<SectorFilter> sector_;
  std::vector<Occupation> states_;
  std::unordered_map<std::uint64_t, int> index_map_;
  std::vector<int> neighbors_;  // dim * kNumModes * 2, [lowered, raised]
};

}  // namespace trilinpa
