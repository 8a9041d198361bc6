#include "trilinpa/fock_basis.hpp"

#include <algorithm>
#include <string>

namespace trilinpa {

std::uint64_t FockBasis::pack(const Occupation& occ) {
  // 16 bits per mode is plenty: caps are bounded by the state-count limit
  // long before any single occupation reaches 2^16.
  std::uint64_t key = 0;
  for (int m = 0; m < kNumModes; ++m) {
    key = (key << 16) | static_cast<std::uint64_t>(occ[m] & 0xffff);
  }
  return key;
}

FockBasis::FockBasis(const Occupation& caps, std::optional<SectorFilter> sector,
                     std::size_t max_states)
    : caps_(caps), sector_(sector) {
  for (int m = 0; m < kNumModes; ++m) {
    if (caps[m] < 0) {
      throw ValidationError("negative cap for mode " +
                            std::string(mode_name(m)));
    }
    if (caps[m] >= (1 << 16)) {
      throw CapOverflow("cap for mode " + std::string(mode_name(m)) +
                        " exceeds representable occupation");
    }
  }
  if (sector_ && (sector_->c1 < 0 || sector_->c2 < 0)) {
    throw ValidationError("sector charges must be non-negative");
  }

  Occupation n{};
  for (n[0] = 0; n[0] <= caps[0]; ++n[0])
    for (n[1] = 0; n[1] <= caps[1]; ++n[1])
      for (n[2] = 0; n[2] <= caps[2]; ++n[2])
        for (n[3] = 0; n[3] <= caps[3]; ++n[3]) {
          if (sector_ &&
              (charge_c1(n) != sector_->c1 || charge_c2(n) != sector_->c2)) {
            continue;
          }
          if (states_.size() >= max_states) {
            throw CapOverflow("basis would exceed " +
                              std::to_string(max_states) + " states");
          }
          states_.push_back(n);
        }

  if (states_.empty()) {
    throw EmptySector("no occupation tuple satisfies caps and sector filter");
  }

  index_map_.reserve(2 * states_.size());
  for (int i = 0; i < dimension(); ++i) {
    index_map_.emplace(pack(states_[i]), i);
  }

  neighbors_.assign(states_.size() * kNumModes * 2, -1);
  for (int i = 0; i < dimension(); ++i) {
    for (int m = 0; m < kNumModes; ++m) {
      Occupation occ = states_[i];
      const std::size_t slot = 2 * (static_cast<std::size_t>(i) * kNumModes + m);
      if (occ[m] > 0) {
        --occ[m];
        auto it = index_map_.find(pack(occ));
        if (it != index_map_.end()) neighbors_[slot] = it->second;
        ++occ[m];
      }
      if (occ[m] < caps_[m]) {
        ++occ[m];
        auto it = index_map_.find(pack(occ));
        if (it != index_map_.end()) neighbors_[slot + 1] = it->second;
      }
    }
  }
}

bool FockBasis::contains(const Occupation& occ) const {
  return index_map_.find(pack(occ)) != index_map_.end();
}

int FockBasis::index_of(const Occupation& occ) const {
  auto it = index_map_.find(pack(occ));
  if (it == index_map_.end()) {
    std::string s = "(";
    for (int m = 0; m < kNumModes; ++m) {
      s += std::to_string(occ[m]);
      s += (m + 1 < kNumModes) ? "," : ")";
    }
    throw NotInBasis("occupation " + s + " not in basis");
  }
  return it->second;
}

std::vector<std::pair<SectorFilter, int>> FockBasis::sector_partition() const {
  std::vector<std::pair<SectorFilter, int>> out;
  // States are lexicographic, not charge-ordered; collect then sort.
  std::vector<std::pair<long, long>> charges(states_.size());
  for (std::size_t i = 0; i < states_.size(); ++i) {
    charges[i] = {charge_c1(states_[i]), charge_c2(states_[i])};
  }
  std::sort(charges.begin(), charges.end());
  for (std::size_t i = 0; i < charges.size();) {
    std::size_t j = i;
    while (j < charges.size() && charges[j] == charges[i]) ++j;
    out.push_back({SectorFilter{charges[i].first, charges[i].second},
                   static_cast<int>(j - i)});
    i = j;
  }
  return out;
}

}  // namespace trilinpa
