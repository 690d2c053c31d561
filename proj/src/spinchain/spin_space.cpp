#include "xxxlab/spinchain/spin_space.hpp"

#include <bit>

namespace xxxlab {

std::vector<std::uint32_t> weight_indices(int n, int l) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s)
    if (std::popcount(s) == l) out.push_back(s);
  return out;
}

std::vector<std::size_t> weight_positions(int n, int l) {
  std::vector<std::size_t> pos(spin_dim(n), static_cast<std::size_t>(-1));
  auto idx = weight_indices(n, l);
  for (std::size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = i;
  return pos;
}

}  // namespace xxxlab
