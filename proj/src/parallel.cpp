#include "kfa/parallel.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kfa {

std::vector<Block> fixed_blocks(u64 total, u64 block_size) {
  std::vector<Block> out;
  if (block_size == 0) block_size = 1;
  out.reserve(static_cast<std::size_t>(total / block_size + 1));
  for (u64 begin = 0; begin < total; begin += block_size) {
    out.push_back({begin, std::min(total, begin + block_size)});
  }
  return out;
}

void set_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace kfa
