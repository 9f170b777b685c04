#pragma once

#include <cstddef>
#include <vector>

#include "kfa/numeric.hpp"

namespace kfa {

/// Integers begin+1 .. end.
struct Block {
  u64 begin;
  u64 end;
};

inline constexpr u64 kDefaultBlock = u64{1} << 16;

/// Split 1..total into consecutive blocks of block_size. The split depends only
/// on its arguments, never on the thread count, so reductions performed in
/// block order are reproducible.
std::vector<Block> fixed_blocks(u64 total, u64 block_size);

/// Sets the OpenMP thread count (no-op without OpenMP). threads <= 0 keeps the
/// runtime default.
void set_threads(int threads);
int max_threads();

}  // namespace kfa
