#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace gamesh {

// 0 = no explicit cap. The GAMESH_THREADS environment variable (when set to a
// positive integer) acts as a second cap; the smaller one wins.
void set_thread_cap(int cap);

// Workers that would actually be used for `jobs` independent items.
int worker_count(std::int64_t jobs);

// Runs fn(i) for i in [0, n). Work is split into contiguous index blocks, one
// per worker, so any fn writing only to slot i is race-free and the result is
// identical to the sequential run. Exceptions propagate from the first
// throwing block.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

} // namespace gamesh
