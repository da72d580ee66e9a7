#include "gamesh/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>

namespace gamesh {

namespace {

std::atomic<int> g_cap{0};

int env_cap() {
    static const int value = [] {
        const char* s = std::getenv("GAMESH_THREADS");
        if (!s) return 0;
        const long v = std::strtol(s, nullptr, 10);
        return v > 0 ? static_cast<int>(v) : 0;
    }();
    return value;
}

} // namespace

void set_thread_cap(int cap) { g_cap.store(cap > 0 ? cap : 0); }

int worker_count(std::int64_t jobs) {
    if (jobs <= 1) return 1;
    int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const int cap = g_cap.load(); cap > 0) n = std::min(n, cap);
    if (const int cap = env_cap(); cap > 0) n = std::min(n, cap);
    return static_cast<int>(std::min<std::int64_t>(n, jobs));
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
    if (n <= 0) return;
    const int workers = worker_count(n);
    if (workers == 1) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::int64_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min(n, lo + chunk);
        pool.emplace_back([&, lo, hi] {
            try {
                for (std::int64_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace gamesh
