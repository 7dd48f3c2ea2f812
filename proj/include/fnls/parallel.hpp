#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace fnls {

/// Worker count: explicit setting, else FNLS_THREADS, else hardware.
inline int& thread_count_ref() {
    static int n = 0;
    return n;
}

inline void set_thread_count(int n) { thread_count_ref() = n; }

inline int thread_count() {
    if (thread_count_ref() > 0) return thread_count_ref();
    if (const char* env = std::getenv("FNLS_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

/// Index-parallel loop; f(i) must only write state owned by index i, which
/// keeps results deterministic under any schedule.
template <typename F>
void parallel_for(size_t n, F&& f) {
    const int workers = std::min<size_t>(thread_count(), n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (size_t i = static_cast<size_t>(w); i < n; i += workers) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

} // namespace fnls
