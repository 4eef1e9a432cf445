#include "dirac3t/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace dirac3t {

namespace {

std::atomic<int> g_cap{0};  // 0 = unset

int env_threads() {
    const char* e = std::getenv("DIRAC3T_THREADS");
    if (!e) return 0;
    const int v = std::atoi(e);
    return v > 0 ? v : 0;
}

}  // namespace

int max_threads() {
    const int cap = g_cap.load();
    if (cap > 0) return cap;
    const int env = env_threads();
    if (env > 0) return env;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? int(hw) : 1;
}

void set_max_threads(int n) { g_cap.store(n > 0 ? n : 0); }

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body) {
    const int workers = std::min<std::int64_t>(max_threads(), n);
    if (workers <= 1) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            for (std::int64_t i = w; i < n; i += workers) body(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace dirac3t
