#include "fsilab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace fsilab {

int thread_count() {
    static const int n = [] {
        const char* env = std::getenv("FSILAB_THREADS");
        if (!env) return 1;
        const int v = std::atoi(env);
        if (v < 1) return 1;
        return v > 64 ? 64 : v;
    }();
    return n;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    const int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

} // namespace fsilab
