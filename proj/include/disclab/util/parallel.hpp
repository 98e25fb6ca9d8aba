#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace disclab {

/// Worker count: --threads flag or DISCLAB_THREADS, else hardware.
inline int defaultThreads() {
    if (const char* env = std::getenv("DISCLAB_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

/// Run body(i) for i in [0, n) on `threads` workers. Tasks are claimed from a
/// shared counter; each index is processed exactly once. The caller is
/// responsible for writing results into per-index slots so that the outcome
/// is independent of the schedule.
inline void parallelFor(size_t n, const std::function<void(size_t)>& body, int threads = 0) {
    if (threads <= 0) threads = defaultThreads();
    if (threads == 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto work = [&]() {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) break;
            try {
                body(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                break;
            }
        }
    };
    std::vector<std::thread> pool;
    const int nw = static_cast<int>(std::min<size_t>(threads, n));
    pool.reserve(nw);
    for (int t = 0; t < nw; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace disclab
