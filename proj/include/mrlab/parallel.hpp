#pragma once

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace mrlab {

// Worker count: hardware concurrency, capped by the MRLAB_THREADS env var.
inline unsigned worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("MRLAB_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned>(cap) < hw) hw = static_cast<unsigned>(cap);
    }
    return hw;
}

// Evaluates fn(i) for i in [0, count) across workers and returns the result
// with the smallest index for which fn produced a value. The reduction makes
// the outcome independent of scheduling, so parallel and serial runs agree.
template <typename R, typename Fn>
std::optional<R> parallel_first(std::size_t count, Fn&& fn, std::size_t chunk = 64) {
    const unsigned workers = worker_count();
    if (workers <= 1 || count < 2 * chunk) {
        for (std::size_t i = 0; i < count; ++i)
            if (auto r = fn(i)) return r;
        return std::nullopt;
    }

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best_idx{SIZE_MAX};
    std::optional<R> best;
    std::mutex best_mu;

    const auto work = [&]() {
        while (true) {
            const std::size_t start = next.fetch_add(chunk);
            if (start >= count) return;
            if (start >= best_idx.load()) return;  // a hit strictly earlier exists
            const std::size_t end = std::min(count, start + chunk);
            for (std::size_t i = start; i < end; ++i) {
                if (i >= best_idx.load()) break;
                if (auto r = fn(i)) {
                    std::lock_guard<std::mutex> lock(best_mu);
                    if (i < best_idx.load()) {
                        best_idx.store(i);
                        best = std::move(r);
                    }
                    break;
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return best;
}

}  // namespace mrlab
