#pragma once

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lrk {

// Run fn(i) for i in [0, n) on up to `workers` threads. Each index writes into
// its own result slot, so output order is fixed by index and the worker count
// can only change scheduling, never results. Exceptions are captured and the
// first one (by index) is rethrown after all threads join.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
    if (workers < 1) workers = 1;
    const std::size_t nw = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    if (nw <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    std::size_t next = 0;
    std::mutex m;
    for (std::size_t w = 0; w < nw; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i;
                {
                    std::lock_guard<std::mutex> lock(m);
                    if (next >= n) return;
                    i = next++;
                }
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (std::size_t i = 0; i < n; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
}

} // namespace lrk
