#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nbcrit::detail {

// Runs fn(i) for i in [begin, end) on `threads` workers, index i handled by
// worker (i - begin) % threads. The first exception is rethrown after join.
template <class Fn>
void parallel_for(std::int64_t begin, std::int64_t end, unsigned threads, Fn&& fn) {
    if (end <= begin) {
        return;
    }
    auto const span = static_cast<unsigned long long>(end - begin);
    threads = std::max(1u, static_cast<unsigned>(std::min<unsigned long long>(threads, span)));
    if (threads == 1) {
        for (std::int64_t i = begin; i < end; ++i) {
            fn(i);
        }
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::int64_t i = begin + w; i < end; i += threads) {
                    fn(i);
                }
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

} // namespace nbcrit::detail
