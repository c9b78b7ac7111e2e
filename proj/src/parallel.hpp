#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace mvg::detail {

// Runs fn(i) for i in [0, n) split into contiguous blocks, one per worker.
// If any call throws, the exception from the lowest failing block is
// rethrown after all workers finish, so error reporting does not depend on
// scheduling.
template <class Fn>
void parallel_for(std::size_t n, std::size_t threads, Fn&& fn) {
    if (threads <= 1 || n < 2 * threads) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::size_t blocks = threads;
    std::vector<std::exception_ptr> errors(blocks);
    {
        std::vector<std::jthread> pool;
        pool.reserve(blocks);
        for (std::size_t b = 0; b < blocks; ++b) {
            const std::size_t lo = n * b / blocks;
            const std::size_t hi = n * (b + 1) / blocks;
            pool.emplace_back([&, lo, hi, b] {
                try {
                    for (std::size_t i = lo; i < hi; ++i) fn(i);
                } catch (...) {
                    errors[b] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace mvg::detail
