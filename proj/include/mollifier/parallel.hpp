#pragma once

/**
 * @file parallel.hpp
 * @brief Order-preserving parallel map-reduce over an index range.
 *
 * Each index is evaluated independently (possibly on another thread) and the
 * partial results are summed in index order afterwards, so the result is
 * bit-identical for every thread count.
 */

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace mollifier {

/// Worker count: MOLLIFIER_THREADS if set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
inline unsigned thread_count() {
    if (const char* env = std::getenv("MOLLIFIER_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Evaluates f(0), ..., f(n-1) and returns init + f(0) + ... + f(n-1), summed
/// left to right. f must be safe to call concurrently.
template <class S, class F>
S ordered_sum(std::size_t n, F&& f, S init = S{}) {
    std::vector<S> parts(n, init);
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) parts[i] = f(i);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < n; i += workers) parts[i] = f(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) t.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }
    S total = init;
    for (std::size_t i = 0; i < n; ++i) total += parts[i];
    return total;
}

}  // namespace mollifier
