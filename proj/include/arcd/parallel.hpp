#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace arcd {

inline unsigned resolve_parallelism(unsigned max_parallel, std::size_t work_items) {
    unsigned workers = max_parallel == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : max_parallel;
    if (work_items < workers) workers = static_cast<unsigned>(std::max<std::size_t>(1, work_items));
    return workers;
}

/// Splits [0, count) into `chunks` contiguous ranges and runs fn(chunk, begin, end) for each,
/// one thread per chunk. Callers keep per-chunk state indexed by `chunk` and merge it in chunk
/// order afterwards; results then depend only on what each index computes.
template <class Fn>
void for_each_chunk(std::size_t count, unsigned chunks, Fn&& fn) {
    if (chunks <= 1 || count <= 1) {
        fn(std::size_t{0}, std::size_t{0}, count);
        return;
    }
    std::vector<std::exception_ptr> errors(chunks);
    std::vector<std::thread> threads;
    threads.reserve(chunks);
    for (unsigned c = 0; c < chunks; ++c) {
        const std::size_t begin = count * c / chunks;
        const std::size_t end = count * (c + 1) / chunks;
        threads.emplace_back([&, c, begin, end] {
            try {
                fn(static_cast<std::size_t>(c), begin, end);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace arcd
