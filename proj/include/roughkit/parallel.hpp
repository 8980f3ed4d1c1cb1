#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace roughkit {

/// Worker count for parallel sweeps: explicit --threads flag beats
/// ROUGHKIT_THREADS beats single-threaded default.
inline unsigned thread_count(unsigned requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ROUGHKIT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return 1;
}

/// Static block partition of [0, count); deterministic regardless of worker count.
template <class F>
void parallel_for(std::size_t count, unsigned threads, F&& body) {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    const unsigned w = std::min<std::size_t>(threads, count);
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (unsigned t = 0; t < w; ++t) {
        pool.emplace_back([=, &body] {
            for (std::size_t i = t; i < count; i += w) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace roughkit
