#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace solq {

// Fixed-chunk parallel loop. The index range [0, n) is split into chunks of
// size `chunk`; workers pull chunks dynamically but every chunk writes only
// its own slot, so any ordered combination of the slots is independent of the
// worker count. fn(chunk_index, begin, end).
template <typename Fn>
void parallel_chunks(std::size_t n, std::size_t chunk, unsigned workers, Fn&& fn) {
    if (n == 0) return;
    if (chunk == 0) chunk = 1;
    const std::size_t n_chunks = (n + chunk - 1) / chunk;
    if (workers <= 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c)
            fn(c, c * chunk, std::min(n, (c + 1) * chunk));
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            fn(c, c * chunk, std::min(n, (c + 1) * chunk));
        }
    };
    std::vector<std::thread> pool;
    const unsigned spawn = std::min<std::size_t>(workers, n_chunks);
    pool.reserve(spawn);
    for (unsigned t = 0; t < spawn; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

// Chunked map-reduce with a combination order fixed by chunk index.
template <typename T, typename Map, typename Combine>
T parallel_reduce_ordered(std::size_t n, std::size_t chunk, unsigned workers, T init,
                          Map&& map_chunk, Combine&& combine) {
    if (n == 0) return init;
    if (chunk == 0) chunk = 1;
    const std::size_t n_chunks = (n + chunk - 1) / chunk;
    std::vector<T> slots(n_chunks, init);
    parallel_chunks(n, chunk, workers, [&](std::size_t c, std::size_t lo, std::size_t hi) {
        slots[c] = map_chunk(lo, hi);
    });
    T acc = init;
    for (const T& s : slots) acc = combine(acc, s);
    return acc;
}

} // namespace solq
