#pragma once
// Deterministic chunked parallelism.
//
// Ranges are cut into fixed-size chunks independent of the worker count;
// workers claim chunks through an atomic cursor and per-chunk results are
// combined in chunk order afterwards.  Output is therefore byte-identical
// for any thread count, including 1.

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace mfgap {

inline unsigned& runtime_threads() {
    static unsigned n = 1;
    return n;
}

// chunk_fn(lo, hi) -> R over inclusive subranges; combine(acc, part) folds
// results in ascending chunk order.
template <class R, class ChunkFn, class Combine>
R parallel_reduce(uint64_t lo, uint64_t hi, R init, ChunkFn&& chunk_fn, Combine&& combine,
                  uint64_t chunk_size = (1ull << 20)) {
    if (lo > hi) return init;
    uint64_t span = hi - lo + 1;
    uint64_t chunks = (span + chunk_size - 1) / chunk_size;
    unsigned workers = runtime_threads();
    if (workers <= 1 || chunks <= 1) {
        R acc = std::move(init);
        for (uint64_t c = 0; c < chunks; ++c) {
            uint64_t clo = lo + c * chunk_size;
            uint64_t chi = (c + 1 == chunks) ? hi : clo + chunk_size - 1;
            combine(acc, chunk_fn(clo, chi));
        }
        return acc;
    }
    std::vector<R> parts(chunks);
    std::atomic<uint64_t> cursor{0};
    auto work = [&] {
        for (;;) {
            uint64_t c = cursor.fetch_add(1);
            if (c >= chunks) return;
            uint64_t clo = lo + c * chunk_size;
            uint64_t chi = (c + 1 == chunks) ? hi : clo + chunk_size - 1;
            parts[c] = chunk_fn(clo, chi);
        }
    };
    std::vector<std::thread> pool;
    unsigned spawn = workers < chunks ? workers : static_cast<unsigned>(chunks);
    pool.reserve(spawn);
    for (unsigned i = 0; i < spawn; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    R acc = std::move(init);
    for (uint64_t c = 0; c < chunks; ++c) combine(acc, std::move(parts[c]));
    return acc;
}

}  // namespace mfgap
