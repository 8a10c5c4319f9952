#ifndef FZV_PAR_HPP
#define FZV_PAR_HPP

#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace fzv {

// Deterministic chunked map-reduce: the index range [0, n) is split into
// fixed chunks, workers fill per-chunk partials, and partials are folded in
// chunk order. Output is bit-identical for any thread count.
template <typename Partial>
Partial parallel_reduce(std::size_t n, unsigned threads, std::size_t chunk,
                        const std::function<void(std::size_t, std::size_t, Partial&)>& work,
                        const std::function<void(Partial&, const Partial&)>& fold,
                        const Partial& init) {
    if (chunk == 0) chunk = 1;
    std::size_t nchunks = n == 0 ? 0 : (n + chunk - 1) / chunk;
    std::vector<Partial> partials(nchunks, init);
    if (threads <= 1 || nchunks <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c) {
            std::size_t lo = c * chunk, hi = std::min(n, lo + chunk);
            work(lo, hi, partials[c]);
        }
    } else {
        std::vector<std::thread> pool;
        std::size_t next = 0;
        std::mutex mtx;
        auto runner = [&]() {
            for (;;) {
                std::size_t c;
                {
                    std::lock_guard<std::mutex> lk(mtx);
                    if (next >= nchunks) return;
                    c = next++;
                }
                std::size_t lo = c * chunk, hi = std::min(n, lo + chunk);
                work(lo, hi, partials[c]);
            }
        };
        unsigned nt = static_cast<unsigned>(std::min<std::size_t>(threads, nchunks));
        pool.reserve(nt);
        for (unsigned t = 0; t < nt; ++t) pool.emplace_back(runner);
        for (auto& th : pool) th.join();
    }
    Partial acc = init;
    for (std::size_t c = 0; c < nchunks; ++c) fold(acc, partials[c]);
    return acc;
}

} // namespace fzv

#endif
