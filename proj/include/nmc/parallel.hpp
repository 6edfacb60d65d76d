#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace nmc {

// Runs fn(chunk, begin, end) over fixed-size chunks of [0, total) on `workers` threads and folds the
// per-chunk results in chunk order, so the outcome does not depend on the worker count.
template <class R, class Fn, class Merge>
R run_chunks(uint64_t total, uint64_t chunk, unsigned workers, Fn fn, Merge merge, R init) {
    chunk = std::max<uint64_t>(chunk, 1);
    const uint64_t n_chunks = (total + chunk - 1) / chunk;
    std::vector<std::optional<R>> parts(n_chunks);
    std::atomic<uint64_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    auto work = [&] {
        for (uint64_t c; (c = next.fetch_add(1)) < n_chunks;) {
            try {
                parts[c] = fn(c, c * chunk, std::min(total, (c + 1) * chunk));
            } catch (...) {
                std::lock_guard lock(err_mu);
                if (!err) err = std::current_exception();
            }
        }
    };
    workers = std::max(1u, workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (err) std::rethrow_exception(err);
    for (auto& p : parts) merge(init, *p);
    return init;
}

}  // namespace nmc
