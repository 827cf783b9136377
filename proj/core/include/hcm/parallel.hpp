#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace hcm {

/// Runs body(i) for i in [0, count) on `workers` threads (1 = inline).
/// The first exception thrown is rethrown after all workers stop.
template <typename Body>
void parallel_for(std::size_t count, int workers, Body&& body)
{
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next.store(count);
            }
        }
    };
    std::vector<std::thread> pool;
    const auto n = static_cast<std::size_t>(std::min<std::size_t>(static_cast<std::size_t>(workers), count));
    for (std::size_t t = 0; t < n; ++t)
        pool.emplace_back(run);
    for (auto& th : pool)
        th.join();
    if (error)
        std::rethrow_exception(error);
}

/// Smallest i in [0, count) with pred(i) true, whatever the schedule: indices
/// above the best hit found so far are skipped, those below are still run.
template <typename Pred>
auto parallel_find_first(std::size_t count, int workers, Pred&& pred) -> std::optional<std::size_t>
{
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            if (pred(i))
                return i;
        return std::nullopt;
    }
    std::atomic<std::size_t> best{none};
    parallel_for(count, workers, [&](std::size_t i) {
        if (i > best.load())
            return;
        if (pred(i)) {
            std::size_t cur = best.load();
            while (i < cur && !best.compare_exchange_weak(cur, i)) {
            }
        }
    });
    if (best.load() == none)
        return std::nullopt;
    return best.load();
}

} // namespace hcm
