#pragma once

// Minimal fork/join helpers. Work items are claimed from an atomic counter and
// results are always merged in item order, so output never depends on the
// worker count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cocube {

/// Runs body(k) for k in [0, count) on up to `workers` threads.
template <typename Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
    workers = std::max(1u, workers);
    if (workers == 1 || count <= 1) {
        for (std::size_t k = 0; k < count; ++k) body(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        try {
            for (std::size_t k = next++; k < count; k = next++) body(k);
        } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = count;
        }
    };
    std::vector<std::thread> threads;
    const auto spawn = std::min<std::size_t>(workers, count);
    for (std::size_t t = 0; t < spawn; ++t) threads.emplace_back(run);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

/// Indices k in [0, count) with pred(k), ascending.
template <typename Pred>
std::vector<std::size_t> parallel_filter(std::size_t count, unsigned workers, Pred&& pred) {
    std::vector<char> keep(count, 0);
    parallel_for(count, workers, [&](std::size_t k) { keep[k] = pred(k) ? 1 : 0; });
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < count; ++k) {
        if (keep[k]) out.push_back(k);
    }
    return out;
}

}  // namespace cocube
