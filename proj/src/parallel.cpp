#include "fhr/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fhr {

namespace {

std::atomic<std::size_t> g_override{0};

std::size_t default_thread_count() {
    static const std::size_t n = [] {
        if (const char* env = std::getenv("FHR_THREADS")) {
            try {
                const long v = std::stol(env);
                if (v > 0) return static_cast<std::size_t>(v);
            } catch (const std::exception&) {
            }
        }
        return std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }();
    return n;
}

}  // namespace

std::size_t thread_count() {
    const std::size_t o = g_override.load();
    return o > 0 ? o : default_thread_count();
}

void set_thread_count(std::size_t n) { g_override.store(n); }

void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body) {
    if (end <= begin) return;
    const std::size_t count = end - begin;
    const std::size_t workers = std::min(thread_count(), count);
    if (workers <= 1) {
        for (std::size_t i = begin; i < end; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{begin};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= end) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(end);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace fhr
