#include "illiqcorr/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace illiq {

namespace {

unsigned detect_threads() {
    if (const char* env = std::getenv("ILLIQCORR_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

std::atomic<unsigned> g_max_threads{0};

// Set while a worker is executing loop bodies; nested parallel_for calls run
// serially instead of oversubscribing the machine.
thread_local bool t_inside_parallel = false;

}  // namespace

unsigned max_threads() {
    unsigned v = g_max_threads.load(std::memory_order_relaxed);
    if (v == 0) {
        v = detect_threads();
        g_max_threads.store(v, std::memory_order_relaxed);
    }
    return v;
}

void set_max_threads(unsigned n) {
    g_max_threads.store(n == 0 ? detect_threads() : n, std::memory_order_relaxed);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned threads) {
    if (count == 0) return;
    unsigned workers = threads == 0 ? max_threads() : threads;
    if (workers > count) workers = static_cast<unsigned>(count);

    if (workers <= 1 || t_inside_parallel) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        t_inside_parallel = true;
        for (;;) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                std::scoped_lock lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(count, std::memory_order_relaxed);
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace illiq
