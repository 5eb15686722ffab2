#include "coha/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace coha::parallel {

namespace {
std::atomic<int> g_jobs{1};
thread_local bool t_inside_pool = false;
}

void set_jobs(int jobs) { g_jobs.store(jobs < 1 ? 1 : jobs); }
int jobs() { return g_jobs.load(); }

void for_range(size_t n, const std::function<void(size_t)>& fn) {
    int width = jobs();
    // Nested calls run sequentially; only the outermost loop fans out.
    if (width <= 1 || n <= 1 || t_inside_pool) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    size_t threads = std::min<size_t>(static_cast<size_t>(width), n);
    std::atomic<size_t> next{0};
    std::mutex err_mu;
    std::exception_ptr err;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            t_inside_pool = true;
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(err_mu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace coha::parallel
