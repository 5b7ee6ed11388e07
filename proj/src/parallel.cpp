#include "ctcprobe/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>

namespace ctcprobe {

void parallel_for_indexed(int count, int threads, const std::function<void(int)>& fn) {
    if (count <= 0) return;
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<int> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    int first_error_index = count;

    auto worker = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mutex);
                if (i < first_error_index) {
                    first_error_index = i;
                    first_error = std::current_exception();
                }
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads - 1);
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ctcprobe
