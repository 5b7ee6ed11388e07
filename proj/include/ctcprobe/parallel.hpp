#pragma once

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace ctcprobe {

/// Thread cap: CTC_PROBE_THREADS if set, else hardware concurrency.
inline int thread_budget() {
    if (const char* env = std::getenv("CTC_PROBE_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index is
/// processed exactly once; callers combine results in index order, so the
/// outcome is independent of scheduling. Exceptions are rethrown from the
/// first failing index.
void parallel_for_indexed(int count, int threads, const std::function<void(int)>& fn);

}  // namespace ctcprobe
