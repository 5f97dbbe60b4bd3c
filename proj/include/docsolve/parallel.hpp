#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace docsolve {

/// Worker cap for internal parallelism: DOCSOLVE_THREADS when set and
/// positive, hardware concurrency otherwise.
inline int thread_budget()
{
    if (const char* env = std::getenv("DOCSOLVE_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Run body(i) for i in [0, count) on up to thread_budget() threads. Each
/// index is handled exactly once and writes only its own outputs, so results
/// do not depend on the thread count. Exceptions are rethrown in the caller.
inline void parallel_for(int count, const std::function<void(int)>& body)
{
    const int workers = std::min(thread_budget(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < count; i += workers) body(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace docsolve
