#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace sbie {

// worker count: SINGULAR_BIE_THREADS when set, else hardware concurrency
inline int thread_count()
{
    if (const char* env = std::getenv("SINGULAR_BIE_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1)
            return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// static block split of [0, n) across threads
inline void parallel_for(int n, const std::function<void(int)>& body)
{
    const int nt = std::min(thread_count(), std::max(n, 1));
    if (nt <= 1 || n < 2) {
        for (int i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(nt);
    const int chunk = (n + nt - 1) / nt;
    for (int t = 0; t < nt; ++t) {
        const int lo = t * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([lo, hi, &body] {
            for (int i = lo; i < hi; ++i)
                body(i);
        });
    }
    for (auto& th : pool)
        th.join();
}

} // namespace sbie
