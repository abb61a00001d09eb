#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ssg {

// Worker count used by every parallel map in the library (default 1).
void set_threads(unsigned n);
unsigned threads();

// Splits [0, n) into contiguous chunks and runs fn(begin, end, chunk) on each.
// Chunk boundaries depend only on n and the returned chunk count, so callers
// that merge per-chunk results in chunk order get schedule-independent output.
template <class Fn>
size_t parallel_chunks(size_t n, Fn&& fn) {
    size_t t = threads();
    if (t > n) t = n;
    if (t <= 1) {
        if (n) fn(size_t(0), n, size_t(0));
        return n ? 1 : 0;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(t);
    for (size_t c = 0; c < t; ++c) {
        size_t lo = n * c / t, hi = n * (c + 1) / t;
        pool.emplace_back([&, lo, hi, c] {
            try {
                fn(lo, hi, c);
            } catch (...) {
                errs[c] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errs)
        if (e) std::rethrow_exception(e);
    return t;
}

template <class Fn>
void parallel_for(size_t n, Fn&& fn) {
    parallel_chunks(n, [&](size_t lo, size_t hi, size_t) {
        for (size_t i = lo; i < hi; ++i) fn(i);
    });
}

}  // namespace ssg
