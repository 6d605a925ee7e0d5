#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace imgfilt {

/// Worker count for row-banded filter execution. Results are byte-identical
/// to the serial run: bands write disjoint output rows and every per-pixel
/// computation is unchanged.
struct Threads {
    int count = 1;
};

/// Splits [0, rows) into contiguous bands and runs fn(begin, end) on each,
/// either inline (count <= 1) or on std::jthread workers.
template <typename Fn>
void parallel_for_rows(int rows, Threads threads, Fn&& fn) {
    const int workers = std::min(std::max(threads.count, 1), rows);
    if (workers <= 1) {
        fn(0, rows);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    const int base = rows / workers;
    const int extra = rows % workers;
    int begin = 0;
    for (int w = 0; w < workers; ++w) {
        const int end = begin + base + (w < extra ? 1 : 0);
        pool.emplace_back([&fn, begin, end] { fn(begin, end); });
        begin = end;
    }
}

}  // namespace imgfilt
