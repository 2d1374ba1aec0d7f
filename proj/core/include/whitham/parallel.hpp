#pragma once

#include <functional>

namespace whitham {

// Worker count: explicit set_thread_count wins, then the WHITHAM_THREADS
// environment variable, then hardware concurrency.
int thread_count();
void set_thread_count(int n);  // n <= 0 resets to the default

// Runs fn(0..n-1), splitting indices across threads in fixed contiguous
// blocks. Callers keep determinism by writing to disjoint slots indexed by
// i. The first exception thrown by any worker is rethrown here.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace whitham
