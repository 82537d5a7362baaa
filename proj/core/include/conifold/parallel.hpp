#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>

namespace conifold {

// Worker count: hardware concurrency capped by CONIFOLD_LAB_THREADS.
unsigned worker_count();

// Runs fn(i) for i in [0, n) over contiguous blocks. The first exception
// thrown by any worker is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Recursive pairwise summation; the result depends only on the input order.
double pairwise_sum(std::span<const double> xs);
std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs);

}  // namespace conifold
