#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace polybox {

/// Runs fn(begin, end, chunk) over `jobs` contiguous chunks of [0, n) and returns the per-chunk
/// results in chunk order, so merges that fold left to right are independent of `jobs`.
/// The first exception thrown by any chunk is rethrown.
template <class Fn>
auto parallel_chunks(std::uint64_t n, unsigned jobs, Fn&& fn) {
  using R = decltype(fn(std::uint64_t{}, std::uint64_t{}, unsigned{}));
  jobs = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(jobs, std::max<std::uint64_t>(n, 1))));
  std::vector<R> out(jobs);
  if (jobs == 1) {
    out[0] = fn(0, n, 0);
    return out;
  }
  std::vector<std::exception_ptr> errors(jobs);
  std::vector<std::thread> workers;
  for (unsigned c = 0; c < jobs; ++c) {
    const std::uint64_t begin = n * c / jobs;
    const std::uint64_t end = n * (c + 1) / jobs;
    workers.emplace_back([&, c, begin, end] {
      try {
        out[c] = fn(begin, end, c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace polybox
