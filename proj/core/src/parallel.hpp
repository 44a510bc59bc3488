#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace monostab::detail {

inline std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Splits [0, n) into contiguous chunks, runs `body(begin, end, chunk)` on each
/// chunk in its own thread and returns one result per chunk, in chunk order.
/// Callers reduce the results with associative, commutative operations, so the
/// outcome does not depend on the worker count.
template <class Result, class Body>
std::vector<Result> parallel_chunks(std::size_t n, std::size_t workers, Body&& body) {
  const std::size_t chunks = std::max<std::size_t>(1, std::min(resolve_workers(workers), n));
  std::vector<Result> results(chunks);
  std::vector<std::exception_ptr> errors(chunks);
  auto run = [&](std::size_t c) {
    const std::size_t begin = n * c / chunks;
    const std::size_t end = n * (c + 1) / chunks;
    try {
      body(begin, end, results[c]);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  if (chunks == 1) {
    run(0);
  } else {
    std::vector<std::jthread> threads;
    threads.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) threads.emplace_back(run, c);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace monostab::detail
