#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace oramlab {

// Runs fn(0..trials-1) on up to `jobs` threads. Results are stored by trial
// index, so the merged output does not depend on scheduling.
template <class Result, class Fn>
std::vector<Result> run_trials(std::size_t trials, std::size_t jobs, Fn&& fn) {
  std::vector<Result> results(trials);
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(trials, 1));
  if (jobs == 1) {
    for (std::size_t t = 0; t < trials; ++t) results[t] = fn(t);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  for (std::size_t j = 0; j < jobs; ++j) {
    workers.emplace_back([&] {
      for (std::size_t t = next++; t < trials; t = next++) {
        try {
          results[t] = fn(t);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = trials;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace oramlab
