#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace iosc {

/// Malformed input: bad polynomial text, shape mismatch, invalid parameters.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed the evaluation-point budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent computations of the same quantity disagree.
class Inconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace runtime {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Process-wide execution settings. Results never depend on them, only
/// whether a computation is allowed to run and how many workers it uses.
std::uint64_t budget();
void set_budget(std::uint64_t points);
unsigned threads();
void set_threads(unsigned n);
bool force();
void set_force(bool on);

/// Throws BudgetExceeded when `work` evaluation points exceed the budget,
/// unless force mode is on (then a warning is printed to stderr once).
void check_budget(long double work, const std::string& what);

/// Runs body(i) for i in [0, n) on up to threads() workers. Each index is
/// processed exactly once; callers write into per-index slots so that the
/// merged result is independent of the worker count.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, threads()), n == 0 ? 1 : n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next.store(n);
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

/// Shared evaluation counter for searches whose size is not known upfront.
class WorkMeter {
 public:
  explicit WorkMeter(std::string what) : what_(std::move(what)) {}
  void add(std::uint64_t points);
  std::uint64_t used() const { return used_.load(); }

 private:
  std::string what_;
  std::atomic<std::uint64_t> used_{0};
};

}  // namespace runtime
}  // namespace iosc
