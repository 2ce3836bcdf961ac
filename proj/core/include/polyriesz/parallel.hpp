#ifndef POLYRIESZ_PARALLEL_HPP
#define POLYRIESZ_PARALLEL_HPP

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace polyriesz {

struct ExecPolicy {
  int threads = 1;
};

// Evaluates f(0..n-1) into a vector.  Work items must be pure; results and
// any later reduction order are independent of the thread count, so output
// is bitwise identical for any `threads`.
template <class F>
auto parallel_map(std::size_t n, int threads, F&& f)
    -> std::vector<decltype(f(std::size_t{0}))> {
  using R = decltype(f(std::size_t{0}));
  std::vector<R> out(n);
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::size_t nt = std::min<std::size_t>(threads, n);
  std::vector<std::exception_ptr> errs(nt);
  std::vector<std::size_t> err_index(nt, n);
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    pool.emplace_back([&, t]() {
      for (std::size_t i = t; i < n; i += nt) {
        try {
          out[i] = f(i);
        } catch (...) {
          if (!errs[t]) {
            errs[t] = std::current_exception();
            err_index[t] = i;
          }
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  // Rethrow the failure with the lowest index so behavior matches a serial run.
  std::size_t best = n;
  std::exception_ptr first;
  for (std::size_t t = 0; t < nt; ++t) {
    if (errs[t] && err_index[t] < best) {
      best = err_index[t];
      first = errs[t];
    }
  }
  if (first) std::rethrow_exception(first);
  return out;
}

// Fixed-order pairwise tree sum; independent of thread count by construction.
template <class T>
T pairwise_sum(std::vector<T> v) {
  if (v.empty()) return T{};
  std::size_t n = v.size();
  while (n > 1) {
    std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (n % 2 == 1) {
      v[half] = v[n - 1];
      n = half + 1;
    } else {
      n = half;
    }
  }
  return v[0];
}

}  // namespace polyriesz

#endif
