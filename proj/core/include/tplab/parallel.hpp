#pragma once

#include <cstddef>
#include <cmath>
#include <functional>

namespace tplab {

// Worker count used when a caller passes 0. Reads TPLAB_THREADS, falls back
// to the hardware concurrency.
unsigned default_thread_count();

unsigned resolve_threads(unsigned requested);

// Runs body(i) for i in [0, n_tasks) on up to `threads` workers. Tasks are
// handed out dynamically; callers that need deterministic results write into
// per-task slots and reduce in task order afterwards.
void parallel_for(std::size_t n_tasks, unsigned threads,
                  const std::function<void(std::size_t)>& body);

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace tplab
