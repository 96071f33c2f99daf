#pragma once

#include <cstdint>
#include <functional>

namespace tcsim {

// Worker count from the TCSIM_WORKERS environment variable; defaults to 1
// so results never depend on the machine unless explicitly requested.
int worker_count_from_env();

// Strided index-space loop over [0, count). fn must only touch state owned
// by its own index. workers <= 1 degrades to a plain loop.
void parallel_for(std::uint64_t count, int workers,
                  const std::function<void(std::uint64_t)>& fn);

// Compensated (Kahan) accumulator for long exact sums.
class KahanSum {
public:
  void add(double x) {
    const double y = x - c_;
    const double t = sum_ + y;
    c_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

}  // namespace tcsim
