#include "gmrfinfo/fft.hpp"

#include <fftw3.h>

#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace gmrfinfo::fft {

namespace {

// The FFTW planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

class Plan {
 public:
  Plan(std::span<std::complex<double>> data, std::span<const int> extents, Direction dir) {
    auto* p = reinterpret_cast<fftw_complex*>(data.data());
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft(static_cast<int>(extents.size()), extents.data(), p, p,
                          dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD,
                          FFTW_ESTIMATE);
    if (plan_ == nullptr) throw std::runtime_error("fft: FFTW planning failed");
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
  ~Plan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan_);
  }
  void execute() const { fftw_execute(plan_); }

 private:
  fftw_plan plan_ = nullptr;
};

}  // namespace

void transform(std::span<std::complex<double>> data, std::span<const int> extents,
               Direction dir) {
  const std::size_t total = std::accumulate(extents.begin(), extents.end(), std::size_t{1},
                                            std::multiplies<>());
  if (extents.empty() || total != data.size()) {
    throw std::invalid_argument("fft: extents do not match data length");
  }
  Plan plan(data, extents, dir);
  plan.execute();
}

}  // namespace gmrfinfo::fft
