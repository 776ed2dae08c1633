#include "cgolab/fft.hpp"

#include <fftw3.h>

#include <atomic>
#include <cstdint>
#include <map>
#include <mutex>
#include <utility>

#include "cgolab/errors.hpp"

namespace cgolab {

namespace {

std::atomic<PlanRigor> g_rigor{PlanRigor::kMeasure};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(std::size_t n, int direction) {
    std::lock_guard<std::mutex> lock(mutex_);
    const auto key = std::make_pair(n, direction);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    // Planning may overwrite the arrays, so plan on scratch storage.
    auto* scratch = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n * n));
    if (scratch == nullptr) throw Error("fftw_malloc failed");
    const unsigned flags =
        (g_rigor.load() == PlanRigor::kMeasure ? FFTW_MEASURE : FFTW_ESTIMATE);
    fftw_plan plan = fftw_plan_dft_2d(static_cast<int>(n), static_cast<int>(n), scratch, scratch,
                                      direction, flags);
    fftw_free(scratch);
    if (plan == nullptr) throw Error("FFTW planning failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(cplx* data, std::size_t n, int direction) {
  if (reinterpret_cast<std::uintptr_t>(data) % 64 != 0) {
    throw InvalidArgument("FFT buffer is not 64-byte aligned");
  }
  fftw_plan plan = cache().get(n, direction);
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(plan, p, p);
}

}  // namespace

void set_plan_rigor(PlanRigor rigor) { g_rigor.store(rigor); }
PlanRigor plan_rigor() { return g_rigor.load(); }

void fft_forward(cplx* data, std::size_t n) { execute(data, n, FFTW_FORWARD); }
void fft_inverse(cplx* data, std::size_t n) { execute(data, n, FFTW_BACKWARD); }

}  // namespace cgolab
