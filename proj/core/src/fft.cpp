#include "peskin/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace peskin::fft {
namespace {

// FFTW planning is not thread safe; execution of an existing plan on new
// arrays is. Plans are created once per (size, direction) and kept for the
// lifetime of the process.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find({n, sign});
    if (it != plans_.end()) return it->second;
    std::vector<cplx> in(n), out(n);
    fftw_plan plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(in.data()),
                                      reinterpret_cast<fftw_complex*>(out.data()), sign,
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    plans_.emplace(std::pair{n, sign}, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

std::vector<cplx> execute(std::span<const cplx> in, int sign) {
  const int n = static_cast<int>(in.size());
  std::vector<cplx> out(in.size());
  if (n == 0) return out;
  std::vector<cplx> work(in.begin(), in.end());
  fftw_execute_dft(cache().get(n, sign), reinterpret_cast<fftw_complex*>(work.data()),
                   reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<cplx> forward(std::span<const cplx> in) { return execute(in, FFTW_FORWARD); }

std::vector<cplx> backward(std::span<const cplx> in) { return execute(in, FFTW_BACKWARD); }

}  // namespace peskin::fft
