#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace snls::detail {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

  const PlanPair& get(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    // FFTW planning is not thread-safe; it only ever happens under the lock.
    std::vector<std::complex<double>> a(static_cast<std::size_t>(n)), b(static_cast<std::size_t>(n));
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = reinterpret_cast<fftw_complex*>(b.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair p;
    p.forward = fftw_plan_dft_1d(n, pa, pb, FFTW_FORWARD, flags);
    p.backward = fftw_plan_dft_1d(n, pa, pb, FFTW_BACKWARD, flags);
    if (!p.forward || !p.backward) throw std::runtime_error("fftw planning failed");
    return plans_.emplace(n, p).first->second;
  }

private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void execute(bool forward, std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  if (in.size() != out.size() || in.empty()) throw std::invalid_argument("fft: size mismatch");
  const auto& p = cache().get(static_cast<int>(in.size()));
  // The input is not modified by out-of-place complex DFTs.
  auto* pin = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  if (in.data() == out.data()) {
    std::vector<std::complex<double>> tmp(in.begin(), in.end());
    fftw_execute_dft(forward ? p.forward : p.backward, reinterpret_cast<fftw_complex*>(tmp.data()), pout);
    return;
  }
  fftw_execute_dft(forward ? p.forward : p.backward, pin, pout);
}

} // namespace

void fft_forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  execute(true, in, out);
}

void fft_backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  execute(false, in, out);
}

int next_fast_size(int minimum) {
  for (int n = std::max(minimum, 1);; ++n) {
    int m = n;
    for (int f : {2, 3, 5})
      while (m % f == 0) m /= f;
    if (m == 1) return n;
  }
}

} // namespace snls::detail
