#include "wavelab/grid.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace wavelab {

// fftw_execute_dft_* on distinct arrays is thread safe; planning is not.
struct RealFft::Plans {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  ~Plans() {
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::shared_ptr<const RealFft::Plans> plans_for(std::size_t n);

}  // namespace

RealFft::RealFft(std::size_t n) : n_(n), plans_(plans_for(n)) {}

void RealFft::forward(std::span<const double> in, std::span<std::complex<double>> out) const {
  if (in.size() != n_ || out.size() != bins()) throw std::invalid_argument("RealFft::forward: size mismatch");
  std::vector<double> scratch(in.begin(), in.end());
  fftw_execute_dft_r2c(plans_->r2c, scratch.data(), reinterpret_cast<fftw_complex*>(out.data()));
}

void RealFft::backward(std::span<const std::complex<double>> in, std::span<double> out) const {
  if (in.size() != bins() || out.size() != n_) throw std::invalid_argument("RealFft::backward: size mismatch");
  std::vector<std::complex<double>> scratch(in.begin(), in.end());
  fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch.data()), out.data());
}

namespace {

std::shared_ptr<const RealFft::Plans> plans_for(std::size_t n) {
  if (n == 0) throw std::invalid_argument("RealFft: size must be positive");
  std::lock_guard lock(planner_mutex());
  static std::map<std::size_t, std::shared_ptr<const RealFft::Plans>> cache;
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  auto plans = std::make_shared<RealFft::Plans>();
  std::vector<double> real(n);
  std::vector<std::complex<double>> spec(n / 2 + 1);
  auto* cplx = reinterpret_cast<fftw_complex*>(spec.data());
  const int len = static_cast<int>(n);
  plans->r2c = fftw_plan_dft_r2c_1d(len, real.data(), cplx, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans->c2r = fftw_plan_dft_c2r_1d(len, cplx, real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plans->r2c || !plans->c2r) throw std::runtime_error("FFTW planning failed");
  cache.emplace(n, plans);
  return plans;
}

}  // namespace

}  // namespace wavelab
