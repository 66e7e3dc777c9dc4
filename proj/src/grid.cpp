#include "wavelab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wavelab {

Grid make_grid(double length, std::size_t n) { return make_grid(length, n, -0.5 * length); }

Grid make_grid(double length, std::size_t n, double origin) {
  if (!(length > 0.0) || !std::isfinite(length)) throw std::invalid_argument("grid length must be positive");
  if (n < 8) throw std::invalid_argument("grid needs at least 8 points; got " + std::to_string(n));
  if (!std::isfinite(origin)) throw std::invalid_argument("grid origin must be finite");
  return Grid{length, n, origin};
}

Field::Field(Grid grid) : grid_(grid), values_(grid.n, 0.0) {}

Field::Field(Grid grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.n) throw std::invalid_argument("field size does not match grid");
}

Field Field::sample(Grid grid, const std::function<double(double)>& f) {
  Field out(grid);
  for (std::size_t i = 0; i < grid.n; ++i) out.values_[i] = f(grid.x(i));
  return out;
}

bool Field::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

Field Field::with_grid(Grid grid) const {
  if (grid.n != grid_.n) throw std::invalid_argument("with_grid: point count differs");
  return Field(grid, values_);
}

namespace {
void check_same(const Grid& a, const Grid& b) {
  if (a.n != b.n) throw std::invalid_argument("fields live on different grids");
}
}  // namespace

Field& Field::operator+=(const Field& o) {
  check_same(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

Field& Field::operator-=(const Field& o) {
  check_same(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

Field& Field::operator*=(const Field& o) {
  check_same(grid_, o.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] *= o.values_[i];
  return *this;
}

Field& Field::operator*=(double s) {
  for (double& v : values_) v *= s;
  return *this;
}

Field& Field::operator+=(double s) {
  for (double& v : values_) v += s;
  return *this;
}

Field diff(const Field& f, int order) {
  const std::size_t n = f.size();
  const double dx = f.grid().dx();
  Field out(f.grid());
  const auto& u = f.values();
  auto at = [&u, n](std::size_t i, long off) {
    return u[static_cast<std::size_t>(static_cast<long>(i + n) + off) % n];
  };
  switch (order) {
    case 1: {
      const double s = 1.0 / (2.0 * dx);
      for (std::size_t i = 0; i < n; ++i) out[i] = (at(i, 1) - at(i, -1)) * s;
      break;
    }
    case 2: {
      const double s = 1.0 / (dx * dx);
      for (std::size_t i = 0; i < n; ++i) out[i] = (at(i, 1) - 2.0 * u[i] + at(i, -1)) * s;
      break;
    }
    case 3: {
      const double s = 1.0 / (2.0 * dx * dx * dx);
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = (at(i, 2) - 2.0 * at(i, 1) + 2.0 * at(i, -1) - at(i, -2)) * s;
      }
      break;
    }
    default: throw std::invalid_argument("diff order must be 1, 2 or 3");
  }
  return out;
}

double khat2(double k, double dx) {
  const double s = 2.0 * std::sin(0.5 * k * dx) / dx;
  return s * s;
}

double wavenumber(const Grid& grid, std::size_t bin) {
  return 2.0 * std::numbers::pi * static_cast<double>(bin) / grid.length;
}

KernelP make_kernel(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("kernel requires mu > 0");
  const double amp = std::sqrt(3.0 / mu);
  return KernelP{mu, amp, 2.0 * amp};
}

double KernelP::operator()(double x) const { return amplitude * std::exp(-decay * std::abs(x)); }

KernelNorms kernel_norms(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("kernel_norms requires mu > 0");
  const double r = 3.0 / mu;
  KernelNorms k;
  k.sup = std::sqrt(r);
  k.l1 = 1.0;
  k.l2 = std::pow(3.0 / (4.0 * mu), 0.25);
  k.sup_dx = 6.0 / mu;
  k.l1_dx = 2.0 * std::sqrt(r);
  k.l2_dx = std::sqrt(2.0) * std::pow(r, 0.75);
  return k;
}

Field convolve_P(const Field& f, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("convolve_P requires mu > 0");
  return HelmholtzOperator(f.grid(), -mu / 12.0).solve(f);
}

double quadrature(const Field& f) {
  double s = 0.0;
  for (double v : f.values()) s += v;
  return s * f.grid().dx();
}

double norm(const Field& f, const NormKind& kind) {
  using T = NormKind::Type;
  if (kind.type == T::Linf) return f.max_abs();
  if (kind.type == T::L2) {
    double s = 0.0;
    for (double v : f.values()) s += v * v;
    return std::sqrt(s * f.grid().dx());
  }
  const int lo = kind.type == T::Xs ? 1 : 0;
  if (kind.s < lo || kind.s > 3) {
    throw std::invalid_argument("Sobolev index " + std::to_string(kind.s) + " outside supported range");
  }
  const std::size_t n = f.size();
  RealFft fft(n);
  std::vector<std::complex<double>> spec(fft.bins());
  fft.forward(f.values(), spec);
  const int s = kind.type == T::Xs ? kind.s - 1 : kind.s;
  double total = 0.0;
  for (std::size_t m = 0; m < spec.size(); ++m) {
    const double k = wavenumber(f.grid(), m);
    const double k2 = k * k;
    double weight = std::pow(1.0 + k2, s);
    if (kind.type == T::Es) weight *= 1.0 - kind.mu * kind.beta * k2;
    if (kind.type == T::Xs) weight *= 1.0 + kind.mu * k2;
    const bool paired = m != 0 && !(n % 2 == 0 && m == n / 2);
    total += (paired ? 2.0 : 1.0) * weight * std::norm(spec[m]);
  }
  const double dn = static_cast<double>(n);
  return std::sqrt(total * f.grid().length / (dn * dn));
}

}  // namespace wavelab
