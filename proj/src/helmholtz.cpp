#include "wavelab/grid.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace wavelab {

HelmholtzOperator::HelmholtzOperator(Grid grid, double c) : grid_(grid), c_(c) {
  if (!std::isfinite(c)) throw std::invalid_argument("Helmholtz coefficient must be finite");
  const std::size_t n = grid.n;
  const double dx = grid.dx();
  if (c > 0.0) {
    double worst = INFINITY;
    for (std::size_t m = 0; m <= n / 2; ++m) {
      worst = std::min(worst, std::abs(1.0 - c * khat2(wavenumber(grid, m), dx)));
    }
    if (worst < 1e-8) {
      std::ostringstream os;
      os << "1 + c D2 is singular on this grid (c = " << c << ", min |1 - c khat^2| = " << worst << ")";
      throw std::invalid_argument(os.str());
    }
    return;
  }
  if (c == 0.0) return;

  // Cyclic system: diagonal b, off-diagonals and corners a.
  const double a = c / (dx * dx);
  const double b = 1.0 - 2.0 * a;
  sm_gamma_ = -b;
  upper_.assign(n, 0.0);
  inv_pivot_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double diag = b;
    if (i == 0) diag = b - sm_gamma_;
    if (i == n - 1) diag = b - a * a / sm_gamma_;
    const double pivot = i == 0 ? diag : diag - a * upper_[i - 1];
    inv_pivot_[i] = 1.0 / pivot;
    upper_[i] = a * inv_pivot_[i];
  }
  z_.assign(n, 0.0);
  z_[0] = sm_gamma_;
  z_[n - 1] = a;
  forward_substitute(z_);
  sm_scale_ = 1.0 / (1.0 + z_[0] + a * z_[n - 1] / sm_gamma_);
  tridiagonal_ok_ = true;
}

void HelmholtzOperator::forward_substitute(std::vector<double>& d) const {
  const std::size_t n = d.size();
  const double a = c_ / (grid_.dx() * grid_.dx());
  d[0] *= inv_pivot_[0];
  for (std::size_t i = 1; i < n; ++i) d[i] = (d[i] - a * d[i - 1]) * inv_pivot_[i];
  for (std::size_t i = n - 1; i-- > 0;) d[i] -= upper_[i] * d[i + 1];
}

Field HelmholtzOperator::solve(const Field& f) const {
  if (c_ == 0.0) return f;
  return tridiagonal_ok_ ? solve_tridiagonal(f) : solve_fourier(f);
}

Field HelmholtzOperator::solve_tridiagonal(const Field& f) const {
  if (f.size() != grid_.n) throw std::invalid_argument("Helmholtz: field size mismatch");
  if (c_ == 0.0) return f;
  if (!tridiagonal_ok_) throw std::logic_error("tridiagonal route requires c < 0");
  const double a = c_ / (grid_.dx() * grid_.dx());
  std::vector<double> y = f.values();
  forward_substitute(y);
  const std::size_t n = y.size();
  const double fact = (y[0] + a * y[n - 1] / sm_gamma_) * sm_scale_;
  for (std::size_t i = 0; i < n; ++i) y[i] -= fact * z_[i];
  return Field(f.grid(), std::move(y));
}

Field HelmholtzOperator::solve_fourier(const Field& f) const {
  if (f.size() != grid_.n) throw std::invalid_argument("Helmholtz: field size mismatch");
  const std::size_t n = grid_.n;
  RealFft fft(n);
  std::vector<std::complex<double>> spec(fft.bins());
  fft.forward(f.values(), spec);
  const double dx = grid_.dx();
  for (std::size_t m = 0; m < spec.size(); ++m) {
    spec[m] /= (1.0 - c_ * khat2(wavenumber(grid_, m), dx)) * static_cast<double>(n);
  }
  Field out(f.grid());
  fft.backward(spec, out.values());
  return out;
}

Field HelmholtzOperator::apply(const Field& w) const {
  Field out = diff(w, 2);
  out *= c_;
  out += w;
  return out;
}

Field helmholtz_solve(const Field& f, double c) { return HelmholtzOperator(f.grid(), c).solve(f); }

}  // namespace wavelab
