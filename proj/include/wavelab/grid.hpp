#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace wavelab {

/// Uniform periodic grid on [origin, origin + length).
struct Grid {
  double length = 0.0;
  std::size_t n = 0;
  double origin = 0.0;

  double dx() const { return length / static_cast<double>(n); }
  double x(std::size_t i) const { return origin + static_cast<double>(i) * dx(); }
  Grid shifted(double by) const { return Grid{length, n, origin + by}; }

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Validating constructor; origin defaults to -length/2 so the domain is centred.
Grid make_grid(double length, std::size_t n);
Grid make_grid(double length, std::size_t n, double origin);

class Field {
 public:
  Field() = default;
  explicit Field(Grid grid);
  Field(Grid grid, std::vector<double> values);
  static Field sample(Grid grid, const std::function<double(double)>& f);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }

  bool all_finite() const;
  double max_abs() const;
  Field with_grid(Grid grid) const;

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(const Field& o);
  Field& operator*=(double s);
  Field& operator+=(double s);

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(Field a, const Field& b) { return a *= b; }
  friend Field operator*(Field a, double s) { return a *= s; }
  friend Field operator*(double s, Field a) { return a *= s; }
  friend Field operator+(Field a, double s) { return a += s; }
  friend Field operator-(Field a) { return a *= -1.0; }

 private:
  Grid grid_{};
  std::vector<double> values_;
};

/// Centred periodic stencils of order two for d/dx, d2/dx2, d3/dx3.
Field diff(const Field& f, int order);

/// Symbol of the discrete second-difference: D2 e^{ikx} = -khat2(k) e^{ikx}.
double khat2(double k, double dx);
/// Wavenumber 2*pi*m/L of DFT bin m (signed, Nyquist taken positive).
double wavenumber(const Grid& grid, std::size_t bin);

/// Solves (1 + c D2) w = f on a fixed grid. The cyclic tridiagonal route
/// factors once; the Fourier route applies the exact discrete multiplier.
class HelmholtzOperator {
 public:
  HelmholtzOperator(Grid grid, double c);

  Field solve(const Field& f) const;
  Field solve_fourier(const Field& f) const;
  Field solve_tridiagonal(const Field& f) const;
  Field apply(const Field& w) const;

  double coefficient() const { return c_; }
  const Grid& grid() const { return grid_; }

 private:
  Grid grid_;
  double c_;
  bool tridiagonal_ok_ = false;
  // Thomas factors of the Sherman-Morrison modified matrix.
  std::vector<double> upper_;
  std::vector<double> inv_pivot_;
  std::vector<double> z_;
  double sm_gamma_ = 0.0;
  double sm_scale_ = 0.0;

  void forward_substitute(std::vector<double>& rhs) const;
};

Field helmholtz_solve(const Field& f, double c);

/// Green's function of (1 - (mu/12) d2/dx2) on the real line.
struct KernelP {
  double mu;
  double amplitude;
  double decay;
  double operator()(double x) const;
};

KernelP make_kernel(double mu);

struct KernelNorms {
  double sup = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
  double sup_dx = 0.0;
  double l1_dx = 0.0;
  double l2_dx = 0.0;
};

KernelNorms kernel_norms(double mu);

/// (1 - (mu/12) D2)^{-1} f.
Field convolve_P(const Field& f, double mu);

double quadrature(const Field& f);

struct NormKind {
  enum class Type { Linf, L2, Hs, Es, Xs };
  Type type = Type::L2;
  int s = 0;
  double mu = 0.0;
  double beta = 0.0;

  static NormKind linf() { return {Type::Linf}; }
  static NormKind l2() { return {Type::L2}; }
  static NormKind hs(int s) { return {Type::Hs, s}; }
  /// |u|^2_{H^s} - mu beta |u_x|^2_{H^s}.
  static NormKind es(int s, double mu, double beta) { return {Type::Es, s, mu, beta}; }
  /// |f|^2_{H^{s-1}} + mu |f_x|^2_{H^{s-1}}; s >= 1.
  static NormKind xs(int s, double mu) { return {Type::Xs, s, mu}; }
};

double norm(const Field& f, const NormKind& kind);

/// Real-to-complex DFT of length n. Plans are shared per size.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  std::size_t size() const { return n_; }
  std::size_t bins() const { return n_ / 2 + 1; }
  void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
  /// Unnormalized inverse: backward(forward(x)) = n x.
  void backward(std::span<const std::complex<double>> in, std::span<double> out) const;

  struct Plans;

 private:
  std::size_t n_;
  std::shared_ptr<const Plans> plans_;
};

}  // namespace wavelab
