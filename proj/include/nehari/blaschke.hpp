#ifndef NEHARI_BLASCHKE_HPP
#define NEHARI_BLASCHKE_HPP

// Finite Blaschke products, Szego kernels and eigenfunctions of the
// compressed shift.  Fourier coefficients come from the exact power series
// of each factor; truncation error is certified by a Cauchy estimate.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fourier.hpp"

namespace nehari {

inline constexpr double kBoundaryMargin = 1e-9;

class BlaschkeProduct {
 public:
  BlaschkeProduct() = default;
  explicit BlaschkeProduct(std::vector<cplx> zeros) : zeros_(std::move(zeros)) {
    for (cplx a : zeros_)
      if (!(std::abs(a) < 1.0 - kBoundaryMargin))
        throw ConfigError("BlaschkeProduct: zero " + std::to_string(a.real()) + "+" +
                          std::to_string(a.imag()) + "i too close to the unit circle");
  }

  std::span<const cplx> zeros() const { return zeros_; }
  int degree() const { return static_cast<int>(zeros_.size()); }
  bool trivial() const { return zeros_.empty(); }

  double max_modulus() const {
    double r = 0.0;
    for (cplx a : zeros_) r = std::max(r, std::abs(a));
    return r;
  }

  bool has_simple_zeros(double tol = 1e-12) const {
    for (std::size_t i = 0; i < zeros_.size(); ++i)
      for (std::size_t j = i + 1; j < zeros_.size(); ++j)
        if (std::abs(zeros_[i] - zeros_[j]) <= tol) return false;
    return true;
  }

  /// (|a|/a)(a - zeta)/(1 - conj(a) zeta); the factor at a = 0 is zeta.
  static cplx factor(cplx a, cplx zeta) {
    if (a == cplx{}) return zeta;
    const double r = std::abs(a);
    return (r / a) * (a - zeta) / (1.0 - std::conj(a) * zeta);
  }

  cplx eval(cplx zeta) const {
    require(std::abs(zeta) <= 1.0 + 1e-12, "BlaschkeProduct::eval: point outside the closed disk");
    cplx v = 1.0;
    for (cplx a : zeros_) v *= factor(a, zeta);
    return v;
  }

  /// The product with the factor at index k removed.
  BlaschkeProduct without(std::size_t k) const {
    std::vector<cplx> z = zeros_;
    z.erase(z.begin() + static_cast<std::ptrdiff_t>(k));
    return BlaschkeProduct(std::move(z));
  }

  friend BlaschkeProduct operator*(const BlaschkeProduct& a, const BlaschkeProduct& b) {
    std::vector<cplx> z = a.zeros_;
    z.insert(z.end(), b.zeros_.begin(), b.zeros_.end());
    return BlaschkeProduct(std::move(z));
  }

 private:
  std::vector<cplx> zeros_;
};

namespace detail {

/// Product of two power series truncated at degree N.
inline std::vector<cplx> series_product(const std::vector<cplx>& a, const std::vector<cplx>& b,
                                        int N) {
  std::vector<cplx> out(static_cast<std::size_t>(N + 1), cplx{});
  for (std::size_t i = 0; i < a.size() && static_cast<int>(i) <= N; ++i) {
    if (a[i] == cplx{}) continue;
    for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) <= N; ++j)
      out[i + j] += a[i] * b[j];
  }
  return out;
}

/// Power series coefficients 0..N of one factor.
inline std::vector<cplx> factor_series(cplx a, int N) {
  std::vector<cplx> s(static_cast<std::size_t>(N + 1), cplx{});
  if (a == cplx{}) {
    if (N >= 1) s[1] = 1.0;
    return s;
  }
  const double r = std::abs(a);
  const cplx u = r / a;
  s[0] = r;
  cplx p = u * (r * r - 1.0);
  for (int k = 1; k <= N; ++k) {
    s[static_cast<std::size_t>(k)] = p;
    p *= std::conj(a);
  }
  return s;
}

inline TrigPoly1 analytic_poly(const std::vector<cplx>& s, int N) {
  TrigPoly1 out(N);
  for (int k = 0; k <= N && k < static_cast<int>(s.size()); ++k) out(k) = s[static_cast<std::size_t>(k)];
  return out;
}

inline std::vector<cplx> blaschke_series(const BlaschkeProduct& b, int N) {
  std::vector<cplx> s(static_cast<std::size_t>(N + 1), cplx{});
  s[0] = 1.0;
  for (cplx a : b.zeros()) s = series_product(s, factor_series(a, N), N);
  return s;
}

}  // namespace detail

/// Bound on sum over n > N of |b^(n)|, hence on the sup-norm of the tail.
/// Factors at the origin shift the series; the remaining factors are
/// analytic on |zeta| < 1/r and Cauchy's estimate on |zeta| = rho gives
/// M(rho) rho^-(N+1) / (1 - 1/rho), minimized over rho in (1, 1/r).
inline double tail_bound(const BlaschkeProduct& b, int N) {
  int shift = 0;
  std::vector<double> radii;
  for (cplx a : b.zeros()) {
    if (a == cplx{})
      ++shift;
    else
      radii.push_back(std::abs(a));
  }
  const int Nr = N - shift;
  if (radii.empty()) return Nr >= 0 ? 0.0 : 1.0;
  const double r = *std::max_element(radii.begin(), radii.end());
  double best = std::numeric_limits<double>::infinity();
  constexpr int steps = 256;
  for (int s = 1; s < steps; ++s) {
    const double rho = 1.0 + (1.0 / r - 1.0) * s / steps;
    double logM = 0.0;
    for (double ra : radii) logM += std::log(rho + ra) - std::log(1.0 - ra * rho);
    const double logB = logM - (Nr + 1) * std::log(rho) - std::log(1.0 - 1.0 / rho);
    best = std::min(best, logB);
  }
  return std::exp(best);
}

/// Smallest N whose certified tail is below tol.
inline int required_degree(const BlaschkeProduct& b, double tol, int N_max = 1 << 15) {
  require(tol > 0.0, "required_degree: tolerance must be positive");
  int lo = 0, hi = std::max(1, b.degree());
  while (tail_bound(b, hi) > tol) {
    lo = hi;
    hi *= 2;
    if (hi > N_max)
      throw ToleranceError("required_degree: tolerance " + std::to_string(tol) +
                           " unreachable below N = " + std::to_string(N_max));
  }
  while (lo < hi) {
    const int mid = (lo + hi) / 2;
    if (tail_bound(b, mid) <= tol)
      hi = mid;
    else
      lo = mid + 1;
  }
  return hi;
}

struct BlaschkeExpansion {
  TrigPoly1 coeffs;
  double tail = 0.0;  ///< bound on the sup-norm of the omitted series
};

inline BlaschkeExpansion expand(const BlaschkeProduct& b, int N) {
  require(N >= 0, "expand: negative truncation");
  return {detail::analytic_poly(detail::blaschke_series(b, N), N), tail_bound(b, N)};
}

/// Coefficients 0..N; throws if the certified tail exceeds tol.
inline TrigPoly1 coeffs(const BlaschkeProduct& b, int N, double tol) {
  auto e = expand(b, N);
  if (e.tail > tol)
    throw ToleranceError("coeffs: tail bound " + std::to_string(e.tail) + " exceeds " +
                         std::to_string(tol) + " at N = " + std::to_string(N));
  return std::move(e.coeffs);
}

inline TrigPoly1 coeffs(const BlaschkeProduct& b, int N) { return expand(b, N).coeffs; }

/// Coefficients at the smallest N certified to tol.
inline TrigPoly1 coeffs_auto(const BlaschkeProduct& b, double tol) {
  return coeffs(b, required_degree(b, tol));
}

/// Values of b at the nodes of a uniform grid, by closed form.
inline Eigen::VectorXcd blaschke_values(const BlaschkeProduct& b, int G) {
  Eigen::VectorXcd v(G);
  for (int k = 0; k < G; ++k) v(k) = b.eval(std::polar(1.0, two_pi * k / G));
  return v;
}

struct Kernel {
  cplx z;
  TrigPoly1 coeffs;
};

inline double kernel_constant(cplx z) { return std::sqrt(1.0 - std::norm(z)); }

/// Normalized Szego kernel c_z / (1 - conj(z) xi), coefficients c_z conj(z)^n.
inline Kernel kernel(cplx z, int N) {
  require(std::abs(z) < 1.0, "kernel: point outside the open disk");
  Kernel k{z, TrigPoly1(N)};
  cplx p = kernel_constant(z);
  for (int n = 0; n <= N; ++n) {
    k.coeffs(n) = p;
    p *= std::conj(z);
  }
  return k;
}

/// Reproducing kernel of H^2(T^2) at (z, zeta), normalized, as a product.
inline TrigPoly2 kernel2(cplx z, cplx zeta, int N) {
  return outer(kernel(z, N).coeffs, kernel(zeta, N).coeffs);
}

namespace detail {

inline std::size_t zero_index(const BlaschkeProduct& b, cplx zk) {
  const auto zs = b.zeros();
  std::size_t hit = zs.size();
  int count = 0;
  for (std::size_t j = 0; j < zs.size(); ++j)
    if (std::abs(zs[j] - zk) <= 1e-12) {
      hit = j;
      ++count;
    }
  if (count == 0) throw ConfigError("eigen_psi: point is not a zero of b");
  if (count > 1) throw ConfigError("eigen_psi: repeated zero");
  return hit;
}

}  // namespace detail

/// psi(xi) = b(xi) / (xi - z_k) = -(|z_k|/z_k) prod_{j != k} b_j(xi) / (1 - conj(z_k) xi),
/// and the product of the other factors when z_k = 0.
inline TrigPoly1 eigen_psi(const BlaschkeProduct& b, cplx zk, int N) {
  const std::size_t k = detail::zero_index(b, zk);
  auto s = detail::blaschke_series(b.without(k), N);
  if (zk != cplx{}) {
    std::vector<cplx> g(static_cast<std::size_t>(N + 1));
    cplx p = -std::abs(zk) / zk;
    for (int n = 0; n <= N; ++n) {
      g[static_cast<std::size_t>(n)] = p;
      p *= std::conj(zk);
    }
    s = detail::series_product(s, g, N);
  }
  return detail::analytic_poly(s, N);
}

/// Closed-form value of psi_{z_k} in the closed disk.
inline cplx eigen_psi_eval(const BlaschkeProduct& b, cplx zk, cplx zeta) {
  const std::size_t k = detail::zero_index(b, zk);
  const cplx rest = b.without(k).eval(zeta);
  if (zk == cplx{}) return rest;
  return -(std::abs(zk) / zk) * rest / (1.0 - std::conj(zk) * zeta);
}

/// b'(z_k) = psi_{z_k}(z_k); nonzero for a simple zero.
inline cplx derivative_at_zero(const BlaschkeProduct& b, cplx zk) {
  return eigen_psi_eval(b, zk, zk);
}

/// (b1 (x) b2)(x, y) = b1(x) b2(y) with both expansions certified to tol.
inline TrigPoly2 tensor(const BlaschkeProduct& b1, const BlaschkeProduct& b2, int N,
                        double tol = 1e-9) {
  return outer(coeffs(b1, N, tol), coeffs(b2, N, tol));
}

}  // namespace nehari

#endif
