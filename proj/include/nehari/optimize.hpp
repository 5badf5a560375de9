#ifndef NEHARI_OPTIMIZE_HPP
#define NEHARI_OPTIMIZE_HPP

// Derivative-free local minimization and an unconstrained chart of the
// open unit disk.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "fourier.hpp"

namespace nehari {

struct NelderMeadOptions {
  int max_evals = 2000;
  double initial_step = 0.5;
  double ftol = 1e-10;  ///< absolute spread of simplex values
  double xtol = 1e-9;   ///< simplex diameter
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  int evals = 0;
};

inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                                    std::vector<double> x0, const NelderMeadOptions& opt = {}) {
  const std::size_t n = x0.size();
  NelderMeadResult res{x0, 0.0, 0};
  if (n == 0) {
    res.f = fn(x0);
    res.evals = 1;
    return res;
  }
  std::vector<std::vector<double>> s(n + 1, x0);
  std::vector<double> f(n + 1);
  for (std::size_t i = 0; i < n; ++i) s[i + 1][i] += opt.initial_step;
  int evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return fn(x);
  };
  for (std::size_t i = 0; i <= n; ++i) f[i] = eval(s[i]);
  std::vector<std::size_t> idx(n + 1);
  while (evals < opt.max_evals) {
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return f[a] < f[b]; });
    const std::size_t best = idx[0], worst = idx[n], second = idx[n - 1];
    double diam = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      double d = 0.0;
      for (std::size_t k = 0; k < n; ++k) d = std::max(d, std::abs(s[idx[i]][k] - s[best][k]));
      diam = std::max(diam, d);
    }
    if (f[worst] - f[best] <= opt.ftol && diam <= opt.xtol) break;
    if (diam <= opt.xtol * 1e-3) break;

    std::vector<double> c(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != worst)
        for (std::size_t k = 0; k < n; ++k) c[k] += s[i][k] / static_cast<double>(n);
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t k = 0; k < n; ++k) x[k] = c[k] + t * (s[worst][k] - c[k]);
      return x;
    };
    const auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < f[best]) {
      const auto xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        s[worst] = xe;
        f[worst] = fe;
      } else {
        s[worst] = xr;
        f[worst] = fr;
      }
    } else if (fr < f[second]) {
      s[worst] = xr;
      f[worst] = fr;
    } else {
      const bool outside = fr < f[worst];
      const auto xc = along(outside ? -0.5 : 0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : f[worst])) {
        s[worst] = xc;
        f[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < n; ++k) s[i][k] = s[best][k] + 0.5 * (s[i][k] - s[best][k]);
          f[i] = eval(s[i]);
        }
      }
    }
  }
  const std::size_t b = static_cast<std::size_t>(std::min_element(f.begin(), f.end()) - f.begin());
  res.x = s[b];
  res.f = f[b];
  res.evals = evals;
  return res;
}

/// Radial squash R^2 -> disk of radius R: u -> R u / sqrt(1 + |u|^2).
struct DiskChart {
  double radius = 0.95;

  cplx to_disk(double a, double b) const {
    const cplx u{a, b};
    return radius * u / std::sqrt(1.0 + std::norm(u));
  }
  std::pair<double, double> from_disk(cplx z) const {
    const double s = std::min(std::abs(z) / radius, 1.0 - 1e-12);
    if (s == 0.0) return {0.0, 0.0};
    const double t = s / std::sqrt(1.0 - s * s);
    const cplx u = t * z / std::abs(z);
    return {u.real(), u.imag()};
  }
  std::vector<cplx> decode(const std::vector<double>& x, std::size_t offset, std::size_t count) const {
    std::vector<cplx> z(count);
    for (std::size_t i = 0; i < count; ++i) z[i] = to_disk(x[offset + 2 * i], x[offset + 2 * i + 1]);
    return z;
  }
  void encode(const std::vector<cplx>& z, std::vector<double>& x) const {
    for (cplx a : z) {
      auto [u, v] = from_disk(a);
      x.push_back(u);
      x.push_back(v);
    }
  }
};

/// Uniform point in the disk of radius r.
inline cplx uniform_in_disk(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  return std::polar(r * std::sqrt(U(rng)), two_pi * U(rng));
}

}  // namespace nehari

#endif
