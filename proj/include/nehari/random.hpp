#ifndef NEHARI_RANDOM_HPP
#define NEHARI_RANDOM_HPP

// Seeded random instances: polynomials with Gaussian coefficients and points
// in the disk.  Everything is driven by std::mt19937_64, so a seed fixes
// the whole sequence.

#include <cmath>
#include <random>
#include <vector>

#include "fourier.hpp"

namespace nehari {

using Rng = std::mt19937_64;

inline cplx gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double a = n(rng);
  return {a, n(rng)};
}

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline cplx random_in_disk(Rng& rng, double r) {
  const double rho = r * std::sqrt(uniform(rng));
  return std::polar(rho, two_pi * uniform(rng));
}

/// Gaussian coefficients on the frequencies of sector s in the box N, scaled to unit L^2 norm.
template <int D>
TrigPoly<D> random_poly(Rng& rng, int N, Sector s) {
  TrigPoly<D> f(N);
  if constexpr (D == 1) {
    for (int m = -N; m <= N; ++m)
      if (in_sector(s, m, 0)) f(m) = gaussian(rng);
  } else {
    for (int m = -N; m <= N; ++m)
      for (int n = -N; n <= N; ++n)
        if (in_sector(s, m, n)) f(m, n) = gaussian(rng);
  }
  const double nrm = norm2(f);
  if (nrm > 0.0) f *= 1.0 / nrm;
  return f;
}

template <int D>
TrigPoly<D> random_poly(Rng& rng, int N) {
  TrigPoly<D> f(N);
  for (auto& c : f.data()) c = gaussian(rng);
  return f * (1.0 / norm2(f));
}

/// Distinct points in the disk of radius r, pairwise separated by at least sep.
inline std::vector<cplx> random_nodes(Rng& rng, int n, double r, double sep = 0.1) {
  std::vector<cplx> z;
  while (static_cast<int>(z.size()) < n) {
    const cplx c = random_in_disk(rng, r);
    bool ok = true;
    for (cplx w : z) ok = ok && std::abs(w - c) >= sep;
    if (ok) z.push_back(c);
  }
  return z;
}

}  // namespace nehari

#endif
