#ifndef NEHARI_SEPARABLE_HPP
#define NEHARI_SEPARABLE_HPP

// Symbols written as finite sums of products u_r(x) v_r(y), and the exact
// Gram matrix A^* A of their big Hankel matrix on the analytic box [0, N]^2.
//
// H^2(T^2)-perp splits into {j_x < 0} and {j_x >= 0, j_y < 0}, so
//   A^*A = sum_{r,s} U^-_{rs} (x) V^all_{rs} + U^+_{rs} (x) V^-_{rs},
// with one-dimensional brackets
//   U^-_{rs}[a, c] = sum_{j < 0}  conj(u_r^(j - a)) u_s^(j - c),
//   U^+_{rs}[a, c] = sum_{j >= 0} conj(u_r^(j - a)) u_s^(j - c),
// and V likewise.  No codomain truncation is involved.

#include <algorithm>
#include <vector>

#include "fourier.hpp"
#include "linalg.hpp"

namespace nehari {

struct SeparableTerm {
  TrigPoly1 u;  ///< factor in x
  TrigPoly1 v;  ///< factor in y
};

struct SeparableSymbol {
  std::vector<SeparableTerm> terms;

  TrigPoly2 assemble() const {
    TrigPoly2 out(0);
    for (const auto& t : terms) out += outer(t.u, t.v);
    return out;
  }

  /// Values on the G x G grid.
  Eigen::MatrixXcd values(int G) const {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(G, G);
    for (const auto& t : terms) out += sample(t.u, G) * sample(t.v, G).transpose();
    return out;
  }

  /// Coefficients in x of the slice at y.
  TrigPoly1 slice_x(double y) const {
    TrigPoly1 out(0);
    for (const auto& t : terms) out += t.u * t.v.eval(y);
    return out;
  }

  TrigPoly1 slice_y(double x) const {
    TrigPoly1 out(0);
    for (const auto& t : terms) out += t.v * t.u.eval(x);
    return out;
  }
};

/// Row decomposition: phi = sum_m e^{imx} phi_m(y) over nonzero rows.
inline SeparableSymbol separate(const TrigPoly2& phi) {
  SeparableSymbol s;
  const int N = phi.N();
  for (int m = -N; m <= N; ++m) {
    TrigPoly1 row(N);
    bool any = false;
    for (int n = -N; n <= N; ++n) {
      row(n) = phi(m, n);
      any = any || row(n) != cplx{};
    }
    if (any) s.terms.push_back({TrigPoly1::monomial(m), row.trimmed()});
  }
  return s;
}

/// (bx (x) by) * phi, term by term.
inline SeparableSymbol multiply(const SeparableSymbol& phi, const TrigPoly1& bx, const TrigPoly1& by) {
  SeparableSymbol out;
  out.terms.reserve(phi.terms.size());
  for (const auto& t : phi.terms) out.terms.push_back({multiply(t.u, bx), multiply(t.v, by)});
  return out;
}

inline SeparableSymbol conjugate(const SeparableSymbol& phi) {
  SeparableSymbol out;
  for (const auto& t : phi.terms) out.terms.push_back({conjugate(t.u), conjugate(t.v)});
  return out;
}

inline SeparableSymbol operator+(SeparableSymbol a, const SeparableSymbol& b) {
  a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
  return a;
}

namespace detail {

/// sum over j in [lo, hi] of conj(f^(j - a)) g^(j - c), restricted to support.
inline cplx bracket_sum(const TrigPoly1& f, const TrigPoly1& g, int a, int c, int lo, int hi) {
  lo = std::max({lo, a - f.N(), c - g.N()});
  hi = std::min({hi, a + f.N(), c + g.N()});
  cplx s{};
  for (int j = lo; j <= hi; ++j) s += std::conj(f(j - a)) * g(j - c);
  return s;
}

}  // namespace detail

/// Brackets over j < 0 and over all j on [0, N]^2 indices.
struct Bracket {
  CMatrix minus;
  CMatrix all;
  CMatrix plus() const { return all - minus; }
};

inline Bracket bracket(const TrigPoly1& f, const TrigPoly1& g, int N) {
  const Eigen::Index n = N + 1;
  Bracket b{CMatrix(n, n), CMatrix(n, n)};
  constexpr int inf = 1 << 29;
  for (int a = 0; a <= N; ++a) {
    b.minus(a, 0) = detail::bracket_sum(f, g, a, 0, -inf, -1);
    b.minus(0, a) = detail::bracket_sum(f, g, 0, a, -inf, -1);
  }
  for (int a = 0; a < N; ++a)
    for (int c = 0; c < N; ++c)
      b.minus(a + 1, c + 1) = b.minus(a, c) - std::conj(f.coeff(-1 - a)) * g.coeff(-1 - c);
  std::vector<cplx> corr(static_cast<std::size_t>(2 * N + 1));
  for (int d = -N; d <= N; ++d)
    corr[static_cast<std::size_t>(d + N)] = detail::bracket_sum(f, g, d, 0, -inf, inf);
  for (int a = 0; a <= N; ++a)
    for (int c = 0; c <= N; ++c) b.all(a, c) = corr[static_cast<std::size_t>(a - c + N)];
  return b;
}

/// A^*A for the one-variable Hankel matrix of phi on [0, N].
inline CMatrix hankel_gram(const TrigPoly1& phi, int N) { return bracket(phi, phi, N).minus; }

/// A^*A for the big Hankel matrix of a separable symbol on [0, N]^2,
/// flat index kx * (N + 1) + ky.
inline CMatrix hankel_gram(const SeparableSymbol& phi, int N) {
  const Eigen::Index n = N + 1;
  CMatrix out = CMatrix::Zero(n * n, n * n);
  const std::size_t R = phi.terms.size();
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t s = 0; s < R; ++s) {
      const Bracket U = bracket(phi.terms[r].u, phi.terms[s].u, N);
      const Bracket V = bracket(phi.terms[r].v, phi.terms[s].v, N);
      const CMatrix Up = U.plus();
      for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index c = 0; c < n; ++c) {
          const cplx um = U.minus(a, c), up = Up(a, c);
          if (um == cplx{} && up == cplx{}) continue;
          out.block(a * n, c * n, n, n) += um * V.all + up * V.minus;
        }
    }
  return hermitian_part(out);
}

inline double hankel_norm(const TrigPoly1& phi, int N) {
  return std::sqrt(std::max(0.0, max_eigenvalue(hankel_gram(phi, N))));
}

inline double hankel_norm(const SeparableSymbol& phi, int N) {
  if (phi.terms.empty()) return 0.0;
  return std::sqrt(std::max(0.0, max_eigenvalue(hankel_gram(phi, N))));
}

}  // namespace nehari

#endif
