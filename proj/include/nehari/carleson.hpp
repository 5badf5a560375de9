#ifndef NEHARI_CARLESON_HPP
#define NEHARI_CARLESON_HPP

// Embedding constants of discrete measures on the bidisk.
//
// For atoms (z_i, zeta_i) with weights mu_i and nu_i = mu_i / ((1 - |z_i|^2)(1 - |zeta_i|^2)),
//   C^2 = sup_f sum_i nu_i ||P_{z_i zeta_i} f||^2 / ||f||^2.
// Two assemblies of the quadratic form on the analytic box [0, N]^2:
//   embedding_constant      columns P_i e_k from the closed-form projector,
//   vector_hankel_constant  sum_i nu_i A_i^* A_i, A_i the Hankel matrix of conj(b_{z_i}) (x) conj(b_{zeta_i}).
// ||P_{z zeta} f|| = ||Gamma_{conj(b_z) (x) conj(b_zeta)} f||, so both give the same C.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blaschke.hpp"
#include "errors.hpp"
#include "fourier.hpp"
#include "linalg.hpp"
#include "model.hpp"
#include "separable.hpp"

namespace nehari {

struct Atom {
  cplx z;
  cplx zeta;
  double mu = 0.0;
  double nu() const { return mu / ((1.0 - std::norm(z)) * (1.0 - std::norm(zeta))); }
};

struct DiscreteMeasure {
  std::vector<Atom> atoms;

  void validate() const {
    for (const auto& a : atoms) {
      require(std::abs(a.z) < 1.0 && std::abs(a.zeta) < 1.0, "DiscreteMeasure: atom outside the open bidisk");
      require(a.mu > 0.0 && std::isfinite(a.mu), "DiscreteMeasure: weights must be positive");
    }
  }

  DiscreteMeasure scaled(double s) const {
    DiscreteMeasure m = *this;
    for (auto& a : m.atoms) a.mu *= s;
    return m;
  }
};

struct CarlesonReport {
  double C = 0.0;           ///< at N
  double C_double = 0.0;    ///< at 2N
  double drift = 0.0;       ///< C(2N) - C(N), nonnegative up to roundoff
  int N = 0;
};

namespace detail {

inline int box_index(int a, int b, int N) { return a * (N + 1) + b; }

/// sum_i nu_i <P_i e_k, e_j> on [0, N]^2, flat index a (N + 1) + b.
inline CMatrix embedding_form(const DiscreteMeasure& m, int N) {
  const int n = (N + 1) * (N + 1);
  CMatrix A = CMatrix::Zero(n, n);
  for (const auto& at : m.atoms) {
    const double nu = at.nu();
    for (int a = 0; a <= N; ++a)
      for (int b = 0; b <= N; ++b) {
        TrigPoly2 e(std::max(a, b));
        e(a, b) = 1.0;
        const TrigPoly2 p = project_Kzz(e, at.z, at.zeta, N);
        const int k = box_index(a, b, N);
        for (int c = 0; c <= N; ++c)
          for (int d = 0; d <= N; ++d) A(box_index(c, d, N), k) += nu * p(c, d);
      }
  }
  return hermitian_part(A);
}

inline CMatrix vector_hankel_form(const DiscreteMeasure& m, int N, double tol) {
  const int n = (N + 1) * (N + 1);
  CMatrix A = CMatrix::Zero(n, n);
  for (const auto& at : m.atoms) {
    const BlaschkeProduct bz({at.z}), bw({at.zeta});
    SeparableSymbol phi;
    phi.terms.push_back({conjugate(coeffs(bz, series_degree(bz, tol))), conjugate(coeffs(bw, series_degree(bw, tol)))});
    A += at.nu() * hankel_gram(phi, N);
  }
  return hermitian_part(A);
}

inline double form_constant(const CMatrix& A) { return std::sqrt(std::max(0.0, max_eigenvalue(A))); }

template <class Form>
CarlesonReport with_stability(const DiscreteMeasure& m, int N, const Form& form) {
  m.validate();
  require(N >= 0, "carleson: negative truncation");
  CarlesonReport r;
  r.N = N;
  if (m.atoms.empty()) return r;
  r.C = form_constant(form(m, N));
  r.C_double = form_constant(form(m, 2 * N));
  r.drift = r.C_double - r.C;
  return r;
}

}  // namespace detail

/// C from the closed-form projectors P_{z zeta}, on [0, N]^2 and [0, 2N]^2.
inline CarlesonReport embedding_constant(const DiscreteMeasure& m, int N) {
  return detail::with_stability(m, N, [](const DiscreteMeasure& mm, int n) { return detail::embedding_form(mm, n); });
}

/// ||stacked sqrt(nu_i) Gamma_{conj(b_{z_i}) (x) conj(b_{zeta_i})}|| on [0, N]^2 and [0, 2N]^2.
inline CarlesonReport vector_hankel_constant(const DiscreteMeasure& m, int N, double tol = kSeriesTol) {
  return detail::with_stability(m, N, [tol](const DiscreteMeasure& mm, int n) { return detail::vector_hankel_form(mm, n, tol); });
}

/// sum_i nu_i ||P_i f||^2 from the closed form of the projector norm.
inline double embedding_energy(const DiscreteMeasure& m, const TrigPoly2& f) {
  double s = 0.0;
  for (const auto& a : m.atoms) s += a.nu() * norm_Kzz_closed(f, a.z, a.zeta);
  return s;
}

}  // namespace nehari

#endif
