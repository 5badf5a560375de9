#ifndef NEHARI_LINALG_HPP
#define NEHARI_LINALG_HPP

// Dense Hermitian eigenvalue helpers on top of Eigen.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "fourier.hpp"

namespace nehari {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline CMatrix hermitian_part(const CMatrix& A) { return 0.5 * (A + A.adjoint()); }

/// Ascending eigenvalues of the Hermitian part of A.
inline RVector hermitian_eigenvalues(const CMatrix& A) {
  if (A.size() == 0) return RVector();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(A), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double min_eigenvalue(const CMatrix& A) {
  const RVector ev = hermitian_eigenvalues(A);
  return ev.size() ? ev(0) : 0.0;
}

inline double max_eigenvalue(const CMatrix& A) {
  const RVector ev = hermitian_eigenvalues(A);
  return ev.size() ? ev(ev.size() - 1) : 0.0;
}

/// PSD within a scale-aware threshold: lambda_min >= -rel * trace.
/// An absolute floor of 1e-14 absorbs roundoff on exactly singular matrices.
inline bool is_psd(const CMatrix& A, double rel = 1e-9) {
  if (A.size() == 0) return true;
  const double tr = std::abs(A.trace().real());
  return min_eigenvalue(A) >= -std::max(rel * tr, 1e-14);
}

/// 2-norm condition number of a Hermitian positive definite matrix.
inline double hpd_condition(const CMatrix& B) {
  const RVector ev = hermitian_eigenvalues(B);
  if (ev.size() == 0) return 1.0;
  if (ev(0) <= 0.0) return std::numeric_limits<double>::infinity();
  return ev(ev.size() - 1) / ev(0);
}

/// Largest lambda with A v = lambda B v, for Hermitian A and positive
/// definite B. Throws ConditioningError when cond(B) exceeds max_cond.
inline double generalized_max_eigenvalue(const CMatrix& A, const CMatrix& B,
                                         double max_cond = 1e10) {
  if (A.size() == 0) return 0.0;
  const double kappa = hpd_condition(B);
  if (!(kappa <= max_cond))
    throw ConditioningError("Gram matrix condition number " + std::to_string(kappa) +
                            " exceeds " + std::to_string(max_cond) +
                            "; perturb nearly coincident zeros");
  Eigen::LLT<CMatrix> llt(hermitian_part(B));
  if (llt.info() != Eigen::Success) throw ConditioningError("Gram matrix is not positive definite");
  const CMatrix Linv = llt.matrixL().solve(CMatrix::Identity(B.rows(), B.cols()));
  return max_eigenvalue(Linv * hermitian_part(A) * Linv.adjoint());
}

/// Descending singular values.
inline std::vector<double> singular_values(const CMatrix& A) {
  if (A.size() == 0) return {};
  Eigen::BDCSVD<CMatrix> svd(A);
  const RVector s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

/// Descending singular values from the Gram matrix A^* A.
inline std::vector<double> singular_values_from_gram(const CMatrix& gram) {
  const RVector ev = hermitian_eigenvalues(gram);
  std::vector<double> s(static_cast<std::size_t>(ev.size()));
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    s[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, ev(ev.size() - 1 - i)));
  return s;
}

struct LanczosResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Largest eigenvalue of a Hermitian operator given by its action, by
/// Lanczos with full reorthogonalization. Stops when the top Ritz value
/// changes by less than rel_tol in two consecutive steps, or the Krylov space is exhausted.
template <class MatVec>
LanczosResult lanczos_max_eigenvalue(const MatVec& apply, Eigen::Index dim, double rel_tol = 1e-13,
                                     int max_iter = 300) {
  LanczosResult res;
  if (dim == 0) {
    res.converged = true;
    return res;
  }
  const int kmax = static_cast<int>(std::min<Eigen::Index>(dim, max_iter));
  CMatrix Q(dim, kmax);
  std::vector<double> alpha, beta;
  CVector q = CVector::Zero(dim);
  for (Eigen::Index i = 0; i < dim; ++i) q(i) = cplx(1.0 + 0.37 * std::sin(1.3 * i), 0.21 * std::cos(0.7 * i));
  q.normalize();
  double prev = -1.0;
  int quiet = 0;
  for (int k = 0; k < kmax; ++k) {
    Q.col(k) = q;
    CVector w = apply(q);
    const double a = q.dot(w).real();
    alpha.push_back(a);
    for (int pass = 0; pass < 2; ++pass) w -= Q.leftCols(k + 1) * (Q.leftCols(k + 1).adjoint() * w);
    const double b = w.norm();
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k + 1, k + 1);
    for (int i = 0; i <= k; ++i) {
      T(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i < k) T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
    const double top = es.eigenvalues()(k);
    res.value = top;
    res.iterations = k + 1;
    const double scale = std::max(std::abs(top), 1e-300);
    quiet = (k > 0 && std::abs(top - prev) <= rel_tol * scale) ? quiet + 1 : 0;
    if (quiet >= 2 || b <= 1e-14 * scale) {
      res.converged = true;
      break;
    }
    prev = top;
    beta.push_back(b);
    q = w / b;
  }
  if (res.iterations == dim) res.converged = true;
  return res;
}

}  // namespace nehari

#endif
