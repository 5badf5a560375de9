#ifndef NEHARI_MINIMAX_HPP
#define NEHARI_MINIMAX_HPP

// Complex Chebyshev approximation by trigonometric polynomials on uniform
// grids, solved with Lawson's iteratively reweighted least squares.
//
// The problem has B blocks sharing one coefficient vector c indexed by a
// frequency list F.  Block b has target values t_b on the grid and a column
// multiplier beta_b(k), so that its residual is
//   r_b(theta) = t_b(theta) - sum_{k in F} beta_b(k) c_k e^{i k theta}.
// The objective is max over blocks and nodes of |r_b|.
//
// With weights w >= 0 summing to one, the weighted least-squares residual
// sqrt(sum w |r|^2) at its minimizer never exceeds the minimax value, so
// every iteration yields a rigorous lower bound next to the achieved upper
// bound.  Normal equations are Toeplitz in the frequency differences and
// are assembled from one FFT of the weights per block.
//
// Small problems are solved instead as second-order cone programs by a
// log-barrier method.  On the central path the scaled multipliers
// 2t / (tau g_i) are weights on the simplex whose least-squares minimizer is
// the current iterate, so the same weighted lower bound certifies the result.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"
#include "fourier.hpp"
#include "linalg.hpp"

namespace nehari {

struct MinimaxOptions {
  int max_iter = 4000;
  double gap_tol = 1e-4;     ///< relative gap (upper - lower) / upper that declares success
  double stall_tol = 1e-12;  ///< relative change of both bounds that stops iteration
  /// Problems with (2p + 1)^3 below this use the barrier solver; larger
  /// ones use Lawson iteration with FFT-assembled normal equations.
  double barrier_budget = 3e8;
};

template <int D>
struct MinimaxBlock {
  GridValues<D> target;
  std::vector<cplx> multiplier;  ///< beta_b(k), aligned with the frequency list
};

template <int D>
struct MinimaxResult {
  double value = 0.0;        ///< achieved max residual (upper bound)
  double lower_bound = 0.0;  ///< certified lower bound on the discrete minimax value
  int iterations = 0;
  bool converged = true;
  std::vector<cplx> coeffs;
  std::vector<GridValues<D>> residuals;  ///< per block, at the returned coefficients

  double gap() const { return value > 0.0 ? (value - lower_bound) / value : 0.0; }
};

namespace detail {

template <int D>
using Freq = std::array<int, D>;

template <int D>
Eigen::MatrixXcd to_matrix(const GridValues<D>& v) {
  if constexpr (D == 1)
    return Eigen::MatrixXcd(v);
  else
    return v;
}

template <int D>
void dft(Eigen::MatrixXcd& a, bool forward) {
  if constexpr (D == 1)
    fft_columns(a, forward);
  else
    fft2(a, forward);
}

template <int D>
cplx& bin(Eigen::MatrixXcd& a, const Freq<D>& k, int G) {
  if constexpr (D == 1)
    return a(wrap(k[0], G), 0);
  else
    return a(wrap(k[0], G), wrap(k[1], G));
}

template <int D>
Freq<D> diff(const Freq<D>& a, const Freq<D>& b) {
  Freq<D> d;
  for (int i = 0; i < D; ++i) d[i] = a[i] - b[i];
  return d;
}


/// Rows m_i of a linear map c -> M c, with the two weighted Gram forms the
/// barrier Hessian needs: sum_i a_i m_i^H m_i and sum_i k_i m_i^T m_i.
struct DenseRows {
  const CMatrix& M;

  Eigen::Index rows() const { return M.rows(); }
  Eigen::Index cols() const { return M.cols(); }
  CVector apply(const CVector& c) const { return M * c; }
  CVector adjoint(const CVector& w) const { return M.adjoint() * w; }
  CMatrix hermitian(const Eigen::VectorXd& a) const { return M.adjoint() * a.asDiagonal() * M; }
  CMatrix symmetric(const CVector& k) const { return M.transpose() * k.asDiagonal() * M; }
};

/// Rows beta_b(k) e^{i k theta} over blocks b and grid nodes theta, stored
/// block after block in column-major grid order.  Both Gram forms are
/// Toeplitz (in f_l - f_k) or Hankel (in f_k + f_l) and come from one FFT of
/// the weights per block.
template <int D>
struct FourierRows {
  const std::vector<MinimaxBlock<D>>& blocks;
  const std::vector<Freq<D>>& freqs;
  int G;

  Eigen::Index block_size() const { return D == 1 ? G : Eigen::Index(G) * G; }
  Eigen::Index rows() const { return static_cast<Eigen::Index>(blocks.size()) * block_size(); }
  Eigen::Index cols() const { return static_cast<Eigen::Index>(freqs.size()); }
  Eigen::MatrixXcd grid() const { return Eigen::MatrixXcd::Zero(G, D == 1 ? 1 : G); }
  cplx beta(std::size_t b, Eigen::Index k) const { return blocks[b].multiplier[static_cast<std::size_t>(k)]; }

  CVector apply(const CVector& c) const {
    CVector out(rows());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      Eigen::MatrixXcd a = grid();
      for (Eigen::Index k = 0; k < cols(); ++k) bin<D>(a, freqs[static_cast<std::size_t>(k)], G) += beta(b, k) * c(k);
      dft<D>(a, false);
      out.segment(static_cast<Eigen::Index>(b) * block_size(), block_size()) = a.reshaped();
    }
    return out;
  }

  /// FFT (sign -) of one block of an n-vector.
  template <class V>
  Eigen::MatrixXcd transform(const V& w, std::size_t b) const {
    Eigen::MatrixXcd a = grid();
    a.reshaped() = w.segment(static_cast<Eigen::Index>(b) * block_size(), block_size()).template cast<cplx>();
    dft<D>(a, true);
    return a;
  }

  CVector adjoint(const CVector& w) const {
    CVector out = CVector::Zero(cols());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      Eigen::MatrixXcd W = transform(w, b);
      for (Eigen::Index k = 0; k < cols(); ++k)
        out(k) += std::conj(beta(b, k)) * bin<D>(W, freqs[static_cast<std::size_t>(k)], G);
    }
    return out;
  }

  CMatrix hermitian(const Eigen::VectorXd& a) const {
    CMatrix A = CMatrix::Zero(cols(), cols());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      Eigen::MatrixXcd W = transform(a, b);
      for (Eigen::Index l = 0; l < cols(); ++l)
        for (Eigen::Index k = 0; k < cols(); ++k)
          A(k, l) += std::conj(beta(b, k)) * beta(b, l) *
                     bin<D>(W, diff<D>(freqs[static_cast<std::size_t>(k)], freqs[static_cast<std::size_t>(l)]), G);
    }
    return A;
  }

  CMatrix symmetric(const CVector& kap) const {
    CMatrix C = CMatrix::Zero(cols(), cols());
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      Eigen::MatrixXcd W = transform(kap, b);
      for (Eigen::Index l = 0; l < cols(); ++l)
        for (Eigen::Index k = 0; k < cols(); ++k) {
          Freq<D> s;
          for (int i = 0; i < D; ++i)
            s[static_cast<std::size_t>(i)] =
                -(freqs[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] +
                  freqs[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)]);
          C(k, l) += beta(b, k) * beta(b, l) * bin<D>(W, s, G);
        }
    }
    return C;
  }
};

/// Log-barrier solution of min_c max_i |t_i - (M c)_i|.
struct BarrierOutcome {
  CVector c;
  double lower_bound = 0.0;
  int iterations = 0;
  bool converged = false;
};

// For f = sum_i F_i(m_i c) with 2x2 Hessians Q_i in (Re, Im) of m_i c, the
// Hessian in u = (Re c, Im c) is
//   [[Re(A + C), -Im(A + C)], [-Im(A + C)^T, Re(A - C)]]
// with A = sum alpha_i m_i^H m_i, C = sum kappa_i m_i^T m_i, alpha = tr Q_i / 2
// and kappa = (q11 - q22) / 2 - i q12.
template <class Rows>
BarrierOutcome barrier_minimax(const Rows& M, const CVector& target, double gap_tol, int max_newton) {
  const Eigen::Index n = M.rows(), p = M.cols(), q = 2 * p + 1;
  BarrierOutcome out;
  const double scale = target.cwiseAbs().maxCoeff();
  out.c = CVector::Zero(p);
  if (scale == 0.0 || p == 0) {
    out.converged = true;
    return out;
  }
  const CVector tv = target / scale;
  auto weighted_ls = [&](const Eigen::VectorXd& w) {
    CMatrix A = M.hermitian(w);
    const double ridge = 1e-14 * std::max(A.diagonal().real().maxCoeff(), 1e-300);
    A.diagonal().array() += ridge;
    const CVector rhs = M.adjoint(w.cast<cplx>().cwiseProduct(tv));
    const CVector c = Eigen::LDLT<CMatrix>(A).solve(rhs);
    const double lb2 = (w.array() * (tv - M.apply(c)).cwiseAbs2().array()).sum() / w.sum();
    return std::pair<CVector, double>{c, std::sqrt(std::max(0.0, lb2))};
  };

  auto [c, lb] = weighted_ls(Eigen::VectorXd::Ones(n));
  CVector s = tv - M.apply(c);
  double t = 1.05 * s.cwiseAbs().maxCoeff() + 1e-12;
  double tau = 2.0 * static_cast<double>(n) / t;
  double best_lb = lb;
  auto barrier_value = [&](double tt, const CVector& ss, double& f) {
    if (!(tt > 0.0)) return false;
    f = tau * tt;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double g = tt * tt - std::norm(ss(i));
      if (!(g > 0.0)) return false;
      f -= std::log(g);
    }
    return true;
  };
  int newton = 0;
  for (int outer = 0; outer < 60 && newton < max_newton; ++outer) {
    for (int inner = 0; inner < 100 && newton < max_newton; ++inner, ++newton) {
      Eigen::VectorXd ig(n), alpha(n);
      CVector kappa(n), ws(n), wt(n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double g = t * t - std::norm(s(i));
        ig(i) = 1.0 / g;
        alpha(i) = 2.0 * std::norm(s(i)) * ig(i) * ig(i) + 2.0 * ig(i);
        kappa(i) = 2.0 * std::conj(s(i)) * std::conj(s(i)) * ig(i) * ig(i);
        ws(i) = 2.0 * s(i) * ig(i);
        wt(i) = 4.0 * t * s(i) * ig(i) * ig(i);
      }
      // grad_u g_i / g_i summed becomes M^H (2 s / g) in complex form.
      const CVector gu = M.adjoint(ws), htu = M.adjoint(wt);
      Eigen::VectorXd grad(q);
      grad(0) = tau - 2.0 * t * ig.sum();
      grad.segment(1, p) = -gu.real();
      grad.segment(1 + p, p) = -gu.imag();
      Eigen::MatrixXd H(q, q);
      H(0, 0) = (4.0 * t * t * ig.cwiseAbs2() - 2.0 * ig).sum();
      Eigen::VectorXd hu(2 * p);
      hu << htu.real(), htu.imag();
      H.block(0, 1, 1, 2 * p) = hu.transpose();
      H.block(1, 0, 2 * p, 1) = hu;
      const CMatrix A = M.hermitian(alpha), C = M.symmetric(kappa);
      H.block(1, 1, p, p) = (A + C).real();
      H.block(1 + p, 1 + p, p, p) = (A - C).real();
      H.block(1, 1 + p, p, p) = -(A + C).imag();
      H.block(1 + p, 1, p, p) = -(A + C).imag().transpose();
      H.diagonal().array() += 1e-13 * H.diagonal().cwiseAbs().maxCoeff();
      const Eigen::VectorXd dx = H.ldlt().solve(-grad);
      const double dec = -grad.dot(dx);
      if (!(dec > 2e-12)) break;
      double f0 = 0.0;
      barrier_value(t, s, f0);
      CVector dc(p);
      for (Eigen::Index k = 0; k < p; ++k) dc(k) = cplx(dx(1 + k), dx(1 + p + k));
      const CVector ds = -M.apply(dc);
      double step = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls, step *= 0.5) {
        double f1 = 0.0;
        if (barrier_value(t + step * dx(0), s + step * ds, f1) && f1 <= f0 - 0.25 * step * dec) {
          t += step * dx(0);
          c += step * dc;
          s += step * ds;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    Eigen::VectorXd w(n);
    for (Eigen::Index i = 0; i < n; ++i) w(i) = 1.0 / (t * t - std::norm(s(i)));
    best_lb = std::max(best_lb, weighted_ls(w).second);
    const double ub = s.cwiseAbs().maxCoeff();
    if (ub - best_lb <= gap_tol * ub) {
      out.converged = true;
      break;
    }
    tau *= 8.0;
  }
  out.c = c * scale;
  out.lower_bound = best_lb * scale;
  out.iterations = newton;
  return out;
}

}  // namespace detail

template <int D>
MinimaxResult<D> complex_minimax(const std::vector<MinimaxBlock<D>>& blocks,
                                 const std::vector<std::array<int, D>>& freqs,
                                 const MinimaxOptions& opt = {}) {
  require(!blocks.empty(), "complex_minimax: no blocks");
  const int G = static_cast<int>(blocks[0].target.rows());
  const Eigen::Index p = static_cast<Eigen::Index>(freqs.size());
  for (const auto& b : blocks) {
    require(b.target.rows() == G && (D == 1 || b.target.cols() == G),
            "complex_minimax: blocks must share one grid");
    require(b.multiplier.size() == freqs.size(), "complex_minimax: multiplier size mismatch");
  }
  const double npts = static_cast<double>(blocks.size()) * std::pow(static_cast<double>(G), D);

  MinimaxResult<D> res;
  res.coeffs.assign(freqs.size(), cplx{});
  auto residuals_for = [&](const CVector& c) {
    std::vector<GridValues<D>> r;
    r.reserve(blocks.size());
    for (const auto& b : blocks) {
      Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(G, D == 1 ? 1 : G);
      for (Eigen::Index k = 0; k < p; ++k)
        detail::bin<D>(a, freqs[static_cast<std::size_t>(k)], G) +=
            b.multiplier[static_cast<std::size_t>(k)] * c(k);
      detail::dft<D>(a, false);
      if constexpr (D == 1)
        r.push_back(b.target - a.col(0));
      else
        r.push_back(b.target - a);
    }
    return r;
  };
  auto max_abs = [](const std::vector<GridValues<D>>& r) {
    double m = 0.0;
    for (const auto& v : r) m = std::max(m, v.cwiseAbs().maxCoeff());
    return m;
  };

  std::vector<GridValues<D>> r = residuals_for(CVector::Zero(p));
  double best = max_abs(r);
  res.value = best;
  res.residuals = r;
  if (best == 0.0 || p == 0) {
    res.lower_bound = best;
    return res;
  }

  if (std::pow(2.0 * static_cast<double>(p) + 1.0, 3) <= opt.barrier_budget) {
    const detail::FourierRows<D> M{blocks, freqs, G};
    CVector t(M.rows());
    for (std::size_t bi = 0; bi < blocks.size(); ++bi)
      t.segment(static_cast<Eigen::Index>(bi) * M.block_size(), M.block_size()) =
          detail::to_matrix<D>(blocks[bi].target).reshaped();
    const auto bo = detail::barrier_minimax(M, t, 0.1 * opt.gap_tol, opt.max_iter);
    r = residuals_for(bo.c);
    const double ub = max_abs(r);
    if (ub < best) {
      res.value = ub;
      res.coeffs.assign(bo.c.data(), bo.c.data() + bo.c.size());
      res.residuals = r;
    }
    res.lower_bound = std::min(bo.lower_bound, res.value);
    res.iterations = bo.iterations;
    res.converged = res.gap() <= opt.gap_tol;
    return res;
  }

  std::vector<Eigen::MatrixXcd> w;
  for (std::size_t bi = 0; bi < blocks.size(); ++bi)
    w.push_back(Eigen::MatrixXcd::Constant(G, D == 1 ? 1 : G, 1.0 / npts));

  double lb_prev = 0.0, ub_prev = std::numeric_limits<double>::infinity();
  double lb_best = 0.0;
  bool stalled = false;
  int it = 0;
  for (; it < opt.max_iter; ++it) {
    CMatrix A = CMatrix::Zero(p, p);
    CVector rhs = CVector::Zero(p);
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const auto& b = blocks[bi];
      Eigen::MatrixXcd W = w[bi];
      Eigen::MatrixXcd WT = w[bi].cwiseProduct(detail::to_matrix<D>(b.target));
      detail::dft<D>(W, true);
      detail::dft<D>(WT, true);
      for (Eigen::Index k = 0; k < p; ++k) {
        const auto& fk = freqs[static_cast<std::size_t>(k)];
        const cplx bk = std::conj(b.multiplier[static_cast<std::size_t>(k)]);
        if (bk == cplx{}) continue;
        rhs(k) += bk * detail::bin<D>(WT, fk, G);
        for (Eigen::Index l = 0; l < p; ++l) {
          const cplx bl = b.multiplier[static_cast<std::size_t>(l)];
          if (bl == cplx{}) continue;
          A(k, l) += bk * bl *
                     detail::bin<D>(W, detail::diff<D>(fk, freqs[static_cast<std::size_t>(l)]), G);
        }
      }
    }
    const double ridge = 1e-14 * std::max(A.diagonal().real().maxCoeff(), 1e-300);
    A.diagonal().array() += ridge;
    Eigen::LDLT<CMatrix> ldlt(A);
    const CVector c = ldlt.solve(rhs);

    r = residuals_for(c);
    double lb2 = 0.0, ub = 0.0, wsum = 0.0;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const Eigen::MatrixXcd rm = detail::to_matrix<D>(r[bi]);
      lb2 += (w[bi].real().array() * rm.cwiseAbs2().array()).sum();
      ub = std::max(ub, rm.cwiseAbs().maxCoeff());
    }
    const double lb = std::sqrt(std::max(lb2, 0.0));
    lb_best = std::max(lb_best, lb);
    if (ub < best) {
      best = ub;
      res.value = ub;
      res.coeffs.assign(c.data(), c.data() + c.size());
      res.residuals = r;
    }
    res.lower_bound = std::min(lb_best, best);
    if (res.gap() <= opt.gap_tol) break;
    if (std::abs(lb - lb_prev) <= opt.stall_tol * best && std::abs(ub - ub_prev) <= opt.stall_tol * best) {
      stalled = true;
      break;
    }
    lb_prev = lb;
    ub_prev = ub;

    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const Eigen::MatrixXcd rm = detail::to_matrix<D>(r[bi]);
      w[bi] = (w[bi].real().array() * rm.cwiseAbs().array()).matrix().template cast<cplx>();
      wsum += w[bi].real().sum();
    }
    if (!(wsum > 0.0)) break;
    for (auto& wb : w) wb /= wsum;
  }
  res.iterations = it + 1;
  res.converged = res.gap() <= opt.gap_tol || (stalled && res.gap() <= 1e-3);
  return res;
}

/// Distance on a grid from the values v to polynomials with frequencies
/// lo..hi: a one-block problem with unit multipliers.
inline MinimaxResult<1> minimax_span_1d(const Eigen::VectorXcd& v, int lo, int hi,
                                        const MinimaxOptions& opt = {}) {
  std::vector<std::array<int, 1>> f;
  for (int k = lo; k <= hi; ++k) f.push_back({k});
  MinimaxBlock<1> b{v, std::vector<cplx>(f.size(), 1.0)};
  return complex_minimax<1>({b}, f, opt);
}

}  // namespace nehari

#endif
