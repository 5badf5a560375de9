#ifndef NEHARI_PICK_HPP
#define NEHARI_PICK_HPP

// Pick matrices on D and the coordinate-wise Pick problem on D^2.
//
// For nodes (z_k, w_k) and analytic data G, with b = b1 (x) b2 vanishing
// at the node coordinates, phi = conj(b) G.  The certificate reports
//   (i)   min eigenvalues of the two families of Pick matrices on T,
//   (ii)  ||Gamma_phi|| on the structured basis of K_{b1 b2},
//   (iv)  interpolants F1 = G - b1 h_1, F2 = G - b2 h_2 built by minimax
//         on lines, with their sup norms and interpolation errors,
// and checks each implication separately.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blaschke.hpp"
#include "errors.hpp"
#include "fourier.hpp"
#include "hankel.hpp"
#include "linalg.hpp"
#include "minimax.hpp"
#include "model.hpp"

namespace nehari {

inline constexpr double kNodeSeparation = 1e-10;

namespace detail {

inline void require_distinct(const std::vector<cplx>& z, const char* who) {
  for (std::size_t i = 0; i < z.size(); ++i) {
    require(std::abs(z[i]) < 1.0, std::string(who) + ": node outside the open disk");
    for (std::size_t j = 0; j < i; ++j)
      require(std::abs(z[i] - z[j]) > kNodeSeparation, std::string(who) + ": coincident nodes");
  }
}

/// ((1 - l_j conj(l_k)) / (1 - z_j conj(z_k))).
inline CMatrix pick_kernel(const std::vector<cplx>& z, const std::vector<cplx>& l) {
  const Eigen::Index n = static_cast<Eigen::Index>(z.size());
  CMatrix P(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const auto a = static_cast<std::size_t>(j), b = static_cast<std::size_t>(k);
      P(j, k) = (1.0 - l[a] * std::conj(l[b])) / (1.0 - z[a] * std::conj(z[b]));
    }
  return P;
}

/// Scale-aware PSD margin: lambda_min / max(trace, 1).
inline double psd_margin(const CMatrix& A) {
  if (A.size() == 0) return 0.0;
  return min_eigenvalue(A) / std::max(std::abs(A.trace().real()), 1.0);
}

}  // namespace detail

struct PickSystem {
  std::vector<cplx> z;       ///< first coordinates
  std::vector<cplx> w;       ///< second coordinates (empty on D)
  std::vector<cplx> lambda;  ///< target values, when given
  std::optional<TrigPoly2> G;

  int size() const { return static_cast<int>(z.size()); }
  BlaschkeProduct b1() const { return BlaschkeProduct(z); }
  BlaschkeProduct b2() const { return BlaschkeProduct(w); }

  void validate() const {
    detail::require_distinct(z, "PickSystem");
    detail::require_distinct(w, "PickSystem");
    require(w.empty() || w.size() == z.size(), "PickSystem: z and w differ in length");
    require(lambda.empty() || lambda.size() == z.size(), "PickSystem: lambda has the wrong length");
    if (G) require(project(*G, Sector::IminusPfull).is_zero(), "PickSystem: G must be analytic");
  }
};

/// ((1 - l_j conj(l_k)) (1 - z_j conj(z_k))^{-1}).
inline CMatrix pick_matrix_1d(const std::vector<cplx>& z, const std::vector<cplx>& l) {
  detail::require_distinct(z, "pick_matrix_1d");
  require(z.size() == l.size(), "pick_matrix_1d: nodes and values differ in length");
  return detail::pick_kernel(z, l);
}

struct PickFamilies {
  int grid = 0;             ///< points on T per family; the refinement uses 2 * grid
  double min_eig_x = 0.0;   ///< min over y of lambda_min of (G(z_j, y)) matrices
  double min_eig_y = 0.0;   ///< min over x of lambda_min of (G(x, w_j)) matrices
  double min_eig_x_coarse = 0.0, min_eig_y_coarse = 0.0;
  double margin = 0.0;      ///< min of both, divided by max(trace, 1) at the minimizer
  bool psd = true;
};

/// Both families of Pick matrices on a grid of T, with one refinement pass.
inline PickFamilies pick_matrices_2d(const PickSystem& sys, int grid = 128, double rel_tol = 1e-9) {
  sys.validate();
  require(sys.G.has_value(), "pick_matrices_2d: G is required");
  require(grid >= 4, "pick_matrices_2d: grid too small");
  const TrigPoly2& G = *sys.G;
  std::vector<TrigPoly1> sx, sy;  // G(z_j, .) and G(., w_j)
  for (cplx a : sys.z) sx.push_back(slice_at_x(G, a));
  for (cplx a : sys.w) sy.push_back(slice_at_y(G, a));
  PickFamilies out;
  out.grid = grid;
  auto scan = [&](const std::vector<TrigPoly1>& s, const std::vector<cplx>& nodes, int n, double& margin) {
    double m = std::numeric_limits<double>::infinity();
    margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      const double t = two_pi * k / n;
      std::vector<cplx> l;
      for (const auto& f : s) l.push_back(f.eval(t));
      const CMatrix P = detail::pick_kernel(nodes, l);
      const double e = min_eigenvalue(P);
      m = std::min(m, e);
      margin = std::min(margin, detail::psd_margin(P));
    }
    return nodes.empty() ? 0.0 : m;
  };
  double mx = 0.0, my = 0.0, dummy = 0.0;
  out.min_eig_x_coarse = scan(sx, sys.z, grid, dummy);
  out.min_eig_y_coarse = scan(sy, sys.w, grid, dummy);
  out.min_eig_x = std::min(out.min_eig_x_coarse, scan(sx, sys.z, 2 * grid, mx));
  out.min_eig_y = std::min(out.min_eig_y_coarse, scan(sy, sys.w, 2 * grid, my));
  out.margin = std::min(sys.z.empty() ? 0.0 : mx, sys.w.empty() ? 0.0 : my);
  out.psd = out.margin >= -rel_tol;
  return out;
}

// ---------------------------------------------------------------------------
// Product interpolants.

struct CorollaryResult {
  std::vector<cplx> lambda1, lambda2;  ///< the factorization lambda_k = lambda1_k lambda2_k
  TrigPoly1 G1, G2;                    ///< G1(z_k) = lambda1_k, G2(w_k) = lambda2_k
  double sup1 = 0.0, sup2 = 0.0;       ///< grid sup norms
  CMatrix M1, M2;
  double min_eig1 = 0.0, min_eig2 = 0.0;
  bool psd = true;
  double interp_error = 0.0;
  TrigPoly2 product() const { return outer(G1, G2); }
};

/// G(zeta) = sum_k lambda_k psi_{z_k}(zeta) / b'(z_k), which interpolates lambda at the zeros of b.
inline TrigPoly1 lagrange_interpolant(const BlaschkeProduct& b, const std::vector<cplx>& lambda) {
  const int D = detail::series_degree(b);
  TrigPoly1 G(D);
  const auto z = b.zeros();
  for (std::size_t k = 0; k < z.size(); ++k) G += eigen_psi(b, z[k], D) * (lambda[k] / derivative_at_zero(b, z[k]));
  return G;
}

inline double lagrange_sup(const BlaschkeProduct& b, const std::vector<cplx>& lambda, int grid) {
  const auto z = b.zeros();
  std::vector<cplx> d;
  for (cplx a : z) d.push_back(derivative_at_zero(b, a));
  double s = 0.0;
  for (int g = 0; g < grid; ++g) {
    const cplx xi = std::polar(1.0, two_pi * g / grid);
    cplx v{};
    for (std::size_t k = 0; k < z.size(); ++k) v += lambda[k] * eigen_psi_eval(b, z[k], xi) / d[k];
    s = std::max(s, std::abs(v));
  }
  return s;
}

/// The two Corollary matrices with entries
/// (1 - ||G2||^2 G1(z_j) conj(G1(z_k))) / (1 - z_j conj(z_k)) and the symmetric one.
/// Without an explicit split, lambda1 = lambda2 = principal square root of lambda.
inline CorollaryResult corollary_matrices(const PickSystem& sys, const std::vector<cplx>& lambda1 = {},
                                          const std::vector<cplx>& lambda2 = {}, int grid = 2048,
                                          double rel_tol = 1e-9) {
  sys.validate();
  require(sys.w.size() == sys.z.size() && sys.lambda.size() == sys.z.size(),
          "corollary_matrices: needs nodes in D^2 and target values");
  CorollaryResult r;
  if (lambda1.empty()) {
    for (cplx l : sys.lambda) {
      r.lambda1.push_back(std::sqrt(l));
      r.lambda2.push_back(std::sqrt(l));
    }
  } else {
    require(lambda1.size() == sys.z.size() && lambda2.size() == sys.z.size(),
            "corollary_matrices: split has the wrong length");
    r.lambda1 = lambda1;
    r.lambda2 = lambda2;
    for (std::size_t k = 0; k < lambda1.size(); ++k)
      require(std::abs(lambda1[k] * lambda2[k] - sys.lambda[k]) <= 1e-12 * (1.0 + std::abs(sys.lambda[k])),
              "corollary_matrices: split does not multiply to lambda");
  }
  const BlaschkeProduct b1 = sys.b1(), b2 = sys.b2();
  r.G1 = lagrange_interpolant(b1, r.lambda1);
  r.G2 = lagrange_interpolant(b2, r.lambda2);
  r.sup1 = std::max(lagrange_sup(b1, r.lambda1, grid), lagrange_sup(b1, r.lambda1, grid / 2));
  r.sup2 = std::max(lagrange_sup(b2, r.lambda2, grid), lagrange_sup(b2, r.lambda2, grid / 2));
  std::vector<cplx> s1, s2;
  for (std::size_t k = 0; k < sys.z.size(); ++k) {
    s1.push_back(r.sup2 * eval_disk(r.G1, sys.z[k]));
    s2.push_back(r.sup1 * eval_disk(r.G2, sys.w[k]));
    r.interp_error = std::max({r.interp_error, std::abs(eval_disk(r.G1, sys.z[k]) - r.lambda1[k]),
                               std::abs(eval_disk(r.G2, sys.w[k]) - r.lambda2[k])});
  }
  r.M1 = detail::pick_kernel(sys.z, s1);
  r.M2 = detail::pick_kernel(sys.w, s2);
  r.min_eig1 = min_eigenvalue(r.M1);
  r.min_eig2 = min_eigenvalue(r.M2);
  r.psd = sys.z.empty() || std::min(detail::psd_margin(r.M1), detail::psd_margin(r.M2)) >= -rel_tol;
  return r;
}

// ---------------------------------------------------------------------------
// Interpolants with one-sided control.

struct LineInterpolant {
  int lines = 0;                ///< transverse grid
  int K = 0;                    ///< degree of h on each line
  int grid = 0;                 ///< points along each line
  std::vector<std::vector<cplx>> h;  ///< per line, coefficients 0..K
  double sup = 0.0;             ///< max over lines of the minimax value = grid sup of |F|
  double sup_exact = 0.0;       ///< max over lines of ||G(., y)(T_b)||, the exact line distance
  double interp_error = 0.0;    ///< from the x-coefficients of F on each line
  double analytic_leak = 0.0;   ///< largest negative-frequency coefficient of F on a line
  bool converged = true;
};

/// F = G - b h(., y) along the chosen axis, h minimizing sup |conj(b) G - h| on each line.
/// Then F(z_k, y) = G(z_k, y), F is analytic along the axis and |F| = |conj(b) G - h| on T.
inline LineInterpolant line_interpolant(const TrigPoly2& G, const BlaschkeProduct& b, Axis axis, int lines,
                                        int K, const MinimaxOptions& opt = {}) {
  LineInterpolant r;
  r.lines = lines;
  r.K = K;
  const int D = detail::series_degree(b);
  int grid = 4 * K + 4;
  while (grid < 2 * (K + D + G.N()) + 2) grid *= 2;
  r.grid = grid;
  const Eigen::VectorXcd bv = blaschke_values(b, grid);
  const ModelSpace1 S(b);
  const auto z = b.zeros();
  for (int j = 0; j < lines; ++j) {
    const double t = two_pi * j / lines;
    TrigPoly1 g(G.N());
    for (int m = -G.N(); m <= G.N(); ++m) {
      cplx s{};
      for (int n = -G.N(); n <= G.N(); ++n)
        s += (axis == Axis::x ? G(m, n) : G(n, m)) * std::polar(1.0, n * t);
      g(m) = s;
    }
    const Eigen::VectorXcd gv = sample(g, grid);
    const Eigen::VectorXcd target = bv.conjugate().cwiseProduct(gv);
    const auto mm = minimax_span_1d(target, 0, K, opt);
    r.converged = r.converged && mm.converged;
    r.sup = std::max(r.sup, mm.value);
    r.h.push_back(mm.coeffs);
    if (!b.trivial()) r.sup_exact = std::max(r.sup_exact, model_op(g, S).norm);
    // F on the line from its values, then its analytic extension at the nodes.
    TrigPoly1 h(K);
    for (int k = 0; k <= K; ++k) h(k) = mm.coeffs[static_cast<std::size_t>(k)];
    const Eigen::VectorXcd F = gv - bv.cwiseProduct(sample(h, grid));
    const TrigPoly1 Fc = interpolate(F, grid / 2 - 1);
    for (int m = -Fc.N(); m < 0; ++m) r.analytic_leak = std::max(r.analytic_leak, std::abs(Fc(m)));
    for (cplx a : z) r.interp_error = std::max(r.interp_error, std::abs(eval_disk(Fc, a) - eval_disk(g, a)));
  }
  if (b.trivial()) r.sup_exact = 0.0;
  return r;
}

// ---------------------------------------------------------------------------
// Certificates.

struct PickConfig {
  int grid = 128;        ///< Pick families on T
  int K = 40;            ///< structured basis of K_{b1 b2}
  int lines = 32;        ///< lines for the interpolants
  int line_degree = 16;  ///< degree of h on each line
  double tol = 0.02;
  double eig_tol = 1e-9;
  double interp_tol = 1e-6;
  MinimaxOptions minimax;
};

struct PickCertificate {
  PickFamilies families;                 ///< (i)
  double gamma_norm = 0.0;               ///< (ii), on the basis with K
  double gamma_norm_half = 0.0;          ///< the same with K / 2
  bool holds_i = false, holds_ii = false, holds_iv = false;
  std::optional<LineInterpolant> F1, F2;  ///< (iv), built when (ii) holds or on request
  bool iv_implies_ii = true;   ///< (iv) => ||Gamma_phi|| <= sqrt 2 (1 + tol)
  bool ii_implies_iv = true;   ///< ||Gamma_phi|| <= 1 => F_j interpolate and ||F_j|| <= 1 + tol
  bool i_iff_iv = true;        ///< (i) and (iv) agree outside the tolerance band
};

/// ||Gamma_phi|| for phi = conj(b1 (x) b2) G on the structured basis of K_{b1 b2}.
inline double pick_gamma_norm(const PickSystem& sys, int K) {
  const BlaschkeProduct b1 = sys.b1(), b2 = sys.b2();
  const ModelSpace2 S(b1, b2, K);
  return restricted_norm(conjugate_blaschke_times(b1, b2, *sys.G), S);
}

inline PickCertificate certify_via_hankel(const PickSystem& sys, const PickConfig& cfg = {},
                                          bool build_interpolants = false) {
  sys.validate();
  require(sys.G.has_value() && sys.w.size() == sys.z.size(), "certify_via_hankel: needs nodes in D^2 and G");
  PickCertificate c;
  c.families = pick_matrices_2d(sys, cfg.grid, cfg.eig_tol);
  c.holds_i = c.families.psd;
  c.gamma_norm = pick_gamma_norm(sys, cfg.K);
  c.gamma_norm_half = pick_gamma_norm(sys, std::max(cfg.K / 2, 0));
  c.holds_ii = c.gamma_norm <= 1.0;
  if (c.holds_ii || build_interpolants) {
    c.F1 = line_interpolant(*sys.G, sys.b1(), Axis::x, cfg.lines, cfg.line_degree, cfg.minimax);
    c.F2 = line_interpolant(*sys.G, sys.b2(), Axis::y, cfg.lines, cfg.line_degree, cfg.minimax);
    c.holds_iv = std::max(c.F1->sup, c.F2->sup) <= 1.0 + cfg.tol;
  } else {
    c.holds_iv = c.holds_i;
  }
  if (c.holds_i || (c.F1 && c.holds_iv)) c.iv_implies_ii = c.gamma_norm <= std::sqrt(2.0) * (1.0 + cfg.tol);
  if (c.holds_ii) {
    c.ii_implies_iv = c.F1->interp_error <= cfg.interp_tol && c.F2->interp_error <= cfg.interp_tol &&
                      c.F1->sup <= 1.0 + cfg.tol && c.F2->sup <= 1.0 + cfg.tol;
  }
  if (c.F1) {
    const double line_sup = std::max(c.F1->sup_exact, c.F2->sup_exact);
    const bool clear = std::abs(line_sup - 1.0) > cfg.tol && std::abs(c.families.margin) > cfg.eig_tol;
    c.i_iff_iv = !clear || (c.holds_i == (line_sup <= 1.0));
  }
  return c;
}

// ---------------------------------------------------------------------------
// The one-variable bridge.

struct PickBridge1D {
  double min_eig = 0.0;
  double gamma_norm = 0.0;  ///< ||Gamma_{conj(b) G}|| from the SVD of its Hankel matrix
  double model_norm = 0.0;  ///< ||G(T_b)||
  bool psd = false;
  bool bounded = false;
};

/// Pick matrix of (z_k, G(z_k)) against the Hankel matrix of conj(b) G. The
/// anti-analytic part of conj(b) G has finite extent E, so the matrix on [0, E - 1] is exact.
inline PickBridge1D pick_bridge_1d(const std::vector<cplx>& z, const TrigPoly1& G) {
  detail::require_distinct(z, "pick_bridge_1d");
  detail::require_analytic(G, "pick_bridge_1d");
  PickBridge1D r;
  std::vector<cplx> l;
  for (cplx a : z) l.push_back(eval_disk(G, a));
  const CMatrix P = detail::pick_kernel(z, l);
  r.min_eig = min_eigenvalue(P);
  r.psd = detail::psd_margin(P) >= -1e-9;
  const BlaschkeProduct b(z);
  const TrigPoly1 phi = project(multiply(conjugate(coeffs(b, detail::series_degree(b))), G), Sector::PminusX).trimmed();
  const int E = std::max(phi.N(), 1);
  r.gamma_norm = op_norm(build(phi, E - 1));
  r.model_norm = model_op(G, ModelSpace1(b)).norm;
  r.bounded = r.gamma_norm <= 1.0;
  return r;
}

}  // namespace nehari

#endif
