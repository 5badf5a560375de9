#ifndef NEHARI_BMO_HPP
#define NEHARI_BMO_HPP

// Small bmo, restricted BMO and rectangle oscillation on T^2.
//
// Every sup-norm distance is a discrete minimax problem on a G x G grid.
// A one-sided distance to H^2_x places no restriction on the y dependence
// of the approximant, so it decouples exactly into one-variable problems,
// one per grid line y = y_j.  The same holds for each half of the small
// bmo norm: phi = f + H_x g has independent unknowns on each line.
// Lines that are unimodular multiples of cyclic translates of an already
// solved line reuse its result, and a symmetric phi reuses the x result
// for the y axis.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "fourier.hpp"
#include "linalg.hpp"
#include "minimax.hpp"

namespace nehari {

/// One axis of a slice-wise minimax computation.
struct AxisResult {
  double value = 0.0;
  double lower_bound = 0.0;
  bool converged = true;
  long iterations = 0;
  int solved_lines = 0;
  Eigen::MatrixXcd residual;  ///< first block residual on the grid
  Eigen::MatrixXcd second;    ///< second block residual, when present
};

struct BmoReport {
  double value = 0.0;
  double lower_bound = 0.0;
  bool converged = true;
  int grid = 0;  ///< grid-resolution tag
  int K = 0;
  std::map<std::string, double> parts;
  std::map<std::string, Eigen::MatrixXcd> decomposition;
};

namespace detail {

/// a = c roll(b, s) with |c| = 1, found by exhaustive shift search.
struct LineMatch {
  int shift = 0;
  cplx factor = 1.0;
};

inline std::optional<LineMatch> match_line(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, double tol) {
  const int G = static_cast<int>(a.size());
  Eigen::Index i0 = 0;
  b.cwiseAbs().maxCoeff(&i0);
  if (std::abs(b(i0)) <= tol) return a.cwiseAbs().maxCoeff() <= tol ? std::optional<LineMatch>(LineMatch{}) : std::nullopt;
  for (int s = 0; s < G; ++s) {
    const cplx c = a(wrap(static_cast<int>(i0) + s, G)) / b(i0);
    if (std::abs(std::abs(c) - 1.0) > 1e-12) continue;
    bool ok = true;
    for (int i = 0; i < G && ok; ++i) ok = std::abs(a(i) - c * b(wrap(i - s, G))) <= tol;
    if (ok) return LineMatch{s, c / std::abs(c)};
  }
  return std::nullopt;
}

inline Eigen::VectorXcd roll(const Eigen::VectorXcd& v, int s) {
  const int G = static_cast<int>(v.size());
  Eigen::VectorXcd out(G);
  for (int i = 0; i < G; ++i) out(i) = v(wrap(i - s, G));
  return out;
}

using LineSolver = std::function<MinimaxResult<1>(const Eigen::VectorXcd&)>;

/// Solve every column of V with the line solver; column j is the line y = y_j.
/// The line problems are complex-linear and translation invariant, so a line
/// equal to c roll(b, s) with |c| = 1 for a solved line b reuses its result.
inline AxisResult solve_lines(const Eigen::MatrixXcd& V, const LineSolver& solve) {
  const int G = static_cast<int>(V.rows());
  AxisResult out;
  out.residual = Eigen::MatrixXcd::Zero(G, V.cols());
  const double scale = std::max(V.cwiseAbs().maxCoeff(), 1e-300);
  const double tol = 1e-13 * scale;
  struct Solved {
    Eigen::VectorXcd line;
    Eigen::VectorXd spectrum;  ///< |DFT|, invariant under the reuse maps
    MinimaxResult<1> result;
  };
  std::vector<Solved> solved;
  bool have_second = false;
  for (Eigen::Index j = 0; j < V.cols(); ++j) {
    const Eigen::VectorXcd line = V.col(j);
    Eigen::MatrixXcd f = line;
    fft_columns(f, true);
    const Eigen::VectorXd spec = f.col(0).cwiseAbs();
    MinimaxResult<1> r;
    bool reused = false;
    for (const auto& prev : solved) {
      if ((spec - prev.spectrum).cwiseAbs().maxCoeff() > 1e3 * tol * G) continue;
      if (const auto m = match_line(line, prev.line, tol)) {
        r = prev.result;
        for (auto& res : r.residuals) res = m->factor * roll(res, m->shift);
        r.iterations = 0;
        reused = true;
        break;
      }
    }
    if (!reused) {
      r = solve(line);
      ++out.solved_lines;
      solved.push_back({line, spec, r});
    }
    out.value = std::max(out.value, r.value);
    out.lower_bound = std::max(out.lower_bound, r.lower_bound);
    out.converged = out.converged && r.converged;
    out.iterations += r.iterations;
    out.residual.col(j) = r.residuals[0];
    if (r.residuals.size() > 1) {
      if (!have_second) {
        out.second = Eigen::MatrixXcd::Zero(G, V.cols());
        have_second = true;
      }
      out.second.col(j) = r.residuals[1];
    }
  }
  return out;
}

inline AxisResult transpose_result(AxisResult r) {
  r.residual.transposeInPlace();
  if (r.second.size()) r.second.transposeInPlace();
  return r;
}

inline bool is_symmetric(const Eigen::MatrixXcd& V) {
  const double tol = 1e-13 * std::max(V.cwiseAbs().maxCoeff(), 1e-300);
  return (V - V.transpose()).cwiseAbs().maxCoeff() <= tol;
}

/// Apply a per-line computation along x (lines y = const) and along y.
inline std::pair<AxisResult, AxisResult> both_axes(const Eigen::MatrixXcd& V, const LineSolver& s) {
  AxisResult ax = solve_lines(V, s);
  if (is_symmetric(V)) return {ax, transpose_result(ax)};
  AxisResult ay = transpose_result(solve_lines(V.transpose(), s));
  return {ax, ay};
}

}  // namespace detail

/// inf over h in H^2_axis of the grid max |phi - h|; approximants are
/// analytic of degree <= K along the axis and arbitrary on the other axis.
inline AxisResult one_sided_distance(const Eigen::MatrixXcd& V, Axis axis, int K,
                                     const MinimaxOptions& opt = {}) {
  const detail::LineSolver s = [&](const Eigen::VectorXcd& line) {
    return minimax_span_1d(line, 0, K, opt);
  };
  if (axis == Axis::x) return detail::solve_lines(V, s);
  return detail::transpose_result(detail::solve_lines(V.transpose(), s));
}

/// inf over anti-analytic polynomials h of box degree <= K of the grid max |phi - h|.
inline MinimaxResult<2> perp_distance(const TrigPoly2& phi, int K, int G,
                                      const MinimaxOptions& opt = {}) {
  const TrigPoly2 target = project(phi, Sector::Pfull);
  if (target.is_zero()) {
    MinimaxResult<2> r;
    r.residuals.push_back(Eigen::MatrixXcd::Zero(G, G));
    return r;
  }
  std::vector<std::array<int, 2>> f;
  for (int m = -K; m <= K; ++m)
    for (int n = -K; n <= K; ++n)
      if (m < 0 || n < 0) f.push_back({m, n});
  MinimaxBlock<2> b{sample(target, G), std::vector<cplx>(f.size(), 1.0)};
  return complex_minimax<2>({b}, f, opt);
}

/// Restricted BMO norm: the max of the distances to H^2_x, H^2_y and H^2-perp.
inline BmoReport bmor_norm(const TrigPoly2& phi, int K, int G, const MinimaxOptions& opt = {}) {
  require(K >= phi.N(), "bmor_norm: approximation degree K must be at least N");
  require(G >= 4 * phi.N() + 4, "bmor_norm: grid violates G >= 4N + 4");
  const Eigen::MatrixXcd V = sample(phi, G);
  const detail::LineSolver s = [&](const Eigen::VectorXcd& line) {
    return minimax_span_1d(line, 0, K, opt);
  };
  auto [ax, ay] = detail::both_axes(V, s);
  const MinimaxResult<2> perp = perp_distance(phi, K, G, opt);
  BmoReport rep;
  rep.grid = G;
  rep.K = K;
  rep.parts = {{"dist_x", ax.value}, {"dist_y", ay.value}, {"dist_perp", perp.value}};
  rep.value = std::max({ax.value, ay.value, perp.value});
  rep.lower_bound = std::max({ax.lower_bound, ay.lower_bound, perp.lower_bound});
  rep.converged = ax.converged && ay.converged && perp.converged;
  rep.decomposition["phi1"] = ax.residual;
  rep.decomposition["phi2"] = ay.residual;
  rep.decomposition["phi0"] = V - (sample(project(phi, Sector::Pfull), G) - perp.residuals[0]);
  return rep;
}

/// max of the two one-sided distances of grid values; the third BMOr
/// distance vanishes for anti-analytic symbols.
inline BmoReport bmor_one_sided(const Eigen::MatrixXcd& V, int K, const MinimaxOptions& opt = {}) {
  const detail::LineSolver s = [&](const Eigen::VectorXcd& line) {
    return minimax_span_1d(line, 0, K, opt);
  };
  auto [ax, ay] = detail::both_axes(V, s);
  BmoReport rep;
  rep.grid = static_cast<int>(V.rows());
  rep.K = K;
  rep.parts = {{"dist_x", ax.value}, {"dist_y", ay.value}, {"dist_perp", 0.0}};
  rep.value = std::max(ax.value, ay.value);
  rep.lower_bound = std::max(ax.lower_bound, ay.lower_bound);
  rep.converged = ax.converged && ay.converged;
  rep.decomposition["phi1"] = ax.residual;
  rep.decomposition["phi2"] = ay.residual;
  return rep;
}

/// Line problem of the small bmo norm: min over g of degree <= K of
/// max(|line - H g|, |g|) on the grid.
inline MinimaxResult<1> bmo_line(const Eigen::VectorXcd& line, int K, const MinimaxOptions& opt = {}) {
  std::vector<std::array<int, 1>> f;
  std::vector<cplx> hb, gb;
  for (int k = -K; k <= K; ++k) {
    f.push_back({k});
    hb.push_back(k >= 0 ? 1.0 : -1.0);
    gb.push_back(-1.0);
  }
  const MinimaxBlock<1> b1{line, hb};
  const MinimaxBlock<1> b2{Eigen::VectorXcd::Zero(line.size()), gb};
  return complex_minimax<1>({b1, b2}, f, opt);
}

/// Small bmo norm: the max over both axes of
/// inf { max(|f|, |g|) : phi = f + H_axis g } on the grid.
///
/// The two decompositions have disjoint unknowns, so the joint infimum is
/// the max of the two separate ones; the Lemma-type compatibility
/// conditions then hold automatically and are reported as residuals.
inline BmoReport bmo_small_norm(const TrigPoly2& phi, int K, int G, const MinimaxOptions& opt = {}) {
  require(K >= phi.N(), "bmo_small_norm: approximation degree K must be at least N");
  require(G >= 4 * phi.N() + 4, "bmo_small_norm: grid violates G >= 4N + 4");
  const Eigen::MatrixXcd V = sample(phi, G);
  const detail::LineSolver s = [&](const Eigen::VectorXcd& line) { return bmo_line(line, K, opt); };
  auto [ax, ay] = detail::both_axes(V, s);
  BmoReport rep;
  rep.grid = G;
  rep.K = K;
  rep.value = std::max(ax.value, ay.value);
  rep.lower_bound = std::max(ax.lower_bound, ay.lower_bound);
  rep.converged = ax.converged && ay.converged;
  rep.parts = {{"axis_x", ax.value}, {"axis_y", ay.value}};
  rep.decomposition["f1"] = ax.residual;
  rep.decomposition["g1"] = ax.second;
  rep.decomposition["f2"] = ay.residual;
  rep.decomposition["g2"] = ay.second;

  // f_j + g_j agree with phi after P_x P_y, since H = 2P - I.
  const int B = (G - 1) / 2;
  const TrigPoly2 s1 = project(interpolate(Eigen::MatrixXcd(ax.residual + ax.second), B), Sector::Pfull);
  const TrigPoly2 s2 = project(interpolate(Eigen::MatrixXcd(ay.residual + ay.second), B), Sector::Pfull);
  const TrigPoly2 p0 = project(phi, Sector::Pfull);
  double c = 0.0;
  for (const TrigPoly2& d : {s1 - s2, s1 - p0})
    for (cplx v : d.data()) c = std::max(c, std::abs(v));
  rep.parts["constraint_residual"] = c;
  return rep;
}

// ---------------------------------------------------------------------------
// Rectangle mean oscillation.

struct Interval {
  int start = 0;
  int length = 0;
};

/// Dyadic intervals of [0, G): the whole range and recursive halves.
inline std::vector<Interval> dyadic_intervals(int G) {
  std::vector<Interval> out;
  std::vector<Interval> stack{{0, G}};
  while (!stack.empty()) {
    const Interval I = stack.back();
    stack.pop_back();
    out.push_back(I);
    if (I.length >= 2) {
      const int h = I.length / 2;
      stack.push_back({I.start, h});
      stack.push_back({I.start + h, I.length - h});
    }
  }
  return out;
}

struct OscillationReport {
  double value = 0.0;
  Interval I, J;  ///< maximizing rectangle
};

/// max over dyadic rectangles R of (1/|R|) sum_R |phi - phi_R|.
inline OscillationReport rect_mean_osc(const Eigen::MatrixXcd& V) {
  const int G = static_cast<int>(V.rows());
  require(V.cols() == G, "rect_mean_osc: grid must be square");
  const auto D = dyadic_intervals(G);
  OscillationReport out;
  for (const auto& I : D)
    for (const auto& J : D) {
      const auto R = V.block(I.start, J.start, I.length, J.length);
      const double area = static_cast<double>(I.length) * J.length;
      const cplx mean = R.sum() / area;
      const double osc = (R.array() - mean).abs().sum() / area;
      if (osc > out.value) out = {osc, I, J};
    }
  return out;
}

// ---------------------------------------------------------------------------
// Gallery of examples separating the norms.

enum class GalleryKind { prop12a, prop12b, prop12c, prop13 };

struct GalleryExample {
  GalleryKind kind;
  int N = 0;
  TrigPoly2 phi;
  std::map<std::string, double> metadata;
};

/// Square wave sign(sin t) truncated to [-N, N]: coefficients 2/(i pi k), k odd.
inline TrigPoly1 square_wave(int N) {
  TrigPoly1 v(N);
  for (int k = -N; k <= N; ++k)
    if (k % 2 != 0) v(k) = 2.0 / (I * std::numbers::pi * static_cast<double>(k));
  return v;
}

/// Fejer kernel of order N: positive with unit L^1 norm.
inline TrigPoly1 fejer_kernel(int N) {
  TrigPoly1 v(N);
  for (int k = -N; k <= N; ++k) v(k) = 1.0 - std::abs(k) / static_cast<double>(N + 1);
  return v;
}

inline GalleryExample gallery(GalleryKind kind, int N) {
  require(N >= 1, "gallery: N must be positive");
  GalleryExample ex{kind, N, TrigPoly2(N), {}};
  const TrigPoly1 e1 = TrigPoly1::monomial(1);
  switch (kind) {
    case GalleryKind::prop12a: {
      // phi(x, y) = Hv(x - y) = H_x g with g(x, y) = v(x - y).
      const TrigPoly1 v = square_wave(N);
      for (int k = -N; k <= N; ++k) ex.phi(k, -k) = (k >= 0 ? 1.0 : -1.0) * v(k);
      ex.metadata["sup_v"] = sup_norm(v);
      ex.metadata["sup_Hv"] = sup_norm(hilbert(v));
      break;
    }
    case GalleryKind::prop12b: {
      // phi = (I-P)v(x) h(y) + h(x) (I-P)v(y) with h = e^{it}.
      const TrigPoly1 w = project(square_wave(N), Sector::PminusX);
      ex.phi = (outer(w, e1) + outer(e1, w)).resized(N);
      ex.metadata["sup_v"] = sup_norm(square_wave(N));
      ex.metadata["sup_w"] = sup_norm(w);
      break;
    }
    case GalleryKind::prop12c: {
      // phi = H_y psi_2 with psi_2(x, y) = e^{-ix} v(y).
      const TrigPoly1 v = square_wave(N);
      ex.phi = outer(TrigPoly1::monomial(-1), hilbert(v)).resized(N);
      ex.metadata["sup_psi2"] = sup_norm(v);
      break;
    }
    case GalleryKind::prop13: {
      // f = conj(u(x)) v(y) + v(x) conj(u(y)), u = e^{ix}, v Fejer.
      const TrigPoly1 v = fejer_kernel(N);
      const TrigPoly1 ub = TrigPoly1::monomial(-1);
      ex.phi = (outer(ub, v) + outer(v, ub)).resized(N);
      const TrigPoly1 w = project(v, Sector::PminusX);
      ex.metadata["norm1_v"] = norm1_grid(v, 16 * N + 16);
      ex.metadata["norm1_w"] = norm1_grid(w, 16 * N + 16);
      break;
    }
  }
  return ex;
}

inline std::string to_string(GalleryKind k) {
  switch (k) {
    case GalleryKind::prop12a: return "prop12a";
    case GalleryKind::prop12b: return "prop12b";
    case GalleryKind::prop12c: return "prop12c";
    case GalleryKind::prop13: return "prop13";
  }
  return "";
}

inline GalleryKind gallery_kind(const std::string& s) {
  if (s == "prop12a") return GalleryKind::prop12a;
  if (s == "prop12b") return GalleryKind::prop12b;
  if (s == "prop12c") return GalleryKind::prop12c;
  if (s == "prop13") return GalleryKind::prop13;
  throw ConfigError("gallery: unknown kind '" + s + "'");
}

/// ||P_{-x} P_{-y} f||_1 by grid quadrature, a lower bound for the
/// partition norm of the predual of BMOr.
inline double tri_norm_lower(const TrigPoly2& f, int G) {
  return norm1_grid(project(project(f, Sector::PminusX), Sector::PminusY), G);
}

inline double tri_norm_lower(const TrigPoly2& f) { return tri_norm_lower(f, 16 * f.N() + 16); }

/// Best constant M with int |Hf|^2 w <= M^2 int |f|^2 w over polynomials of
/// box [-N, N]^2, H = H_x H_y: sqrt of the top eigenvalue of (D W D, W).
inline double weighted_hilbert_norm(const Eigen::MatrixXd& w, int N) {
  const int G = static_cast<int>(w.rows());
  require(w.cols() == G, "weighted_hilbert_norm: grid must be square");
  require(G >= 4 * N + 4, "weighted_hilbert_norm: grid violates G >= 4N + 4");
  require(w.minCoeff() > 0.0, "weighted_hilbert_norm: weight must be strictly positive");
  Eigen::MatrixXcd wh = w.cast<cplx>();
  detail::fft2(wh, true);
  wh /= static_cast<double>(G) * G;
  const int side = 2 * N + 1;
  const Eigen::Index dim = static_cast<Eigen::Index>(side) * side;
  CMatrix W(dim, dim);
  Eigen::VectorXd d(dim);
  for (int a = -N; a <= N; ++a)
    for (int b = -N; b <= N; ++b) {
      const Eigen::Index k = (a + N) * side + (b + N);
      d(k) = (a >= 0 ? 1.0 : -1.0) * (b >= 0 ? 1.0 : -1.0);
      for (int c = -N; c <= N; ++c)
        for (int e = -N; e <= N; ++e) {
          const Eigen::Index l = (c + N) * side + (e + N);
          // <w e_l, e_k> = w^(k - l)
          W(k, l) = wh(detail::wrap(a - c, G), detail::wrap(b - e, G));
        }
    }
  const CMatrix DWD = d.asDiagonal() * W * d.asDiagonal();
  return std::sqrt(std::max(0.0, generalized_max_eigenvalue(DWD, W, 1e14)));
}

}  // namespace nehari

#endif
