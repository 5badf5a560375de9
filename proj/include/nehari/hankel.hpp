#ifndef NEHARI_HANKEL_HPP
#define NEHARI_HANKEL_HPP

// Big Hankel operators f -> (I - P)(phi f) from the analytic box [0, N]^D
// to the anti-analytic index set in [-M, M]^D, and the quantities built on
// them: norms, singular numbers, the Nehari distance, sigma numbers, the
// delta distance to BMOA plus finite type, and the one-sided decomposition.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "blaschke.hpp"
#include "bmo.hpp"
#include "errors.hpp"
#include "fourier.hpp"
#include "linalg.hpp"
#include "minimax.hpp"
#include "optimize.hpp"
#include "separable.hpp"

namespace nehari {

template <int D>
struct HankelOp {
  TrigPoly<D> symbol;
  int N = 0;
  int M = 0;
  std::vector<std::array<int, D>> dom;  ///< frequencies in [0, N]^D
  std::vector<std::array<int, D>> cod;  ///< frequencies in [-M, M]^D with a negative entry
  CMatrix matrix;                       ///< matrix(j, k) = symbol^(cod[j] - dom[k])
};

/// Hankel matrix of phi; M must cover every image frequency.
template <int D>
HankelOp<D> build(const TrigPoly<D>& phi, int N, int M) {
  require(N >= 0, "build: negative truncation");
  const int E = phi.extent();
  if (M < N + E)
    throw ConfigError("build: codomain box M = " + std::to_string(M) + " leaks images; need M >= " +
                      std::to_string(N + E));
  HankelOp<D> H{phi, N, M, {}, {}, {}};
  if constexpr (D == 1) {
    for (int k = 0; k <= N; ++k) H.dom.push_back({k});
    for (int j = -M; j < 0; ++j) H.cod.push_back({j});
  } else {
    for (int a = 0; a <= N; ++a)
      for (int b = 0; b <= N; ++b) H.dom.push_back({a, b});
    for (int a = -M; a <= M; ++a)
      for (int b = -M; b <= M; ++b)
        if (a < 0 || b < 0) H.cod.push_back({a, b});
  }
  H.matrix = CMatrix::Zero(static_cast<Eigen::Index>(H.cod.size()),
                           static_cast<Eigen::Index>(H.dom.size()));
  for (std::size_t j = 0; j < H.cod.size(); ++j)
    for (std::size_t k = 0; k < H.dom.size(); ++k) {
      const auto& c = H.cod[j];
      const auto& d = H.dom[k];
      if constexpr (D == 1)
        H.matrix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = phi.coeff(c[0] - d[0]);
      else
        H.matrix(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
            phi.coeff(c[0] - d[0], c[1] - d[1]);
    }
  return H;
}

template <int D>
HankelOp<D> build(const TrigPoly<D>& phi, int N) {
  return build(phi, N, N + phi.extent());
}

template <int D>
double op_norm(const HankelOp<D>& H) {
  const auto s = singular_values(H.matrix);
  return s.empty() ? 0.0 : s.front();
}

/// s_0 >= s_1 >= ... >= s_{count-1}, padded with zeros beyond the rank.
template <int D>
std::vector<double> singular_numbers(const HankelOp<D>& H, int count) {
  auto s = singular_values(H.matrix);
  s.resize(static_cast<std::size_t>(count), 0.0);
  return s;
}

/// Gamma_phi f = (I - P)(phi f).
template <int D>
TrigPoly<D> hankel_apply(const TrigPoly<D>& phi, const TrigPoly<D>& f) {
  return project(multiply(phi, f), Sector::IminusPfull);
}

/// The anti-analytic symbol Gamma 1 read off column k = 0.
template <int D>
TrigPoly<D> gamma_one(const HankelOp<D>& H) {
  TrigPoly<D> out(H.M);
  for (std::size_t j = 0; j < H.cod.size(); ++j) {
    const cplx v = H.matrix(static_cast<Eigen::Index>(j), 0);
    if constexpr (D == 1)
      out(H.cod[j][0]) = v;
    else
      out(H.cod[j][0], H.cod[j][1]) = v;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Nehari distance in one variable.

struct NehariResult {
  double value = 0.0;
  double lower_bound = 0.0;
  bool converged = true;
  int iterations = 0;
  TrigPoly1 approximant;  ///< analytic, degree <= K
};

/// Grid minimax distance from phi to analytic polynomials of degree <= K.
inline NehariResult nehari_distance_1d(const TrigPoly1& phi, int K, int G,
                                       const MinimaxOptions& opt = {}) {
  require(K >= phi.N(), "nehari_distance_1d: K must be at least N");
  require(G >= 4 * phi.N() + 4, "nehari_distance_1d: grid violates G >= 4N + 4");
  const auto r = minimax_span_1d(sample(phi, G), 0, K, opt);
  NehariResult out{r.value, r.lower_bound, r.converged, r.iterations, TrigPoly1(K)};
  for (int k = 0; k <= K; ++k) out.approximant(k) = r.coeffs[static_cast<std::size_t>(k)];
  return out;
}

// ---------------------------------------------------------------------------
// Separable symbols from coefficient arrays.

/// Low-rank product decomposition of a 2D symbol from the SVD of its
/// coefficient array; singular values below rel * s_max are dropped.
inline SeparableSymbol separate_lowrank(const TrigPoly2& phi, double rel = 1e-15) {
  const int N = phi.N(), s = phi.side();
  CMatrix C(s, s);
  for (int m = -N; m <= N; ++m)
    for (int n = -N; n <= N; ++n) C(m + N, n + N) = phi(m, n);
  SeparableSymbol out;
  if (C.cwiseAbs().maxCoeff() == 0.0) return out;
  int rows = 0;
  for (int m = 0; m < s; ++m) rows += C.row(m).cwiseAbs().maxCoeff() > 0.0;
  Eigen::JacobiSVD<CMatrix> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  while (rank < sv.size() && sv(rank) > rel * sv(0)) ++rank;
  if (rows <= rank) return separate(phi);
  for (int r = 0; r < rank; ++r) {
    TrigPoly1 u(N), v(N);
    for (int k = -N; k <= N; ++k) {
      u(k) = sv(r) * svd.matrixU()(k + N, r);
      v(k) = std::conj(svd.matrixV()(k + N, r));
    }
    out.terms.push_back({u, v});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gram matrices of Gamma_{b phi} for b = b1 (x) b2.
//
// |b1| = 1 on T, so the all-j brackets of b1 u_r and b1 u_s equal those of
// u_r and u_s.  The j < 0 brackets involve only negative frequencies of
// b1 u_r, which use the first E coefficients of b1, E being the negative
// extent of u_r.  Both facts are exact.

namespace detail {

inline int negative_extent(const TrigPoly1& f) {
  int e = 0;
  for (int k = -f.N(); k < 0; ++k)
    if (f(k) != cplx{}) {
      e = -k;
      break;
    }
  return e;
}

/// Negative-frequency part of (power series beta) * u.
inline TrigPoly1 negative_part_product(const std::vector<cplx>& beta, const TrigPoly1& u) {
  const int E = negative_extent(u);
  TrigPoly1 out(E);
  for (int t = -E; t < 0; ++t) {
    cplx s{};
    for (int k = 0; k <= t + E && k < static_cast<int>(beta.size()); ++k) s += beta[static_cast<std::size_t>(k)] * u.coeff(t - k);
    out(t) = s;
  }
  return out;
}

/// out += kron(Um, Va) + kron(Ua - Um, Vm), skipping structural zeros.
inline void add_gram_pair(CMatrix& out, const CMatrix& Um, const CMatrix& Ua, const CMatrix& Vm,
                          const CMatrix& Va, Eigen::Index n) {
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index c = 0; c < n; ++c)
      if (Um(a, c) != cplx{}) out.block(a * n, c * n, n, n) += Um(a, c) * Va;
  const CMatrix Up = Ua - Um;
  for (Eigen::Index b = 0; b < n; ++b)
    for (Eigen::Index d = 0; d < n; ++d) {
      const cplx v = Vm(b, d);
      if (v == cplx{}) continue;
      for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index c = 0; c < n; ++c) out(a * n + b, c * n + d) += Up(a, c) * v;
    }
}

/// Banded Toeplitz matrix T[a, c] = t(a - c), |a - c| <= width.
struct Toeplitz {
  int width = 0;
  std::vector<cplx> t;
  cplx at(int k) const { return std::abs(k) <= width ? t[static_cast<std::size_t>(k + width)] : cplx{}; }
};

/// The all-j bracket of f and g as a Toeplitz matrix.
inline Toeplitz correlation(const TrigPoly1& f, const TrigPoly1& g) {
  constexpr int inf = 1 << 29;
  Toeplitz T{f.N() + g.N(), {}};
  for (int d = -T.width; d <= T.width; ++d) T.t.push_back(bracket_sum(f, g, d, 0, -inf, inf));
  return T;
}

/// out(a, b) += sum_d T[b, d] Y(a, d).
template <class Out>
void toeplitz_right(const Toeplitz& T, const CMatrix& Y, Out&& out) {
  const Eigen::Index n = Y.cols();
  for (Eigen::Index b = 0; b < n; ++b)
    for (Eigen::Index d = std::max<Eigen::Index>(0, b - T.width); d <= std::min<Eigen::Index>(n - 1, b + T.width); ++d)
      out.col(b) += T.at(static_cast<int>(b - d)) * Y.col(d);
}

/// out(a, b) += sum_c T[a, c] Z(c, b).
template <class Out>
void toeplitz_left(const Toeplitz& T, const CMatrix& Z, Out&& out) {
  const Eigen::Index n = Z.rows();
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index c = std::max<Eigen::Index>(0, a - T.width); c <= std::min<Eigen::Index>(n - 1, a + T.width); ++c)
      out.row(a) += T.at(static_cast<int>(a - c)) * Z.row(c);
}

}  // namespace detail

struct ArmNorm {
  double value = 0.0;
  int arm = 0;
  int iterations = 0;
  bool converged = true;
};

class BlaschkeGram {
 public:
  BlaschkeGram(SeparableSymbol phi, int N) : phi_(std::move(phi)), N_(N) {
    const std::size_t R = phi_.terms.size();
    Ua_.resize(R * R);
    Va_.resize(R * R);
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t s = 0; s < R; ++s) {
        Ua_[r * R + s] = bracket(phi_.terms[r].u, phi_.terms[s].u, N).all;
        Va_[r * R + s] = bracket(phi_.terms[r].v, phi_.terms[s].v, N).all;
      }
    for (const auto& t : phi_.terms) {
      Ex_ = std::max(Ex_, detail::negative_extent(t.u));
      Ey_ = std::max(Ey_, detail::negative_extent(t.v));
    }
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t s = 0; s < R; ++s) {
        Tu_.push_back(detail::correlation(phi_.terms[r].u, phi_.terms[s].u));
        Tv_.push_back(detail::correlation(phi_.terms[r].v, phi_.terms[s].v));
      }
  }

  int N() const { return N_; }
  const SeparableSymbol& symbol() const { return phi_; }

  CMatrix gram(const BlaschkeProduct& b1, const BlaschkeProduct& b2) const {
    const Eigen::Index n = N_ + 1;
    CMatrix out = CMatrix::Zero(n * n, n * n);
    const std::size_t R = phi_.terms.size();
    if (R == 0) return out;
    const auto bx = detail::blaschke_series(b1, std::max(Ex_, 1));
    const auto by = detail::blaschke_series(b2, std::max(Ey_, 1));
    std::vector<TrigPoly1> wu, wv;
    for (const auto& t : phi_.terms) {
      wu.push_back(detail::negative_part_product(bx, t.u));
      wv.push_back(detail::negative_part_product(by, t.v));
    }
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t s = 0; s < R; ++s) {
        const CMatrix Um = bracket(wu[r], wu[s], N_).minus;
        const CMatrix Vm = bracket(wv[r], wv[s], N_).minus;
        detail::add_gram_pair(out, Um, Ua_[r * R + s], Vm, Va_[r * R + s], n);
      }
    return hermitian_part(out);
  }

  double norm(const BlaschkeProduct& b1, const BlaschkeProduct& b2) const {
    if (phi_.terms.empty()) return 0.0;
    return std::sqrt(std::max(0.0, max_eigenvalue(gram(b1, b2))));
  }

  std::vector<double> singular_values(const BlaschkeProduct& b1, const BlaschkeProduct& b2) const {
    return singular_values_from_gram(gram(b1, b2));
  }

  /// ||Gamma_{(b1 (x) b2) phi}|| on H^2(T^2) with arms of length L.
  ///
  /// With Ex, Ey the negative extents of phi, every f supported in
  /// {a >= Ex, b >= Ey} lies in the kernel, so the Gram matrix lives on the
  /// L-shaped set {a < Ex or b < Ey}; its two arms are cut at length L.
  /// The arm cut is the only approximation and increases to the norm as L grows.
  ArmNorm arm_norm(const BlaschkeProduct& b1, const BlaschkeProduct& b2, int L) const {
    ArmNorm out;
    out.arm = L;
    const std::size_t R = phi_.terms.size();
    if (R == 0 || (Ex_ == 0 && Ey_ == 0)) return out;
    L = std::max({L, Ex_, Ey_});
    out.arm = L;
    const Eigen::Index n = L + 1;
    const auto bx = detail::blaschke_series(b1, std::max(Ex_, 1));
    const auto by = detail::blaschke_series(b2, std::max(Ey_, 1));
    std::vector<TrigPoly1> wu, wv;
    for (const auto& t : phi_.terms) {
      wu.push_back(detail::negative_part_product(bx, t.u));
      wv.push_back(detail::negative_part_product(by, t.v));
    }
    std::vector<CMatrix> Um(R * R), Vm(R * R);
    for (std::size_t r = 0; r < R; ++r)
      for (std::size_t s = 0; s < R; ++s) {
        if (Ex_ > 0) Um[r * R + s] = bracket(wu[r], wu[s], Ex_ - 1).minus;
        if (Ey_ > 0) Vm[r * R + s] = bracket(wv[r], wv[s], Ey_ - 1).minus;
      }
    std::vector<std::pair<Eigen::Index, Eigen::Index>> idx;
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = 0; b < n; ++b)
        if (a < Ex_ || b < Ey_) idx.push_back({a, b});
    CMatrix X = CMatrix::Zero(n, n), Y = CMatrix::Zero(n, n);
    auto apply = [&](const CVector& q) {
      for (std::size_t i = 0; i < idx.size(); ++i) X(idx[i].first, idx[i].second) = q(static_cast<Eigen::Index>(i));
      Y.setZero();
      for (std::size_t k = 0; k < R * R; ++k) {
        if (Ex_ > 0) {
          const CMatrix T = Um[k] * X.topRows(Ex_);
          detail::toeplitz_right(Tv_[k], T, Y.topRows(Ex_));
        }
        if (Ey_ > 0) {
          const CMatrix Z = X.leftCols(Ey_) * Vm[k].transpose();
          detail::toeplitz_left(Tu_[k], Z, Y.leftCols(Ey_));
          if (Ex_ > 0) Y.topLeftCorner(Ex_, Ey_) -= Um[k] * Z.topRows(Ex_);
        }
      }
      CVector w(static_cast<Eigen::Index>(idx.size()));
      for (std::size_t i = 0; i < idx.size(); ++i) w(static_cast<Eigen::Index>(i)) = Y(idx[i].first, idx[i].second);
      return w;
    };
    const auto lr = lanczos_max_eigenvalue(apply, static_cast<Eigen::Index>(idx.size()), 1e-12, 400);
    out.value = std::sqrt(std::max(0.0, lr.value));
    out.iterations = lr.iterations;
    out.converged = lr.converged;
    return out;
  }

 private:
  SeparableSymbol phi_;
  int N_;
  int Ex_ = 0, Ey_ = 0;
  std::vector<CMatrix> Ua_, Va_;
  std::vector<detail::Toeplitz> Tu_, Tv_;
};

/// ||Gamma_{(b1 (x) b2) phi}|| on the box [0, N]^2.
inline double hankel_norm_times(const SeparableSymbol& phi, const BlaschkeProduct& b1,
                                const BlaschkeProduct& b2, int N) {
  return BlaschkeGram(phi, N).norm(b1, b2);
}

// ---------------------------------------------------------------------------
// Sigma numbers.

struct SearchConfig {
  int restarts = 16;
  double init_radius = 0.7;
  double chart_radius = 0.95;
  std::uint64_t seed = 1;
  int evals_per_dim = 150;  ///< Nelder-Mead budget per chart coordinate
  int polish_rounds = 2;    ///< restarts of the simplex from the best point
  /// Arm length for re-evaluating the best candidates on H^2(T^2); 0 keeps
  /// the truncated value. The box [0, N]^2 underestimates the norm by O(N^-2).
  int arm = 192;
  int candidates = 3;  ///< best distinct search optima re-evaluated with arms
};

struct ZeroPair {
  std::vector<cplx> x;
  std::vector<cplx> y;
};

struct SigmaSearchReport {
  int m = 0, n = 0;
  double value = 0.0;  ///< best found, an upper bound on sigma_{mn}
  double s0 = 0.0;
  double value_truncated = 0.0;  ///< best value on the box [0, N]^2
  double s0_truncated = 0.0;
  double value_half_arm = 0.0;   ///< value at the returned zeros with arms of half length
  int arm = 0;
  ZeroPair zeros;
  std::vector<double> trace;  ///< best value per start
  std::vector<std::pair<double, ZeroPair>> optima;  ///< per start, ascending
  long evaluations = 0;
};

namespace detail {

inline std::uint64_t mix_seed(std::uint64_t seed, int m, int n, std::uint64_t salt) {
  std::uint64_t h = seed * 0x9E3779B97F4A7C15ULL + 0xBF58476D1CE4E5B9ULL * static_cast<std::uint64_t>(m + 1);
  h ^= 0x94D049BB133111EBULL * static_cast<std::uint64_t>(n + 7) + salt;
  h ^= h >> 31;
  return h;
}

/// Multi-start minimization of f over m zeros in x and n zeros in y.
template <class F>
SigmaSearchReport search_zeros(const F& f, int m, int n, const SearchConfig& cfg, std::uint64_t salt,
                               const std::vector<ZeroPair>& seeds) {
  SigmaSearchReport rep;
  rep.m = m;
  rep.n = n;
  const DiskChart chart{cfg.chart_radius};
  const std::size_t dim = 2 * static_cast<std::size_t>(m + n);
  auto objective = [&](const std::vector<double>& x) {
    ++rep.evaluations;
    return f(chart.decode(x, 0, static_cast<std::size_t>(m)),
             chart.decode(x, 2 * static_cast<std::size_t>(m), static_cast<std::size_t>(n)));
  };
  rep.value = f({}, {});
  ++rep.evaluations;
  if (dim == 0 || rep.value == 0.0) return rep;

  std::vector<ZeroPair> starts;
  for (const auto& s : seeds) {
    ZeroPair z = s;
    z.x.resize(static_cast<std::size_t>(m), cplx{});
    z.y.resize(static_cast<std::size_t>(n), cplx{});
    starts.push_back(z);
  }
  std::mt19937_64 rng(mix_seed(cfg.seed, m, n, salt));
  for (int r = 0; r < cfg.restarts; ++r) {
    ZeroPair z;
    for (int i = 0; i < m; ++i) z.x.push_back(uniform_in_disk(rng, cfg.init_radius));
    for (int i = 0; i < n; ++i) z.y.push_back(uniform_in_disk(rng, cfg.init_radius));
    starts.push_back(z);
  }
  NelderMeadOptions nm;
  nm.max_evals = cfg.evals_per_dim * static_cast<int>(dim);
  for (const auto& s : starts) {
    std::vector<double> x0;
    chart.encode(s.x, x0);
    chart.encode(s.y, x0);
    nm.initial_step = 0.5;
    auto res = nelder_mead(objective, x0, nm);
    for (int p = 0; p < cfg.polish_rounds; ++p) {
      nm.initial_step = p == 0 ? 0.1 : 0.02;
      auto again = nelder_mead(objective, res.x, nm);
      if (again.f <= res.f) res = again;
    }
    rep.trace.push_back(res.f);
    rep.optima.push_back({res.f, {chart.decode(res.x, 0, static_cast<std::size_t>(m)),
                                  chart.decode(res.x, 2 * static_cast<std::size_t>(m), static_cast<std::size_t>(n))}});
    if (res.f < rep.value) {
      rep.value = res.f;
      rep.zeros = {chart.decode(res.x, 0, static_cast<std::size_t>(m)),
                   chart.decode(res.x, 2 * static_cast<std::size_t>(m), static_cast<std::size_t>(n))};
    }
  }
  // Fewer factors are admissible: every seed is evaluated as given.
  for (const auto& s : seeds) {
    if (static_cast<int>(s.x.size()) > m || static_cast<int>(s.y.size()) > n) continue;
    const double v = f(s.x, s.y);
    ++rep.evaluations;
    if (v < rep.value) {
      rep.value = v;
      rep.zeros = s;
    }
  }
  std::stable_sort(rep.optima.begin(), rep.optima.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  return rep;
}

}  // namespace detail

/// Best-found upper bound on sigma_{mn}. The search runs on the box
/// [0, N]^2; the best candidates, the seeds and b = 1 are then re-evaluated
/// on L-shaped arms of length cfg.arm.
inline SigmaSearchReport sigma_numbers(const SeparableSymbol& phi, int m, int n, int N,
                                       const SearchConfig& cfg = {},
                                       const std::vector<ZeroPair>& seeds = {}) {
  require(m >= 0 && n >= 0, "sigma_numbers: negative factor counts");
  const BlaschkeGram G(phi, N);
  auto f = [&](const std::vector<cplx>& zx, const std::vector<cplx>& zy) {
    return G.norm(BlaschkeProduct(zx), BlaschkeProduct(zy));
  };
  auto rep = detail::search_zeros(f, m, n, cfg, 0x5167, seeds);
  rep.s0_truncated = G.norm({}, {});
  rep.value_truncated = rep.value;
  rep.s0 = rep.s0_truncated;
  if (cfg.arm <= 0 || rep.s0 == 0.0) {
    rep.value_half_arm = rep.value;
    return rep;
  }
  auto arm = [&](const ZeroPair& z, int L) {
    ++rep.evaluations;
    return G.arm_norm(BlaschkeProduct(z.x), BlaschkeProduct(z.y), L).value;
  };
  std::vector<ZeroPair> cands{rep.zeros, ZeroPair{}};
  for (std::size_t i = 0; i < rep.optima.size() && static_cast<int>(i) < cfg.candidates; ++i)
    cands.push_back(rep.optima[i].second);
  for (const auto& s : seeds)
    if (static_cast<int>(s.x.size()) <= m && static_cast<int>(s.y.size()) <= n) cands.push_back(s);
  rep.s0 = arm({}, cfg.arm);
  rep.arm = std::max(cfg.arm, N);
  rep.value = rep.s0;
  rep.zeros = {};
  for (std::size_t i = 0; i < cands.size(); ++i) {
    if (cands[i].x.empty() && cands[i].y.empty()) continue;
    const double v = arm(cands[i], cfg.arm);
    if (v < rep.value) {
      rep.value = v;
      rep.zeros = cands[i];
    }
  }
  rep.value_half_arm = arm(rep.zeros, std::max(cfg.arm / 2, 1));
  return rep;
}

inline SigmaSearchReport sigma_numbers(const TrigPoly2& phi, int m, int n, int N,
                                       const SearchConfig& cfg = {},
                                       const std::vector<ZeroPair>& seeds = {}) {
  return sigma_numbers(separate_lowrank(project(phi, Sector::IminusPfull)), m, n, N, cfg, seeds);
}

/// Table of sigma_{mn} for 0 <= m <= mmax, 0 <= n <= nmax. Each cell is
/// seeded with its lower neighbours' optima plus a zero at the origin, so
/// the table is nonincreasing along both axes.
inline std::vector<std::vector<SigmaSearchReport>> sigma_table(const SeparableSymbol& phi, int mmax,
                                                                int nmax, int N,
                                                                const SearchConfig& cfg = {}) {
  std::vector<std::vector<SigmaSearchReport>> T(static_cast<std::size_t>(mmax + 1),
                                                std::vector<SigmaSearchReport>(static_cast<std::size_t>(nmax + 1)));
  for (int m = 0; m <= mmax; ++m)
    for (int n = 0; n <= nmax; ++n) {
      std::vector<ZeroPair> seeds;
      if (m > 0) {
        const auto& p = T[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(n)];
        seeds.push_back(p.zeros);
        ZeroPair z = p.zeros;
        z.x.push_back(0.0);
        seeds.push_back(z);
      }
      if (n > 0) {
        const auto& p = T[static_cast<std::size_t>(m)][static_cast<std::size_t>(n - 1)];
        seeds.push_back(p.zeros);
        ZeroPair z = p.zeros;
        z.y.push_back(0.0);
        seeds.push_back(z);
      }
      T[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)] = sigma_numbers(phi, m, n, N, cfg, seeds);
    }
  return T;
}

// ---------------------------------------------------------------------------
// Finite-type symbols.

/// phi = (I - P)[conj(b1)(x) h2(x)] + (I - P)[conj(b2)(y) h1(y)], with the
/// Blaschke expansions certified to tol. The omitted P_x P_y part is analytic.
inline SeparableSymbol finite_type_separable(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                             const TrigPoly1& h1, const TrigPoly1& h2, double tol = 1e-13) {
  require(project(h1, Sector::PminusX).is_zero() && project(h2, Sector::PminusX).is_zero(),
          "finite_type_symbol: h1 and h2 must be analytic");
  SeparableSymbol s;
  const TrigPoly1 one = TrigPoly1::constant(1.0);
  if (!h2.is_zero()) {
    const TrigPoly1 cb1 = conjugate(coeffs(b1, required_degree(b1, tol), tol));
    s.terms.push_back({project(multiply(cb1, h2), Sector::PminusX).trimmed(), one});
  }
  if (!h1.is_zero()) {
    const TrigPoly1 cb2 = conjugate(coeffs(b2, required_degree(b2, tol), tol));
    s.terms.push_back({one, project(multiply(cb2, h1), Sector::PminusX).trimmed()});
  }
  return s;
}

inline TrigPoly2 finite_type_symbol(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                    const TrigPoly1& h1, const TrigPoly1& h2, double tol = 1e-13) {
  return finite_type_separable(b1, b2, h1, h2, tol).assemble();
}

// ---------------------------------------------------------------------------
// The one-sided decomposition.

struct DecompositionA {
  Eigen::MatrixXcd phi1;  ///< psi - h_x on the grid
  Eigen::MatrixXcd phi2;  ///< psi - h_y on the grid
  double norm1 = 0.0;
  double norm2 = 0.0;
  double gamma_norm = 0.0;       ///< ||Gamma|| on H^2(T^2), arms of length arm
  double gamma_truncated = 0.0;  ///< ||Gamma|| restricted to the box [0, N]^2
  int arm = 0;
  bool converged = true;
  bool bound_holds = true;  ///< max(norm1, norm2) <= gamma_norm (1 + tol)
  int grid = 0;
};

/// For psi = Gamma 1, the grid minimax distances to H^2_x and H^2_y with
/// their residuals phi_1, phi_2, compared with ||Gamma||.
inline DecompositionA theoremA_decompose(const HankelOp<2>& H, int K, int G, double tol = 0.02,
                                         const MinimaxOptions& opt = {}, int arm = 384) {
  const TrigPoly2 psi = project(H.symbol, Sector::IminusPfull);
  require(G >= 4 * psi.N() + 4, "theoremA_decompose: grid violates G >= 4N + 4");
  const auto rep = bmor_one_sided(sample(psi, G), std::max(K, psi.N()), opt);
  DecompositionA d;
  d.phi1 = rep.decomposition.at("phi1");
  d.phi2 = rep.decomposition.at("phi2");
  d.norm1 = rep.parts.at("dist_x");
  d.norm2 = rep.parts.at("dist_y");
  d.gamma_truncated = op_norm(H);
  const BlaschkeGram BG(separate_lowrank(psi), H.N);
  const ArmNorm an = BG.arm_norm({}, {}, std::max(arm, H.N));
  d.gamma_norm = std::max(an.value, d.gamma_truncated);
  d.arm = an.arm;
  d.converged = rep.converged && an.converged;
  d.bound_holds = std::max(d.norm1, d.norm2) <= d.gamma_norm * (1.0 + tol);
  d.grid = G;
  return d;
}

// ---------------------------------------------------------------------------
// Distance to BMOA plus finite type.
//
// For h in H^2 the distances of b phi - h to H^2_x and H^2_y do not depend
// on h, and h = P(b phi) removes the third one, so
//   delta = inf_b max(dist(b phi, H^2_x), dist(b phi, H^2_y)).
// Since |b2| = 1, dist(b phi(., y), H^2) depends on b1 alone, and the
// problem splits into an x search over b1 and a y search over b2.  On each
// line the distance equals the norm of a one-variable Hankel matrix whose
// symbol has finite anti-analytic extent, hence is computed exactly.

struct DeltaReport {
  int m = 0, n = 0;
  double value = 0.0;         ///< certified by slice minimax on the grid
  double value_search = 0.0;  ///< the same quantity from exact slice Hankel norms
  double dist_x = 0.0, dist_y = 0.0;
  ZeroPair zeros;
  double sigma = 0.0;
  bool sandwich_lower = true;  ///< sigma / sqrt(2) <= delta (1 + tol)
  bool sandwich_upper = true;  ///< delta <= sigma (1 + tol)
  bool converged = true;
  long evaluations = 0;
};

namespace detail {

/// sup over lines of the exact one-variable Hankel norm of the b-multiplied slices.
class SliceNehari {
 public:
  SliceNehari(const SeparableSymbol& phi, Axis axis, int lines) {
    for (const auto& t : phi.terms) {
      along_.push_back(axis == Axis::x ? t.u : t.v);
      across_.push_back(axis == Axis::x ? t.v : t.u);
    }
    for (const auto& f : along_) E_ = std::max(E_, negative_extent(f));
    weights_.resize(static_cast<std::size_t>(lines));
    for (int j = 0; j < lines; ++j) {
      const double y = two_pi * j / lines;
      for (const auto& g : across_) weights_[static_cast<std::size_t>(j)].push_back(g.eval(y));
    }
  }

  double operator()(const BlaschkeProduct& b) const {
    if (E_ == 0) return 0.0;
    const auto beta = blaschke_series(b, E_);
    std::vector<TrigPoly1> w;
    for (const auto& f : along_) w.push_back(negative_part_product(beta, f).resized(E_));
    double best = 0.0;
    CMatrix A(E_, E_);
    for (const auto& c : weights_) {
      A.setZero();
      for (std::size_t r = 0; r < w.size(); ++r)
        for (int j = 0; j < E_; ++j)
          for (int k = 0; k < E_; ++k) A(j, k) += c[r] * w[r].coeff(-1 - j - k);
      best = std::max(best, std::sqrt(std::max(0.0, max_eigenvalue(A.adjoint() * A))));
    }
    return best;
  }

 private:
  std::vector<TrigPoly1> along_, across_;
  std::vector<std::vector<cplx>> weights_;
  int E_ = 0;
};

}  // namespace detail

struct DeltaConfig {
  SearchConfig search;
  int lines = 256;  ///< grid of lines for the sup over the transverse variable
  int K = 0;        ///< slice minimax degree; 0 selects 4N
  double tol = 0.03;
  MinimaxOptions minimax;
};

/// delta(phi, BMOA + R_{mn}) with the sandwich check against sigma.
/// sigma < 0 requests a sigma search with the delta optimum as a seed.
inline DeltaReport aak_delta(const SeparableSymbol& phi, int m, int n, int N, const DeltaConfig& cfg = {},
                             double sigma = -1.0, const std::vector<ZeroPair>& sigma_seeds = {}) {
  DeltaReport rep;
  rep.m = m;
  rep.n = n;
  const detail::SliceNehari X(phi, Axis::x, cfg.lines), Y(phi, Axis::y, cfg.lines);
  auto fx = [&](const std::vector<cplx>& zx, const std::vector<cplx>&) { return X(BlaschkeProduct(zx)); };
  auto fy = [&](const std::vector<cplx>&, const std::vector<cplx>& zy) { return Y(BlaschkeProduct(zy)); };
  std::vector<ZeroPair> seeds_x, seeds_y;
  for (const auto& s : sigma_seeds) {
    seeds_x.push_back({s.x, {}});
    seeds_y.push_back({{}, s.y});
  }
  const auto rx = detail::search_zeros(fx, m, 0, cfg.search, 0xD17A, seeds_x);
  const auto ry = detail::search_zeros(fy, 0, n, cfg.search, 0xD17B, seeds_y);
  rep.zeros = {rx.zeros.x, ry.zeros.y};
  rep.evaluations = rx.evaluations + ry.evaluations;
  rep.value_search = std::max(rx.value, ry.value);

  // Certify with slice minimax on grid values of b phi.
  const BlaschkeProduct b1(rep.zeros.x), b2(rep.zeros.y);
  int Nphi = 0;
  for (const auto& t : phi.terms) Nphi = std::max({Nphi, t.u.N(), t.v.N()});
  const int K = cfg.K > 0 ? cfg.K : std::max(4 * N, Nphi);
  const int G = 4 * K + 4;
  const Eigen::MatrixXcd V = blaschke_values(b1, G).asDiagonal() * phi.values(G) *
                             blaschke_values(b2, G).asDiagonal();
  const auto bm = bmor_one_sided(V, K, cfg.minimax);
  rep.dist_x = bm.parts.at("dist_x");
  rep.dist_y = bm.parts.at("dist_y");
  rep.value = bm.value;
  rep.converged = bm.converged;

  if (sigma < 0.0) {
    std::vector<ZeroPair> seeds = sigma_seeds;
    seeds.push_back(rep.zeros);
    sigma = sigma_numbers(phi, m, n, N, cfg.search, seeds).value;
  }
  rep.sigma = sigma;
  rep.sandwich_lower = sigma / std::sqrt(2.0) <= rep.value * (1.0 + cfg.tol) + 1e-12;
  rep.sandwich_upper = rep.value <= sigma * (1.0 + cfg.tol) + 1e-12;
  return rep;
}

}  // namespace nehari

#endif
