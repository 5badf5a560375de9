#ifndef NEHARI_MODEL_HPP
#define NEHARI_MODEL_HPP

// Model subspaces K_b = H^2 (-) b H^2 on T and K_{b1 b2} on T^2, their
// projectors, the model operator G(T_b) and multipliers in K_{b1 b2}.
//
// On T^2 the space K_{b1 b2} = K^0 (+) K^1 (+) K^2 is spanned by
//   K^0: xi_i(x) eta_j(y),  K^1: xi_i(x) b2(y) y^l,  K^2: b1(x) x^l eta_j(y),
// with xi_i, eta_j the eigenfunctions b/(. - z) of the compressed shifts.
// The K^1 and K^2 directions are cut at l <= K.  Every basis member is a
// product of one-variable functions, so inner products on T^2 factor into
// one-variable inner products of truncated power series.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blaschke.hpp"
#include "errors.hpp"
#include "fourier.hpp"
#include "hankel.hpp"
#include "linalg.hpp"
#include "separable.hpp"

namespace nehari {

inline constexpr double kSeriesTol = 1e-15;

namespace detail {

inline void require_analytic(const TrigPoly2& f, const char* who) {
  require(project(f, Sector::IminusPfull).is_zero(), std::string(who) + ": f must be analytic");
}

inline void require_analytic(const TrigPoly1& f, const char* who) {
  require(project(f, Sector::PminusX).is_zero(), std::string(who) + ": f must be analytic");
}

/// Degree beyond which the coefficients of b and of every psi_{z_k} sum to below tol.
inline int series_degree(const BlaschkeProduct& b, double tol = kSeriesTol) {
  if (b.trivial()) return 0;
  const double r = b.max_modulus();
  int n = required_degree(b, tol);
  if (r > 0.0) n = std::max(n, static_cast<int>(std::ceil(std::log(tol * (1.0 - r)) / std::log(r))) + 1);
  return n;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Projectors.

/// P_b f = b (I - P) conj(b) f, coefficients 0..N.
inline TrigPoly1 project_Kb(const TrigPoly1& f, const BlaschkeProduct& b, int N, double tol = kSeriesTol) {
  detail::require_analytic(f, "project_Kb");
  if (b.trivial()) return TrigPoly1(N);
  const int D = detail::series_degree(b, tol) + f.N() + N;
  const TrigPoly1 bc = coeffs(b, D);
  const TrigPoly1 g = project(multiply(conjugate(bc), f), Sector::PminusX);
  return project(multiply(bc, g), Sector::Px).resized(N);
}

/// P_{z zeta} f = c_z f(z, y) phi_z(x) + c_zeta f(x, zeta) phi_zeta(y)
///                - c_z c_zeta f(z, zeta) phi_z(x) phi_zeta(y), coefficients in [0, N]^2.
inline TrigPoly2 project_Kzz(const TrigPoly2& f, cplx z, cplx zeta, int N) {
  detail::require_analytic(f, "project_Kzz");
  const double cz = kernel_constant(z), cw = kernel_constant(zeta);
  const TrigPoly1 kz = kernel(z, N).coeffs, kw = kernel(zeta, N).coeffs;
  const TrigPoly1 fz = project(slice_at_x(f, z), Sector::Px).resized(N);
  const TrigPoly1 fw = project(slice_at_y(f, zeta), Sector::Px).resized(N);
  TrigPoly2 out = cz * outer(kz, fz) + cw * outer(fw, kw) - (cz * cw * eval_bidisk(f, z, zeta)) * outer(kz, kw);
  return out.resized(N);
}

namespace detail {

/// (u (x) v) f on the window [lo, hi]^2, one convolution per axis; zero outside.
inline TrigPoly2 multiply_separable(const TrigPoly1& u, const TrigPoly1& v, const TrigPoly2& f, int lo, int hi) {
  const int Nf = f.N(), W = hi - lo + 1;
  CMatrix tmp = CMatrix::Zero(2 * Nf + 1, W);
  for (int a = -Nf; a <= Nf; ++a)
    for (int b = -Nf; b <= Nf; ++b) {
      const cplx c = f(a, b);
      if (c == cplx{}) continue;
      for (int n = std::max(lo, b - v.N()); n <= std::min(hi, b + v.N()); ++n) tmp(a + Nf, n - lo) += v(n - b) * c;
    }
  TrigPoly2 out(std::max(std::abs(lo), std::abs(hi)));
  for (int a = -Nf; a <= Nf; ++a)
    for (int m = std::max(lo, a - u.N()); m <= std::min(hi, a + u.N()); ++m) {
      const cplx c = u(m - a);
      if (c == cplx{}) continue;
      for (int n = lo; n <= hi; ++n) out(m, n) += c * tmp(a + Nf, n - lo);
    }
  return out;
}

}  // namespace detail

/// The same projector as (b_z (x) b_zeta)(I - P)(conj(b_z) (x) conj(b_zeta)) f.
inline TrigPoly2 project_Kzz_tensor(const TrigPoly2& f, cplx z, cplx zeta, int N, double tol = kSeriesTol) {
  detail::require_analytic(f, "project_Kzz_tensor");
  const BlaschkeProduct bz({z}), bw({zeta});
  const int D = std::max(detail::series_degree(bz, tol), detail::series_degree(bw, tol)) + f.N() + N;
  const TrigPoly1 cz = coeffs(bz, D), cw = coeffs(bw, D);
  const TrigPoly2 g = project(detail::multiply_separable(conjugate(cz), conjugate(cw), f, -D, f.N()), Sector::IminusPfull);
  return detail::multiply_separable(cz, cw, g, 0, N).resized(N);
}

/// ||P_{z zeta} f||^2 = c_z^2 int |f(z, y)|^2 dy + c_zeta^2 int |f(x, zeta)|^2 dx
///                       - c_z^2 c_zeta^2 |f(z, zeta)|^2.
inline double norm_Kzz_closed(const TrigPoly2& f, cplx z, cplx zeta) {
  detail::require_analytic(f, "norm_Kzz_closed");
  const double cz2 = 1.0 - std::norm(z), cw2 = 1.0 - std::norm(zeta);
  const double a = std::pow(norm2(slice_at_x(f, z)), 2), b = std::pow(norm2(slice_at_y(f, zeta)), 2);
  return cz2 * a + cw2 * b - cz2 * cw2 * std::norm(eval_bidisk(f, z, zeta));
}

// ---------------------------------------------------------------------------
// One variable.

struct ModelSpace1 {
  BlaschkeProduct b;
  int N = 0;                     ///< series degree of the basis
  std::vector<TrigPoly1> basis;  ///< psi_{z_k}

  explicit ModelSpace1(BlaschkeProduct bb, int N_min = 0) : b(std::move(bb)) {
    N = std::max(N_min, detail::series_degree(b));
    for (cplx z : b.zeros()) basis.push_back(eigen_psi(b, z, N));
  }

  int dim() const { return b.degree(); }

  /// <psi_j, psi_i> = 1 / (1 - conj(z_i) z_j), since |b| = 1 on T.
  CMatrix gram() const {
    const auto z = b.zeros();
    const Eigen::Index n = dim();
    CMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        g(i, j) = 1.0 / (1.0 - std::conj(z[static_cast<std::size_t>(i)]) * z[static_cast<std::size_t>(j)]);
    return g;
  }

  /// The same matrix from the truncated series.
  CMatrix gram_series() const {
    const Eigen::Index n = dim();
    CMatrix g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        g(i, j) = inner(basis[static_cast<std::size_t>(j)], basis[static_cast<std::size_t>(i)]);
    return g;
  }
};

struct ModelOp {
  CMatrix matrix;  ///< G(T_b) in the psi basis
  CMatrix gram;
  double norm = 0.0;
};

/// G(T_b) f = P_b G f. T_b psi_z = z psi_z, so the matrix is diag(G(z_k)).
inline ModelOp model_op(const TrigPoly1& G, const ModelSpace1& S) {
  detail::require_analytic(G, "model_op");
  ModelOp m;
  const auto z = S.b.zeros();
  const Eigen::Index n = S.dim();
  m.matrix = CMatrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m.matrix(k, k) = eval_disk(G, z[static_cast<std::size_t>(k)]);
  m.gram = S.gram();
  if (n > 0) m.norm = std::sqrt(std::max(0.0, generalized_max_eigenvalue(m.matrix.adjoint() * m.gram * m.matrix, m.gram)));
  return m;
}

/// Coordinates of P_b (G psi_k) in the psi basis, from projected series.
inline CMatrix model_op_projected(const TrigPoly1& G, const ModelSpace1& S) {
  const Eigen::Index n = S.dim();
  const int N = S.N + G.N();
  CMatrix rhs(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const TrigPoly1 p = project_Kb(multiply(G, S.basis[static_cast<std::size_t>(k)]), S.b, N);
    for (Eigen::Index i = 0; i < n; ++i) rhs(i, k) = inner(p, S.basis[static_cast<std::size_t>(i)].resized(N));
  }
  return S.gram_series().ldlt().solve(rhs);
}

// ---------------------------------------------------------------------------
// Two variables.

namespace detail {

/// Columns of one-variable functions sampled as coefficients lo..lo+rows-1.
struct SeriesFamily {
  int lo = 0;
  CMatrix C;

  static SeriesFamily from(const std::vector<TrigPoly1>& fs, int lo, int hi) {
    SeriesFamily s;
    s.lo = lo;
    s.C = CMatrix::Zero(hi - lo + 1, static_cast<Eigen::Index>(fs.size()));
    for (std::size_t c = 0; c < fs.size(); ++c)
      for (int k = std::max(lo, -fs[c].N()); k <= std::min(hi, fs[c].N()); ++k)
        s.C(k - lo, static_cast<Eigen::Index>(c)) = fs[c](k);
    return s;
  }

  /// G(p, q) = <f_q, f_p>.
  CMatrix gram() const { return C.adjoint() * C; }
};

}  // namespace detail

/// One factor of a separable basis vector: indices into the x and y families.
struct ProductTerm {
  cplx coeff = 1.0;
  int fx = 0;
  int fy = 0;
};

/// Default truncation of the h', h'' directions: 4 (N - n), at least 8.
inline int default_model_degree(int N, int n) { return std::max(4 * (N - n), 8); }

class ModelSpace2 {
 public:
  enum class Block { K0, K1, K2 };
  struct Member {
    Block block;
    int i = 0, j = 0, l = 0;
  };

  ModelSpace2(BlaschkeProduct b1, BlaschkeProduct b2, int K) : b1_(std::move(b1)), b2_(std::move(b2)), K_(K) {
    require(K >= 0, "ModelSpace2: K must be nonnegative");
    const int n1 = b1_.degree(), n2 = b2_.degree();
    for (int i = 0; i < n1; ++i)
      for (int j = 0; j < n2; ++j) members_.push_back({Block::K0, i, j, 0});
    if (n2 > 0)
      for (int i = 0; i < n1; ++i)
        for (int l = 0; l <= K; ++l) members_.push_back({Block::K1, i, 0, l});
    if (n1 > 0)
      for (int j = 0; j < n2; ++j)
        for (int l = 0; l <= K; ++l) members_.push_back({Block::K2, 0, j, l});
    Dx_ = detail::series_degree(b1_) + K + 8;
    Dy_ = detail::series_degree(b2_) + K + 8;
    fx_ = family(b1_, Dx_, K);
    fy_ = family(b2_, Dy_, K);
  }

  const BlaschkeProduct& b1() const { return b1_; }
  const BlaschkeProduct& b2() const { return b2_; }
  int K() const { return K_; }
  int dim() const { return static_cast<int>(members_.size()); }
  const std::vector<Member>& members() const { return members_; }
  int degree_x() const { return Dx_; }
  int degree_y() const { return Dy_; }

  /// x family: xi_0..xi_{n1-1}, then b1 x^l for l = 0..K; y family likewise.
  const std::vector<TrigPoly1>& family_x() const { return fx_; }
  const std::vector<TrigPoly1>& family_y() const { return fy_; }

  int idx_xi(int i) const { return i; }
  int idx_bx(int l) const { return b1_.degree() + l; }
  int idx_eta(int j) const { return j; }
  int idx_by(int l) const { return b2_.degree() + l; }

  /// Member k as a single product (fx, fy).
  ProductTerm product(int k) const {
    const Member& m = members_[static_cast<std::size_t>(k)];
    switch (m.block) {
      case Block::K0: return {1.0, idx_xi(m.i), idx_eta(m.j)};
      case Block::K1: return {1.0, idx_xi(m.i), idx_by(m.l)};
      default: return {1.0, idx_bx(m.l), idx_eta(m.j)};
    }
  }

  /// Coefficient array of member k on T^2.
  TrigPoly2 member(int k) const {
    const ProductTerm t = product(k);
    return outer(fx_[static_cast<std::size_t>(t.fx)], fy_[static_cast<std::size_t>(t.fy)]);
  }

  /// Gram matrix of the basis, from the one-variable series.
  CMatrix gram() const {
    const CMatrix gx = detail::SeriesFamily::from(fx_, 0, Dx_).gram();
    const CMatrix gy = detail::SeriesFamily::from(fy_, 0, Dy_).gram();
    const int B = dim();
    CMatrix g(B, B);
    for (int k = 0; k < B; ++k)
      for (int l = 0; l < B; ++l) {
        const ProductTerm a = product(k), c = product(l);
        g(k, l) = gx(a.fx, c.fx) * gy(a.fy, c.fy);
      }
    return g;
  }

 private:
  static std::vector<TrigPoly1> family(const BlaschkeProduct& b, int D, int K) {
    std::vector<TrigPoly1> f;
    for (cplx z : b.zeros()) f.push_back(eigen_psi(b, z, D));
    if (!b.trivial()) {
      const TrigPoly1 bc = coeffs(b, D);
      for (int l = 0; l <= K; ++l) {
        TrigPoly1 s(D);
        for (int k = 0; k + l <= D; ++k) s(k + l) = bc(k);
        f.push_back(s);
      }
    }
    return f;
  }

  BlaschkeProduct b1_, b2_;
  int K_;
  int Dx_ = 0, Dy_ = 0;
  std::vector<Member> members_;
  std::vector<TrigPoly1> fx_, fy_;
};

namespace detail {

/// Sum over terms of two images, <v_l, v_k> with v = sum_t c_t X_{fx} (x) Y_{fy}.
inline CMatrix product_gram(const std::vector<std::vector<ProductTerm>>& v, const CMatrix& gx, const CMatrix& gy) {
  const Eigen::Index B = static_cast<Eigen::Index>(v.size());
  CMatrix g = CMatrix::Zero(B, B);
  for (Eigen::Index k = 0; k < B; ++k)
    for (Eigen::Index l = 0; l < B; ++l) {
      cplx s{};
      for (const auto& a : v[static_cast<std::size_t>(k)])
        for (const auto& c : v[static_cast<std::size_t>(l)])
          s += std::conj(a.coeff) * c.coeff * gx(a.fx, c.fx) * gy(a.fy, c.fy);
      g(k, l) = s;
    }
  return g;
}

inline double gram_norm(const CMatrix& image, const CMatrix& gram, double max_cond) {
  if (gram.size() == 0) return 0.0;
  return std::sqrt(std::max(0.0, generalized_max_eigenvalue(image, gram, max_cond)));
}

}  // namespace detail

struct MultiplierReport {
  double norm_multiplier = 0.0;  ///< ||Gamma^phi|| on the basis span
  double norm_hankel = 0.0;      ///< ||Gamma_phi|| on the same span, by the projector I - P
  double relative_gap = 0.0;
  int K = 0;
  double gram_condition = 0.0;
};

/// ||Gamma_phi restricted to span(S)|| for phi = sum_r u_r (x) v_r, from
/// <(I - P)A, (I - P)B> = <A, B> - <PA, PB> on products of series.
inline double restricted_norm(const SeparableSymbol& phi, const ModelSpace2& S, double max_cond = 1e10) {
  const int B = S.dim();
  if (B == 0 || phi.terms.empty()) return 0.0;
  const std::size_t R = phi.terms.size();
  std::vector<detail::SeriesFamily> X, Y, XP, YP;
  int ex = 0, ey = 0;
  for (const auto& t : phi.terms) {
    ex = std::max(ex, t.u.N() + S.degree_x());
    ey = std::max(ey, t.v.N() + S.degree_y());
  }
  for (const auto& t : phi.terms) {
    std::vector<TrigPoly1> px, py;
    for (const auto& f : S.family_x()) px.push_back(multiply(t.u, f));
    for (const auto& f : S.family_y()) py.push_back(multiply(t.v, f));
    X.push_back(detail::SeriesFamily::from(px, -ex, ex));
    Y.push_back(detail::SeriesFamily::from(py, -ey, ey));
    XP.push_back(detail::SeriesFamily::from(px, 0, ex));
    YP.push_back(detail::SeriesFamily::from(py, 0, ey));
  }
  CMatrix img = CMatrix::Zero(B, B);
  for (std::size_t r = 0; r < R; ++r)
    for (std::size_t s = 0; s < R; ++s) {
      const CMatrix gx = X[r].C.adjoint() * X[s].C, gy = Y[r].C.adjoint() * Y[s].C;
      const CMatrix px = XP[r].C.adjoint() * XP[s].C, py = YP[r].C.adjoint() * YP[s].C;
      for (int k = 0; k < B; ++k)
        for (int l = 0; l < B; ++l) {
          const ProductTerm a = S.product(k), c = S.product(l);
          img(k, l) += gx(a.fx, c.fx) * gy(a.fy, c.fy) - px(a.fx, c.fx) * py(a.fy, c.fy);
        }
    }
  return detail::gram_norm(img, S.gram(), max_cond);
}

/// phi = (conj(b1) (x) conj(b2)) G for analytic G, as a separable symbol
/// with the expansions of b1 and b2 certified to tol.
inline SeparableSymbol conjugate_blaschke_times(const BlaschkeProduct& b1, const BlaschkeProduct& b2,
                                                const TrigPoly2& G, double tol = kSeriesTol) {
  const TrigPoly1 c1 = conjugate(coeffs(b1, detail::series_degree(b1, tol)));
  const TrigPoly1 c2 = conjugate(coeffs(b2, detail::series_degree(b2, tol)));
  SeparableSymbol s = separate_lowrank(G, 1e-14);
  for (auto& t : s.terms) {
    t.u = multiply(c1, t.u);
    t.v = multiply(c2, t.v);
  }
  return s;
}

/// The multiplier Gamma^phi in K_{b1 b2} for phi = (conj(b1) (x) conj(b2))(G1 (x) G2):
///   xi_i eta_j      -> (G1(x) G2(w_j) + G1(z_i) G2(y) - G1(z_i) G2(w_j)) xi_i eta_j,
///   xi_i b2 h''     -> G1(z_i) G2(y) xi_i b2 h'',
///   b1 h' eta_j     -> G1(x) G2(w_j) b1 h' eta_j.
/// Its norm in the Gram metric is compared with Gamma_phi on the same span.
inline MultiplierReport multiplier_Gamma_phi(const TrigPoly1& G1, const TrigPoly1& G2, const ModelSpace2& S,
                                             double max_cond = 1e10) {
  detail::require_analytic(G1, "multiplier_Gamma_phi");
  detail::require_analytic(G2, "multiplier_Gamma_phi");
  require(S.b1().degree() == S.b2().degree(), "multiplier_Gamma_phi: b1 and b2 need the same number of zeros");
  MultiplierReport rep;
  rep.K = S.K();
  const int B = S.dim();
  if (B == 0) return rep;
  // Families doubled: f then G f, so index f + nf is G times f.
  const auto& fx = S.family_x();
  const auto& fy = S.family_y();
  const int nfx = static_cast<int>(fx.size()), nfy = static_cast<int>(fy.size());
  std::vector<TrigPoly1> ex = fx, ey = fy;
  for (const auto& f : fx) ex.push_back(multiply(G1, f));
  for (const auto& f : fy) ey.push_back(multiply(G2, f));
  const CMatrix gx = detail::SeriesFamily::from(ex, 0, S.degree_x() + G1.N()).gram();
  const CMatrix gy = detail::SeriesFamily::from(ey, 0, S.degree_y() + G2.N()).gram();
  const auto z = S.b1().zeros();
  const auto w = S.b2().zeros();
  std::vector<std::vector<ProductTerm>> img(static_cast<std::size_t>(B));
  for (int k = 0; k < B; ++k) {
    const auto& m = S.members()[static_cast<std::size_t>(k)];
    const ProductTerm t = S.product(k);
    auto& v = img[static_cast<std::size_t>(k)];
    if (m.block == ModelSpace2::Block::K0) {
      const cplx g1 = eval_disk(G1, z[static_cast<std::size_t>(m.i)]);
      const cplx g2 = eval_disk(G2, w[static_cast<std::size_t>(m.j)]);
      v.push_back({g2, t.fx + nfx, t.fy});
      v.push_back({g1, t.fx, t.fy + nfy});
      v.push_back({-g1 * g2, t.fx, t.fy});
    } else if (m.block == ModelSpace2::Block::K1) {
      v.push_back({eval_disk(G1, z[static_cast<std::size_t>(m.i)]), t.fx, t.fy + nfy});
    } else {
      v.push_back({eval_disk(G2, w[static_cast<std::size_t>(m.j)]), t.fx + nfx, t.fy});
    }
  }
  const CMatrix gram = S.gram();
  rep.gram_condition = hpd_condition(gram);
  rep.norm_multiplier = detail::gram_norm(detail::product_gram(img, gx, gy), gram, max_cond);
  SeparableSymbol phi;
  phi.terms.push_back({multiply(conjugate(coeffs(S.b1(), detail::series_degree(S.b1()))), G1),
                       multiply(conjugate(coeffs(S.b2(), detail::series_degree(S.b2()))), G2)});
  rep.norm_hankel = restricted_norm(phi, S, max_cond);
  rep.relative_gap = rep.norm_hankel > 0.0 ? std::abs(rep.norm_multiplier - rep.norm_hankel) / rep.norm_hankel : 0.0;
  return rep;
}

}  // namespace nehari

#endif
