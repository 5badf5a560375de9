#ifndef NEHARI_FOURIER_HPP
#define NEHARI_FOURIER_HPP

// Truncated Fourier series on T and T^2.
//
// A TrigPoly<D> stores every coefficient of the symmetric box [-N, N]^D.
// Frequency m belongs to the x axis and n to the y axis.  Frequency 0 is
// counted as analytic on each axis, so H = 2P - I multiplies frequency 0
// by +1 and H(1) = 1.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <unsupported/Eigen/FFT>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace nehari {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};
inline constexpr double two_pi = 2.0 * std::numbers::pi;

enum class Axis { x, y };

enum class Sector { Px, Py, PminusX, PminusY, PxPy, Pfull, IminusPfull };

/// True when frequency (m, n) lies in the sector.
constexpr bool in_sector(Sector s, int m, int n) {
  switch (s) {
    case Sector::Px: return m >= 0;
    case Sector::Py: return n >= 0;
    case Sector::PminusX: return m < 0;
    case Sector::PminusY: return n < 0;
    case Sector::PxPy:
    case Sector::Pfull: return m >= 0 && n >= 0;
    case Sector::IminusPfull: return m < 0 || n < 0;
  }
  return false;
}

struct FreqBox {
  int dim = 1;
  int N = 0;
};

/// Grid values: a vector on T, a G x G matrix on T^2 with (i, j) = (x_i, y_j).
template <int D>
using GridValues = std::conditional_t<D == 1, Eigen::VectorXcd, Eigen::MatrixXcd>;

template <int D>
  requires(D == 1 || D == 2)
class TrigPoly {
 public:
  static constexpr int dim = D;

  TrigPoly() : TrigPoly(0) {}
  explicit TrigPoly(int N) : N_(N) {
    require(N >= 0, "TrigPoly: negative box size");
    c_.assign(count(N), cplx{});
  }

  static TrigPoly constant(cplx v) {
    TrigPoly p(0);
    p.c_[0] = v;
    return p;
  }
  static TrigPoly monomial(int m, cplx v = 1.0)
    requires(D == 1)
  {
    TrigPoly p(std::abs(m));
    p(m) = v;
    return p;
  }
  static TrigPoly monomial(int m, int n, cplx v = 1.0)
    requires(D == 2)
  {
    TrigPoly p(std::max(std::abs(m), std::abs(n)));
    p(m, n) = v;
    return p;
  }

  int N() const { return N_; }
  int side() const { return 2 * N_ + 1; }
  FreqBox box() const { return {D, N_}; }
  std::span<cplx> data() { return c_; }
  std::span<const cplx> data() const { return c_; }

  cplx& operator()(int m)
    requires(D == 1)
  {
    return c_[static_cast<std::size_t>(m + N_)];
  }
  const cplx& operator()(int m) const
    requires(D == 1)
  {
    return c_[static_cast<std::size_t>(m + N_)];
  }
  cplx& operator()(int m, int n)
    requires(D == 2)
  {
    return c_[flat(m, n)];
  }
  const cplx& operator()(int m, int n) const
    requires(D == 2)
  {
    return c_[flat(m, n)];
  }

  /// Coefficient with zero extension outside the box.
  cplx coeff(int m) const
    requires(D == 1)
  {
    return std::abs(m) <= N_ ? (*this)(m) : cplx{};
  }
  cplx coeff(int m, int n) const
    requires(D == 2)
  {
    return (std::abs(m) <= N_ && std::abs(n) <= N_) ? (*this)(m, n) : cplx{};
  }

  /// Same function in box M; coefficients outside [-M, M]^D are dropped.
  TrigPoly resized(int M) const {
    TrigPoly out(M);
    const int L = std::min(M, N_);
    if constexpr (D == 1) {
      for (int m = -L; m <= L; ++m) out(m) = (*this)(m);
    } else {
      for (int m = -L; m <= L; ++m)
        for (int n = -L; n <= L; ++n) out(m, n) = (*this)(m, n);
    }
    return out;
  }

  /// Largest |frequency| carrying a coefficient above tol in modulus.
  int extent(double tol = 0.0) const {
    int e = 0;
    if constexpr (D == 1) {
      for (int m = -N_; m <= N_; ++m)
        if (std::abs((*this)(m)) > tol) e = std::max(e, std::abs(m));
    } else {
      for (int m = -N_; m <= N_; ++m)
        for (int n = -N_; n <= N_; ++n)
          if (std::abs((*this)(m, n)) > tol) e = std::max({e, std::abs(m), std::abs(n)});
    }
    return e;
  }

  /// Smallest box holding every coefficient above tol.
  TrigPoly trimmed(double tol = 0.0) const { return resized(extent(tol)); }

  bool is_zero(double tol = 0.0) const {
    return std::all_of(c_.begin(), c_.end(), [tol](cplx v) { return std::abs(v) <= tol; });
  }

  cplx eval(double x) const
    requires(D == 1)
  {
    cplx s{};
    for (int m = -N_; m <= N_; ++m) s += (*this)(m) * std::polar(1.0, m * x);
    return s;
  }
  cplx eval(double x, double y) const
    requires(D == 2)
  {
    cplx s{};
    for (int m = -N_; m <= N_; ++m) {
      cplx row{};
      for (int n = -N_; n <= N_; ++n) row += (*this)(m, n) * std::polar(1.0, n * y);
      s += row * std::polar(1.0, m * x);
    }
    return s;
  }

  TrigPoly& operator+=(const TrigPoly& o) { return axpy(o, 1.0); }
  TrigPoly& operator-=(const TrigPoly& o) { return axpy(o, -1.0); }
  TrigPoly& operator*=(cplx s) {
    for (auto& v : c_) v *= s;
    return *this;
  }

  friend TrigPoly operator+(TrigPoly a, const TrigPoly& b) { return a += b; }
  friend TrigPoly operator-(TrigPoly a, const TrigPoly& b) { return a -= b; }
  friend TrigPoly operator-(TrigPoly a) { return a *= -1.0; }
  friend TrigPoly operator*(TrigPoly a, cplx s) { return a *= s; }
  friend TrigPoly operator*(cplx s, TrigPoly a) { return a *= s; }
  friend bool operator==(const TrigPoly& a, const TrigPoly& b) {
    const int M = std::max(a.N_, b.N_);
    return a.resized(M).c_ == b.resized(M).c_;
  }

 private:
  static std::size_t count(int N) {
    const std::size_t s = static_cast<std::size_t>(2 * N + 1);
    return D == 1 ? s : s * s;
  }
  std::size_t flat(int m, int n) const {
    return static_cast<std::size_t>(m + N_) * static_cast<std::size_t>(2 * N_ + 1) +
           static_cast<std::size_t>(n + N_);
  }
  TrigPoly& axpy(const TrigPoly& o, double s) {
    if (o.N_ > N_) *this = resized(o.N_);
    if constexpr (D == 1) {
      for (int m = -o.N_; m <= o.N_; ++m) (*this)(m) += s * o(m);
    } else {
      for (int m = -o.N_; m <= o.N_; ++m)
        for (int n = -o.N_; n <= o.N_; ++n) (*this)(m, n) += s * o(m, n);
    }
    return *this;
  }

  int N_;
  std::vector<cplx> c_;
};

using TrigPoly1 = TrigPoly<1>;
using TrigPoly2 = TrigPoly<2>;

/// Complex conjugate function: coefficient at -k is the conjugate of f^(k).
template <int D>
TrigPoly<D> conjugate(const TrigPoly<D>& f) {
  TrigPoly<D> out(f.N());
  const int N = f.N();
  if constexpr (D == 1) {
    for (int m = -N; m <= N; ++m) out(-m) = std::conj(f(m));
  } else {
    for (int m = -N; m <= N; ++m)
      for (int n = -N; n <= N; ++n) out(-m, -n) = std::conj(f(m, n));
  }
  return out;
}

/// Exact product; the result box is N_f + N_g.
template <int D>
TrigPoly<D> multiply(const TrigPoly<D>& f, const TrigPoly<D>& g) {
  const int Nf = f.N(), Ng = g.N();
  TrigPoly<D> out(Nf + Ng);
  if constexpr (D == 1) {
    for (int a = -Nf; a <= Nf; ++a) {
      const cplx fa = f(a);
      if (fa == cplx{}) continue;
      for (int b = -Ng; b <= Ng; ++b) out(a + b) += fa * g(b);
    }
  } else {
    for (int a = -Nf; a <= Nf; ++a)
      for (int b = -Nf; b <= Nf; ++b) {
        const cplx fab = f(a, b);
        if (fab == cplx{}) continue;
        for (int c = -Ng; c <= Ng; ++c)
          for (int d = -Ng; d <= Ng; ++d) out(a + c, b + d) += fab * g(c, d);
      }
  }
  return out;
}

/// Zero every coefficient outside the sector. On T only the x predicate
/// applies (n = 0), so Py acts as the identity and PminusY as zero.
template <int D>
TrigPoly<D> project(const TrigPoly<D>& f, Sector s) {
  TrigPoly<D> out = f;
  const int N = f.N();
  if constexpr (D == 1) {
    for (int m = -N; m <= N; ++m)
      if (!in_sector(s, m, 0)) out(m) = 0.0;
  } else {
    for (int m = -N; m <= N; ++m)
      for (int n = -N; n <= N; ++n)
        if (!in_sector(s, m, n)) out(m, n) = 0.0;
  }
  return out;
}

/// H = 2P - I along one axis: +1 on frequencies >= 0, -1 below.
template <int D>
TrigPoly<D> hilbert(const TrigPoly<D>& f, Axis axis = Axis::x) {
  if constexpr (D == 1) require(axis == Axis::x, "hilbert: a 1D polynomial has only the x axis");
  TrigPoly<D> out = f;
  const int N = f.N();
  if constexpr (D == 1) {
    for (int m = -N; m < 0; ++m) out(m) = -out(m);
  } else {
    for (int m = -N; m <= N; ++m)
      for (int n = -N; n <= N; ++n)
        if ((axis == Axis::x ? m : n) < 0) out(m, n) = -out(m, n);
  }
  return out;
}

/// <f, g> = sum f^(k) conj(g^(k)), exact by Parseval.
template <int D>
cplx inner(const TrigPoly<D>& f, const TrigPoly<D>& g) {
  const int L = std::min(f.N(), g.N());
  cplx s{};
  if constexpr (D == 1) {
    for (int m = -L; m <= L; ++m) s += f(m) * std::conj(g(m));
  } else {
    for (int m = -L; m <= L; ++m)
      for (int n = -L; n <= L; ++n) s += f(m, n) * std::conj(g(m, n));
  }
  return s;
}

template <int D>
double norm2(const TrigPoly<D>& f) {
  double s = 0.0;
  for (cplx v : f.data()) s += std::norm(v);
  return std::sqrt(s);
}

/// Lift a function of one variable to T^2 along the chosen axis.
inline TrigPoly2 lift(const TrigPoly1& f, Axis axis) {
  TrigPoly2 out(f.N());
  for (int k = -f.N(); k <= f.N(); ++k) {
    if (axis == Axis::x)
      out(k, 0) = f(k);
    else
      out(0, k) = f(k);
  }
  return out;
}

/// (u (x) v)(x, y) = u(x) v(y).
inline TrigPoly2 outer(const TrigPoly1& u, const TrigPoly1& v) {
  const int N = std::max(u.N(), v.N());
  TrigPoly2 out(N);
  for (int m = -u.N(); m <= u.N(); ++m)
    for (int n = -v.N(); n <= v.N(); ++n) out(m, n) = u(m) * v(n);
  return out;
}

/// Analytic extension of P f into the disk: sum over k >= 0 of f^(k) z^k.
inline cplx eval_disk(const TrigPoly1& f, cplx z) {
  cplx s{};
  for (int k = f.N(); k >= 0; --k) s = s * z + f(k);
  return s;
}

/// f(z, .) as a function of y, using the analytic extension in x.
inline TrigPoly1 slice_at_x(const TrigPoly2& f, cplx z) {
  TrigPoly1 out(f.N());
  for (int n = -f.N(); n <= f.N(); ++n) {
    cplx s{};
    for (int m = f.N(); m >= 0; --m) s = s * z + f(m, n);
    out(n) = s;
  }
  return out;
}

/// f(., zeta) as a function of x, using the analytic extension in y.
inline TrigPoly1 slice_at_y(const TrigPoly2& f, cplx zeta) {
  TrigPoly1 out(f.N());
  for (int m = -f.N(); m <= f.N(); ++m) {
    cplx s{};
    for (int n = f.N(); n >= 0; --n) s = s * zeta + f(m, n);
    out(m) = s;
  }
  return out;
}

inline cplx eval_bidisk(const TrigPoly2& f, cplx z, cplx zeta) {
  return eval_disk(slice_at_x(f, z), zeta);
}

// ---------------------------------------------------------------------------
// Grids and FFT.

struct Grid {
  int dim = 1;
  int G = 4;

  /// Default alias-free grid for products of two box-N factors.
  static Grid for_box(int dim, int N) { return {dim, 4 * N + 4}; }
  double node(int k) const { return two_pi * k / G; }
  bool alias_free(int N) const { return G >= 4 * N + 4; }
};

namespace detail {

inline Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> engine = [] {
    Eigen::FFT<double> e;
    e.SetFlag(Eigen::FFT<double>::Unscaled);
    return e;
  }();
  return engine;
}

inline int wrap(int k, int G) {
  const int r = k % G;
  return r < 0 ? r + G : r;
}

/// In-place unscaled DFT of every column (forward: exponent sign -).
inline void fft_columns(Eigen::MatrixXcd& a, bool forward) {
  auto& e = fft_engine();
  std::vector<cplx> in(static_cast<std::size_t>(a.rows())), out;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) in[static_cast<std::size_t>(i)] = a(i, j);
    if (forward)
      e.fwd(out, in);
    else
      e.inv(out, in);
    for (Eigen::Index i = 0; i < a.rows(); ++i) a(i, j) = out[static_cast<std::size_t>(i)];
  }
}

inline void fft2(Eigen::MatrixXcd& a, bool forward) {
  fft_columns(a, forward);
  a.transposeInPlace();
  fft_columns(a, forward);
  a.transposeInPlace();
}

}  // namespace detail

/// Exact values at the nodes 2 pi k / G. Frequencies are folded modulo G,
/// which is exact for evaluation at any G.
template <int D>
GridValues<D> sample(const TrigPoly<D>& f, int G) {
  require(G >= 1, "sample: grid size must be positive");
  const int N = f.N();
  if constexpr (D == 1) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(G, 1);
    for (int m = -N; m <= N; ++m) a(detail::wrap(m, G), 0) += f(m);
    detail::fft_columns(a, false);
    return a.col(0);
  } else {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(G, G);
    for (int m = -N; m <= N; ++m)
      for (int n = -N; n <= N; ++n) a(detail::wrap(m, G), detail::wrap(n, G)) += f(m, n);
    detail::fft2(a, false);
    return a;
  }
}

template <int D>
GridValues<D> sample(const TrigPoly<D>& f, const Grid& g) {
  require(g.dim == D, "sample: grid dimension mismatch");
  return sample(f, g.G);
}

/// Coefficients on [-N, N]^D of the trigonometric interpolant of grid values.
/// Exact for box-limited data; requires G >= 2N + 1.
inline TrigPoly1 interpolate(const Eigen::VectorXcd& values, int N) {
  const int G = static_cast<int>(values.size());
  if (G < 2 * N + 1) throw ConfigError("interpolate: grid of " + std::to_string(G) +
                                       " points aliases box N = " + std::to_string(N));
  Eigen::MatrixXcd a = values;
  detail::fft_columns(a, true);
  TrigPoly1 out(N);
  for (int m = -N; m <= N; ++m) out(m) = a(detail::wrap(m, G), 0) / static_cast<double>(G);
  return out;
}

inline TrigPoly2 interpolate(const Eigen::MatrixXcd& values, int N) {
  const int G = static_cast<int>(values.rows());
  require(values.cols() == G, "interpolate: grid must be square");
  if (G < 2 * N + 1) throw ConfigError("interpolate: grid of " + std::to_string(G) +
                                       " points aliases box N = " + std::to_string(N));
  Eigen::MatrixXcd a = values;
  detail::fft2(a, true);
  TrigPoly2 out(N);
  const double s = 1.0 / (static_cast<double>(G) * G);
  for (int m = -N; m <= N; ++m)
    for (int n = -N; n <= N; ++n) out(m, n) = a(detail::wrap(m, G), detail::wrap(n, G)) * s;
  return out;
}

/// Grid maximum of |f|; a lower bound of the sup-norm.
template <int D>
double normInf_grid(const TrigPoly<D>& f, int G) {
  return sample(f, G).cwiseAbs().maxCoeff();
}

/// Grid mean of |f|. The trapezoidal rule is spectrally accurate where |f|
/// is smooth; near zeros of f the error is O(G^-2).
template <int D>
double norm1_grid(const TrigPoly<D>& f, int G) {
  const auto v = sample(f, G);
  return v.cwiseAbs().sum() / static_cast<double>(v.size());
}

/// Sup-norm estimate: the larger grid maximum of G = 4N+4 and of 4G.
template <int D>
double sup_norm(const TrigPoly<D>& f) {
  const int G = 4 * f.N() + 4;
  return std::max(normInf_grid(f, G), normInf_grid(f, 4 * G));
}

}  // namespace nehari

#endif
