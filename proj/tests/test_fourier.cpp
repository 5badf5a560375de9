#include <gtest/gtest.h>

#include "nehari/fourier.hpp"
#include "nehari/random.hpp"

using namespace nehari;

namespace {

double max_diff(const TrigPoly2& a, const TrigPoly2& b) {
  const int M = std::max(a.N(), b.N());
  double d = 0.0;
  for (int m = -M; m <= M; ++m)
    for (int n = -M; n <= M; ++n) d = std::max(d, std::abs(a.coeff(m, n) - b.coeff(m, n)));
  return d;
}

}  // namespace

TEST(Fourier, MultiplyAddsFrequencies) {
  const TrigPoly2 p = multiply(TrigPoly2::monomial(1, 0), TrigPoly2::monomial(0, 1));
  EXPECT_EQ(p, TrigPoly2::monomial(1, 1));
  EXPECT_EQ(p.N(), 2);
}

TEST(Fourier, MultiplyByOneIsIdentity) {
  Rng rng(3);
  const auto f = random_poly<2>(rng, 4);
  EXPECT_EQ(multiply(f, TrigPoly2::constant(1.0)), f);
}

TEST(Fourier, Binomial) {
  const TrigPoly1 c = TrigPoly1::monomial(1) + TrigPoly1::monomial(-1);
  const TrigPoly1 sq = multiply(c, c);
  EXPECT_EQ(sq, TrigPoly1::monomial(2) + TrigPoly1::constant(2.0) + TrigPoly1::monomial(-2));
}

TEST(Fourier, MultiplyMatchesPointwiseProduct) {
  Rng rng(4);
  const auto f = random_poly<2>(rng, 3), g = random_poly<2>(rng, 5);
  const auto p = multiply(f, g);
  for (double x : {0.3, 1.7}) {
    for (double y : {-0.4, 2.9}) EXPECT_NEAR(std::abs(p.eval(x, y) - f.eval(x, y) * g.eval(x, y)), 0.0, 1e-12);
  }
}

TEST(Fourier, ProjectionExamples) {
  EXPECT_TRUE(project(TrigPoly2::monomial(-2, 3), Sector::Px).is_zero());
  EXPECT_EQ(project(TrigPoly2::monomial(-1, -1), Sector::PminusX), TrigPoly2::monomial(-1, -1));
  Rng rng(5);
  const auto f = random_poly<2>(rng, 4);
  EXPECT_EQ(project(f, Sector::Pfull) + project(f, Sector::IminusPfull), f);
}

TEST(Fourier, ProjectorsIdempotentAndSelfAdjoint) {
  Rng rng(6);
  for (Sector s : {Sector::Px, Sector::Py, Sector::PminusX, Sector::PminusY, Sector::PxPy, Sector::Pfull,
                   Sector::IminusPfull}) {
    const auto f = random_poly<2>(rng, 4), g = random_poly<2>(rng, 4);
    EXPECT_EQ(project(project(f, s), s), project(f, s));
    EXPECT_NEAR(std::abs(inner(project(f, s), g) - inner(f, project(g, s))), 0.0, 1e-15);
  }
}

TEST(Fourier, HilbertConvention) {
  EXPECT_EQ(hilbert(TrigPoly1::monomial(1)), TrigPoly1::monomial(1));
  EXPECT_EQ(hilbert(TrigPoly1::monomial(-1)), TrigPoly1::monomial(-1, -1.0));
  EXPECT_EQ(hilbert(TrigPoly1::constant(1.0)), TrigPoly1::constant(1.0));
  Rng rng(7);
  const auto f = random_poly<2>(rng, 5);
  for (Axis a : {Axis::x, Axis::y}) {
    const auto half = 0.5 * (f + hilbert(f, a));
    EXPECT_LT(max_diff(project(f, a == Axis::x ? Sector::Px : Sector::Py), half), 1e-15);
  }
}

TEST(Fourier, PerpDecomposition) {
  Rng rng(8);
  for (int t = 0; t < 5; ++t) {
    const auto f = random_poly<2>(rng, 5);
    EXPECT_EQ(project(f, Sector::IminusPfull),
              project(f, Sector::PminusX) + project(project(f, Sector::Px), Sector::PminusY));
  }
}

TEST(Fourier, InnerProductsAndNorms) {
  const TrigPoly2 f = TrigPoly2::monomial(1, 0) + TrigPoly2::monomial(0, 1);
  EXPECT_NEAR(norm2(f), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(inner(TrigPoly2::monomial(1, 0), TrigPoly2::monomial(0, 1)), cplx{});
  EXPECT_NEAR(normInf_grid(TrigPoly1::monomial(1, 2.0), 64), 2.0, 1e-14);
  Rng rng(9);
  const auto g = random_poly<2>(rng, 6);
  double s = 0.0;
  for (cplx c : g.data()) s += std::norm(c);
  EXPECT_NEAR(norm2(g) * norm2(g), s, 1e-14);
}

TEST(Fourier, L1NormOfUnimodular) {
  EXPECT_NEAR(norm1_grid(TrigPoly2::monomial(-1, -1), 16), 1.0, 1e-14);
}

TEST(Fourier, GridSupNormIsMonotoneInRefinement) {
  Rng rng(10);
  const auto f = random_poly<1>(rng, 7);
  const double a = normInf_grid(f, 32), b = normInf_grid(f, 64);
  EXPECT_LE(a, b + 1e-15);
  EXPECT_GE(sup_norm(f), b - 1e-15);
}

TEST(Fourier, SampleExamples) {
  const auto ones = sample(TrigPoly2::constant(1.0), 8);
  EXPECT_NEAR((ones.array() - 1.0).abs().maxCoeff(), 0.0, 1e-15);
  const auto v = sample(TrigPoly1::monomial(1), 4);
  const cplx expect[4] = {1.0, I, -1.0, -I};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(v(k) - expect[k]), 0.0, 1e-15);
}

TEST(Fourier, SampleInterpolateRoundTrip) {
  Rng rng(11);
  const auto f1 = random_poly<1>(rng, 9);
  const auto back1 = interpolate(sample(f1, 40), 9);
  for (int m = -9; m <= 9; ++m) EXPECT_NEAR(std::abs(back1(m) - f1(m)), 0.0, 1e-14);
  const auto f2 = random_poly<2>(rng, 5);
  EXPECT_LT(max_diff(interpolate(sample(f2, 24), 5), f2), 1e-14);
}

TEST(Fourier, SampleMatchesDirectEvaluation) {
  Rng rng(12);
  const auto f = random_poly<2>(rng, 4);
  const int G = 20;
  const auto V = sample(f, G);
  EXPECT_NEAR(std::abs(V(3, 7) - f.eval(two_pi * 3 / G, two_pi * 7 / G)), 0.0, 1e-13);
}

TEST(Fourier, InterpolateRejectsAliasing) {
  EXPECT_THROW(interpolate(Eigen::VectorXcd(Eigen::VectorXcd::Ones(6)), 3), ConfigError);
}

TEST(Fourier, DiskEvaluation) {
  TrigPoly1 f(3);
  f(0) = 1.0;
  f(2) = 2.0;
  f(-1) = 5.0;  // ignored: analytic extension uses k >= 0
  const cplx z{0.3, -0.2};
  EXPECT_NEAR(std::abs(eval_disk(f, z) - (1.0 + 2.0 * z * z)), 0.0, 1e-15);
  const TrigPoly2 g = TrigPoly2::monomial(1, 2) + 3.0 * TrigPoly2::monomial(0, 1);
  const cplx w{-0.1, 0.5};
  EXPECT_NEAR(std::abs(eval_bidisk(g, z, w) - (z * w * w + 3.0 * w)), 0.0, 1e-15);
}
