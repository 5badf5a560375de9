#include <gtest/gtest.h>

#include "nehari/bmo.hpp"
#include "nehari/random.hpp"

using namespace nehari;

namespace {

/// dist(u, H^inf) for u of x alone: the norm of [u^(-(j+k+1))]_{j,k>=0}.
double hankel_norm(const TrigPoly1& u) {
  const int N = u.N();
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(N, N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; j + k + 1 <= N; ++k) A(j, k) = u(-(j + k + 1));
  return Eigen::JacobiSVD<Eigen::MatrixXcd>(A).singularValues()(0);
}

}  // namespace

TEST(BmoR, FunctionOfXAloneReducesToNehari) {
  Rng rng(51);
  for (int t = 0; t < 3; ++t) {
    const TrigPoly1 u = random_poly<1>(rng, 3, Sector::PminusX);
    const TrigPoly2 phi = lift(u, Axis::x);
    // The best approximant is rational, so the degree K needs to be large for 2e-3.
    const BmoReport r = bmor_norm(phi, 48, 128);
    const double ref = hankel_norm(u);
    EXPECT_NEAR(r.parts.at("dist_x"), ref, 2e-3 * ref);
    EXPECT_LT(r.parts.at("dist_y"), 1e-9);
    EXPECT_LT(r.parts.at("dist_perp"), 1e-12);
    EXPECT_NEAR(r.value, ref, 2e-3 * ref);
    EXPECT_LE(r.lower_bound, r.value * (1.0 + 1e-12));
  }
}

TEST(BmoR, NeverExceedsTheGridSupNorm) {
  Rng rng(52);
  for (int t = 0; t < 3; ++t) {
    const TrigPoly2 phi = random_poly<2>(rng, 2);
    const BmoReport r = bmor_norm(phi, 4, 12);
    EXPECT_LE(r.value, normInf_grid(phi, 12) * (1.0 + 1e-9));
    EXPECT_TRUE(r.converged);
  }
}

TEST(BmoR, RejectsAliasingGrids) {
  Rng rng(53);
  const TrigPoly2 phi = random_poly<2>(rng, 3);
  EXPECT_THROW(bmor_norm(phi, 3, 15), ConfigError);
  EXPECT_THROW(bmor_norm(phi, 2, 16), ConfigError);
}

TEST(BmoSmall, ConstantHasHalfItsModulus) {
  // The mean of f + H g is f^(0) + g^(0), hence max(|f|, |g|) >= |c| / 2.
  const TrigPoly2 phi = TrigPoly2::constant(cplx(0.6, -0.8));
  const BmoReport r = bmo_small_norm(phi, 2, 8);
  EXPECT_NEAR(r.value, 0.5, 1e-4);
  EXPECT_LT(r.parts.at("constraint_residual"), 1e-6);
}

TEST(BmoSmall, AntiAnalyticMonomial) {
  TrigPoly2 phi(1);
  phi(-1, 0) = 1.0;
  const BmoReport r = bmo_small_norm(phi, 4, 16);
  EXPECT_NEAR(r.parts.at("axis_x"), 0.5, 1e-4);
  EXPECT_NEAR(r.parts.at("axis_y"), 0.5, 1e-4);
}

TEST(BmoSmall, BoundedByGridSupNorm) {
  Rng rng(54);
  const TrigPoly2 phi = random_poly<2>(rng, 2);
  const BmoReport r = bmo_small_norm(phi, 2, 12);
  EXPECT_LE(r.value, normInf_grid(phi, 12) * (1.0 + 1e-9));
  EXPECT_LE(r.lower_bound, r.value * (1.0 + 1e-12));
}

TEST(Oscillation, DyadicIntervalsAndSimpleGrids) {
  EXPECT_EQ(dyadic_intervals(8).size(), 15u);
  EXPECT_NEAR(rect_mean_osc(Eigen::MatrixXcd::Constant(8, 8, cplx(2.0, 1.0))).value, 0.0, 1e-15);
  Eigen::MatrixXcd chess(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) chess(i, j) = (i + j) % 2 == 0 ? 1.0 : -1.0;
  EXPECT_NEAR(rect_mean_osc(chess).value, 1.0, 1e-15);
}

TEST(Gallery, ProfilesAndKinds) {
  const TrigPoly1 v = fejer_kernel(10);
  EXPECT_NEAR(norm1_grid(v, 176), 1.0, 1e-12);
  const TrigPoly1 s = square_wave(5);
  EXPECT_NEAR(std::abs(s(3)), 2.0 / (3.0 * std::numbers::pi), 1e-15);
  EXPECT_EQ(s(2), cplx{});
  for (const char* k : {"prop12a", "prop12b", "prop12c", "prop13"}) EXPECT_EQ(to_string(gallery_kind(k)), k);
  EXPECT_THROW(gallery_kind("prop14"), ConfigError);
  // prop12a is H_x of g(x, y) = v(x - y).
  const GalleryExample a = gallery(GalleryKind::prop12a, 5);
  EXPECT_EQ(a.phi(3, -3), s(3));
  EXPECT_EQ(a.phi(-3, 3), -s(-3));
}

TEST(Gallery, TriNormOfAntiAnalyticMonomial) {
  TrigPoly2 f(1);
  f(-1, -1) = 1.0;
  f(1, 1) = 5.0;
  EXPECT_NEAR(tri_norm_lower(f), 1.0, 1e-12);
}

TEST(WeightedHilbert, UnitWeightIsUnitary) {
  EXPECT_NEAR(weighted_hilbert_norm(Eigen::MatrixXd::Ones(12, 12), 2), 1.0, 1e-12);
  EXPECT_THROW(weighted_hilbert_norm(Eigen::MatrixXd::Zero(12, 12), 2), ConfigError);
}
