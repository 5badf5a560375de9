#include <gtest/gtest.h>

#include "nehari/blaschke.hpp"
#include "nehari/linalg.hpp"
#include "nehari/random.hpp"

using namespace nehari;

TEST(Blaschke, EvaluationBasics) {
  const BlaschkeProduct b({0.5});
  EXPECT_NEAR(std::abs(b.eval(0.5)), 0.0, 1e-16);
  for (double t : {0.0, 1.0, 2.5, 4.0}) EXPECT_NEAR(std::abs(b.eval(std::polar(1.0, t))), 1.0, 1e-15);
  const BlaschkeProduct o({0.0});
  const cplx z{0.3, 0.4};
  EXPECT_EQ(o.eval(z), z);
}

TEST(Blaschke, RejectsZerosNearBoundary) {
  EXPECT_THROW(BlaschkeProduct({1.0 - 1e-12}), ConfigError);
  EXPECT_THROW(BlaschkeProduct({cplx{0.8, 0.8}}), ConfigError);
}

TEST(Blaschke, OriginFactorCoefficients) {
  const auto c = coeffs(BlaschkeProduct({0.0}), 6);
  EXPECT_EQ(c, TrigPoly1::monomial(1).resized(6));
}

TEST(Blaschke, ConstantCoefficientIsValueAtOrigin) {
  Rng rng(1);
  for (int t = 0; t < 10; ++t) {
    const BlaschkeProduct b(random_nodes(rng, 3, 0.8));
    const auto c = coeffs(b, 40);
    EXPECT_NEAR(std::abs(c(0) - b.eval(0.0)), 0.0, 1e-14);
  }
  EXPECT_NEAR(coeffs(BlaschkeProduct({0.5}), 4)(0).real(), 0.5, 1e-16);
}

TEST(Blaschke, SeriesMatchesDirectEvaluationOnGrid) {
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const BlaschkeProduct b(random_nodes(rng, 1 + t % 4, 0.85));
    const auto c = coeffs_auto(b, 1e-12);
    const int G = 4 * c.N() + 4;
    const auto v = sample(c, G);
    const auto w = blaschke_values(b, G);
    EXPECT_LT((v - w).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((v.cwiseAbs().array() - 1.0).abs().maxCoeff(), 1e-9);
  }
}

TEST(Blaschke, TailBoundIsRigorous) {
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    const BlaschkeProduct b(random_nodes(rng, 2, 0.9));
    const int N = 20;
    const auto c = coeffs(b, 400);
    double tail = 0.0;
    for (int n = N + 1; n <= 400; ++n) tail += std::abs(c(n));
    EXPECT_LE(tail, tail_bound(b, N));
  }
}

TEST(Blaschke, CoeffsReportsUnreachableTolerance) {
  EXPECT_THROW(coeffs(BlaschkeProduct({0.9}), 5, 1e-12), ToleranceError);
  EXPECT_NO_THROW(coeffs(BlaschkeProduct({0.9}), required_degree(BlaschkeProduct({0.9}), 1e-12), 1e-12));
}

TEST(Blaschke, KernelBasics) {
  const auto k0 = kernel(0.0, 8);
  EXPECT_EQ(k0.coeffs, TrigPoly1::constant(1.0).resized(8));
  const auto k = kernel(cplx{0.4, -0.3}, 200);
  EXPECT_NEAR(norm2(k.coeffs), 1.0, 1e-10);
}

TEST(Blaschke, ReproducingIdentity) {
  Rng rng(4);
  const int N = 32;
  for (int t = 0; t < 100; ++t) {
    const auto f = random_poly<1>(rng, N, Sector::Px);
    const cplx z = random_in_disk(rng, 0.9);
    const auto k = kernel(z, N);
    const cplx lhs = inner(f, k.coeffs);
    const cplx rhs = kernel_constant(z) * eval_disk(f, z);
    EXPECT_LT(std::abs(lhs - rhs), 1e-9 * std::max(std::abs(rhs), 1e-300) + 1e-15);
  }
}

TEST(Blaschke, EigenPsiBasics) {
  const auto p = eigen_psi(BlaschkeProduct({0.0}), 0.0, 5);
  EXPECT_EQ(p, TrigPoly1::constant(1.0).resized(5));
  EXPECT_THROW(eigen_psi(BlaschkeProduct({0.5}), 0.2, 5), ConfigError);
  EXPECT_THROW(eigen_psi(BlaschkeProduct({0.5, 0.5}), 0.5, 5), ConfigError);
}

TEST(Blaschke, EigenPsiClosedForm) {
  Rng rng(5);
  const BlaschkeProduct b(random_nodes(rng, 3, 0.7));
  for (cplx zk : b.zeros()) {
    const auto psi = eigen_psi(b, zk, 120);
    for (double t : {0.1, 1.3, 3.0}) {
      const cplx xi = std::polar(1.0, t);
      EXPECT_NEAR(std::abs(psi.eval(t) - b.eval(xi) / (xi - zk)), 0.0, 1e-12);
    }
  }
}

TEST(Blaschke, EigenPsiOrthogonalToBH2) {
  Rng rng(6);
  const BlaschkeProduct b(random_nodes(rng, 3, 0.7));
  const int N = 120;
  const auto bc = coeffs(b, N);
  for (cplx zk : b.zeros()) {
    const auto psi = eigen_psi(b, zk, N);
    for (int n = 0; n <= 20; ++n) {
      const auto bn = multiply(bc, TrigPoly1::monomial(n)).resized(N);
      EXPECT_LT(std::abs(inner(psi, bn)), 1e-10);
    }
  }
}

TEST(Blaschke, EigenRelationUnderCompressedShift) {
  // P_b(S psi) = z psi; here S psi - z psi = b, which lies in b H^2.
  Rng rng(7);
  const BlaschkeProduct b(random_nodes(rng, 3, 0.7));
  const int N = 150;
  const auto bc = coeffs(b, N + 1);
  for (cplx zk : b.zeros()) {
    const auto psi = eigen_psi(b, zk, N);
    const auto diff = multiply(TrigPoly1::monomial(1), psi) - zk * psi;
    double err = 0.0;
    for (int n = 0; n <= N; ++n) err = std::max(err, std::abs(diff.coeff(n) - bc.coeff(n)));
    EXPECT_LT(err, 1e-8);
  }
}

TEST(Blaschke, EigenPsiGramIsPositiveDefinite) {
  Rng rng(8);
  const BlaschkeProduct b(random_nodes(rng, 4, 0.7));
  const int N = 150;
  std::vector<TrigPoly1> psi;
  for (cplx zk : b.zeros()) psi.push_back(eigen_psi(b, zk, N));
  CMatrix Gm(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) Gm(i, j) = inner(psi[j], psi[i]);
  EXPECT_GT(min_eigenvalue(Gm), 1e-6);
}

TEST(Blaschke, DerivativeAtZero) {
  const BlaschkeProduct b({cplx{0.3, 0.1}, cplx{-0.4, 0.2}});
  const cplx z = b.zeros()[0];
  const double h = 1e-6;
  const cplx fd = (b.eval(z + h) - b.eval(z - h)) / (2 * h);
  EXPECT_NEAR(std::abs(derivative_at_zero(b, z) - fd), 0.0, 1e-8);
}

TEST(Blaschke, TensorProducts) {
  const BlaschkeProduct o({0.0});
  EXPECT_EQ(tensor(o, o, 3), TrigPoly2::monomial(1, 1).resized(3));
  Rng rng(9);
  const BlaschkeProduct b1(random_nodes(rng, 2, 0.6)), b2(random_nodes(rng, 1, 0.6));
  const auto t = tensor(b1, b2, 60);
  EXPECT_LT((sample(t, 64).cwiseAbs().array() - 1.0).abs().maxCoeff(), 1e-9);
  const auto single = tensor(b1, BlaschkeProduct{}, 60);
  EXPECT_EQ(single, lift(coeffs(b1, 60), Axis::x));
}
