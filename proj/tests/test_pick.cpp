#include <gtest/gtest.h>

#include "nehari/pick.hpp"
#include "nehari/random.hpp"

using namespace nehari;

namespace {

TrigPoly2 analytic2(Rng& rng, int N, double sup) {
  TrigPoly2 G = random_poly<2>(rng, N, Sector::Pfull);
  return G * (sup / sup_norm(G));
}

/// Pick matrix from explicit Szego kernels: <k_{z_k}, k_{z_j}> (1 - l_j conj(l_k)).
CMatrix kernel_pick(const std::vector<cplx>& z, const std::vector<cplx>& l) {
  const Eigen::Index n = static_cast<Eigen::Index>(z.size());
  std::vector<TrigPoly1> k;
  for (cplx a : z) k.push_back(kernel(a, 400).coeffs * (1.0 / kernel_constant(a)));
  CMatrix P(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index c = 0; c < n; ++c) {
      const auto a = static_cast<std::size_t>(j), b = static_cast<std::size_t>(c);
      P(j, c) = inner(k[b], k[a]) * (1.0 - l[a] * std::conj(l[b]));
    }
  return P;
}

}  // namespace

TEST(Pick1D, MatrixMatchesKernelInnerProducts) {
  Rng rng(31);
  const auto z = random_nodes(rng, 4, 0.6);
  std::vector<cplx> l;
  for (int k = 0; k < 4; ++k) l.push_back(random_in_disk(rng, 1.0));
  EXPECT_LT((pick_matrix_1d(z, l) - kernel_pick(z, l)).norm(), 1e-12);
}

TEST(Pick1D, CoincidentNodesAreRejected) {
  EXPECT_THROW(pick_matrix_1d({0.3, 0.3}, {0.1, 0.2}), ConfigError);
  EXPECT_THROW(pick_matrix_1d({0.3, 1.2}, {0.1, 0.2}), ConfigError);
}

TEST(Pick1D, SingleNodeWithUnitValueIsSingular) {
  const CMatrix P = pick_matrix_1d({cplx(0.2, 0.1)}, {std::polar(1.0, 0.7)});
  EXPECT_NEAR(std::abs(P(0, 0)), 0.0, 1e-15);
}

TEST(Pick1D, BridgeMatchesHankelNorm) {
  Rng rng(32);
  int clear = 0;
  for (int t = 0; t < 30; ++t) {
    const auto z = random_nodes(rng, 1 + t % 4, 0.7);
    const TrigPoly1 G = random_poly<1>(rng, 3, Sector::Px) * uniform(rng, 0.3, 2.0);
    const PickBridge1D br = pick_bridge_1d(z, G);
    EXPECT_LT(std::abs(br.gamma_norm - br.model_norm), 1e-9 * std::max(1.0, br.model_norm));
    if (std::abs(br.gamma_norm - 1.0) > 1e-2 && std::abs(br.min_eig) > 1e-6) {
      ++clear;
      EXPECT_EQ(br.psd, br.bounded);
    }
  }
  EXPECT_GT(clear, 20);
}

TEST(Pick2D, ConstantDataBelowOneGivesPositiveFamilies) {
  PickSystem s;
  s.z = {cplx(0.3, 0.1), cplx(-0.2, 0.4)};
  s.w = {cplx(0.1, -0.5), cplx(0.4, 0.2)};
  s.G = TrigPoly2::constant(0.5);
  const PickFamilies f = pick_matrices_2d(s);
  EXPECT_TRUE(f.psd);
  EXPECT_GT(f.min_eig_x, 0.0);
  EXPECT_LE(f.min_eig_x, f.min_eig_x_coarse);
}

TEST(Pick2D, ValidationCatchesBadSystems) {
  PickSystem s;
  s.z = {0.1, 0.1};
  s.w = {0.2, 0.3};
  s.G = TrigPoly2::constant(0.5);
  EXPECT_THROW(pick_matrices_2d(s), ConfigError);
  s.z = {0.1, 0.2};
  TrigPoly2 bad(1);
  bad(-1, 0) = 1.0;
  s.G = bad;
  EXPECT_THROW(pick_matrices_2d(s), ConfigError);
}

TEST(Corollary, PrincipalSplitInterpolates) {
  Rng rng(33);
  PickSystem s;
  s.z = random_nodes(rng, 3, 0.6);
  s.w = random_nodes(rng, 3, 0.6);
  for (int k = 0; k < 3; ++k) s.lambda.push_back(random_in_disk(rng, 0.3));
  const CorollaryResult r = corollary_matrices(s);
  EXPECT_LT(r.interp_error, 1e-12);
  for (int k = 0; k < 3; ++k)
    EXPECT_LT(std::abs(r.lambda1[static_cast<std::size_t>(k)] * r.lambda2[static_cast<std::size_t>(k)] -
                       s.lambda[static_cast<std::size_t>(k)]), 1e-15);
  // G1 (x) G2 interpolates lambda at the nodes of D^2.
  const TrigPoly2 P = r.product();
  for (int k = 0; k < 3; ++k)
    EXPECT_LT(std::abs(eval_bidisk(P, s.z[static_cast<std::size_t>(k)], s.w[static_cast<std::size_t>(k)]) -
                       s.lambda[static_cast<std::size_t>(k)]), 1e-12);
  EXPECT_GE(r.sup1, std::abs(r.lambda1[0]) - 1e-12);
}

TEST(Corollary, RejectsInconsistentSplit) {
  PickSystem s;
  s.z = {0.1};
  s.w = {0.2};
  s.lambda = {0.25};
  EXPECT_THROW(corollary_matrices(s, {0.5}, {0.4}), ConfigError);
  EXPECT_NO_THROW(corollary_matrices(s, {0.5}, {0.5}));
}

TEST(LineInterpolantTest, InterpolatesAndMatchesExactLineDistance) {
  Rng rng(34);
  const BlaschkeProduct b(random_nodes(rng, 2, 0.6));
  const TrigPoly2 G = analytic2(rng, 3, 1.0);
  const LineInterpolant L = line_interpolant(G, b, Axis::x, 16, 16);
  EXPECT_LT(L.interp_error, 1e-9);
  EXPECT_LT(L.analytic_leak, 1e-9);
  EXPECT_NEAR(L.sup, L.sup_exact, 5e-3 * L.sup_exact);
  EXPECT_LE(L.sup_exact, 1.0 + 1e-9);
}

TEST(Certificate, ContractiveDataSatisfiesAllImplications) {
  Rng rng(35);
  for (int t = 0; t < 3; ++t) {
    PickSystem s;
    s.z = random_nodes(rng, 2, 0.6);
    s.w = random_nodes(rng, 2, 0.6);
    s.G = analytic2(rng, 2, 0.9);
    const PickCertificate c = certify_via_hankel(s);
    EXPECT_TRUE(c.holds_i);
    EXPECT_TRUE(c.holds_ii);
    EXPECT_TRUE(c.holds_iv);
    EXPECT_TRUE(c.iv_implies_ii);
    EXPECT_TRUE(c.ii_implies_iv);
    EXPECT_TRUE(c.i_iff_iv);
    EXPECT_LE(c.gamma_norm_half, c.gamma_norm * (1.0 + 1e-12));
  }
}

TEST(Certificate, LargeDataFailsThePickCondition) {
  PickSystem s;
  s.z = {cplx(0.3, 0.1), cplx(-0.2, 0.4)};
  s.w = {cplx(0.1, -0.5), cplx(0.4, 0.2)};
  s.G = TrigPoly2::constant(2.0);
  const PickCertificate c = certify_via_hankel(s, {}, true);
  EXPECT_FALSE(c.holds_i);
  EXPECT_FALSE(c.holds_ii);
  EXPECT_FALSE(c.holds_iv);
  EXPECT_TRUE(c.i_iff_iv);
}
