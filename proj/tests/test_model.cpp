#include <gtest/gtest.h>

#include "nehari/hankel.hpp"
#include "nehari/model.hpp"
#include "nehari/random.hpp"

using namespace nehari;

namespace {

TrigPoly2 analytic2(Rng& rng, int N) { return random_poly<2>(rng, N, Sector::Pfull); }
TrigPoly1 analytic1(Rng& rng, int N) { return random_poly<1>(rng, N, Sector::Px); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(ProjectKb, KillsMultiplesOfB) {
  const BlaschkeProduct b({cplx(0.3, 0.2), cplx(-0.4, 0.1)});
  const TrigPoly1 f = multiply(coeffs(b, 80), TrigPoly1::monomial(1));
  EXPECT_LT(norm2(project_Kb(f.resized(80), b, 20)), 1e-12);
}

TEST(ProjectKb, OriginZeroKeepsConstantTerm) {
  Rng rng(11);
  const TrigPoly1 f = analytic1(rng, 6);
  const TrigPoly1 p = project_Kb(f, BlaschkeProduct({0.0}), 6);
  EXPECT_NEAR(std::abs(p(0) - f(0)), 0.0, 1e-15);
  for (int k = 1; k <= 6; ++k) EXPECT_LT(std::abs(p(k)), 1e-15);
}

TEST(ProjectKb, Idempotent) {
  Rng rng(12);
  const BlaschkeProduct b({cplx(0.5, 0.1), cplx(-0.2, -0.6), cplx(0.1, 0.3)});
  for (int t = 0; t < 5; ++t) {
    const TrigPoly1 f = analytic1(rng, 10);
    const TrigPoly1 p = project_Kb(f, b, 60);
    EXPECT_LT(norm2(project_Kb(p, b, 60) - p), 1e-10 * norm2(p));
  }
}

TEST(ProjectKzz, KillsMultiplesOfTheProduct) {
  Rng rng(13);
  const cplx z(0.3, -0.2), zeta(-0.1, 0.45);
  const TrigPoly2 g = analytic2(rng, 3);
  const TrigPoly2 f = multiply(outer(coeffs(BlaschkeProduct({z}), 40), coeffs(BlaschkeProduct({zeta}), 40)), g);
  EXPECT_LT(norm2(project_Kzz(f, z, zeta, 40)), 1e-12);
}

TEST(ProjectKzz, ConstantFunction) {
  const cplx z(0.2, 0.5), zeta(-0.6, 0.1);
  const int N = 40;
  const double cz = kernel_constant(z), cw = kernel_constant(zeta);
  const TrigPoly1 kz = kernel(z, N).coeffs, kw = kernel(zeta, N).coeffs;
  TrigPoly1 one(N);
  one(0) = 1.0;
  const TrigPoly2 expect = cz * outer(kz, one) + cw * outer(one, kw) - (cz * cw) * outer(kz, kw);
  const TrigPoly2 p = project_Kzz(TrigPoly2::constant(1.0), z, zeta, N);
  EXPECT_LT(norm2(p - expect), 1e-14);
  const double closed = cz * cz + cw * cw - cz * cz * cw * cw;
  EXPECT_NEAR(norm_Kzz_closed(TrigPoly2::constant(1.0), z, zeta), closed, 1e-14);
  EXPECT_NEAR(std::pow(norm2(project_Kzz(TrigPoly2::constant(1.0), z, zeta, 200)), 2), closed, 1e-12);
}

TEST(ProjectKzz, ClosedFormMatchesTensorRoute) {
  Rng rng(14);
  for (int t = 0; t < 10; ++t) {
    const cplx z = random_in_disk(rng, 0.8), zeta = random_in_disk(rng, 0.8);
    const TrigPoly2 f = analytic2(rng, 8);
    const TrigPoly2 a = project_Kzz(f, z, zeta, 16), b = project_Kzz_tensor(f, z, zeta, 16);
    EXPECT_LT(norm2(a - b), 1e-9 * norm2(b));
  }
}

TEST(ProjectKzz, IdempotentAndSelfAdjoint) {
  Rng rng(15);
  const cplx z(0.4, 0.3), zeta(-0.5, -0.2);
  const int N = 120;
  const TrigPoly2 f = analytic2(rng, 6).resized(N), g = analytic2(rng, 6).resized(N);
  const TrigPoly2 pf = project_Kzz(f, z, zeta, N), pg = project_Kzz(g, z, zeta, N);
  EXPECT_LT(norm2(project_Kzz(pf, z, zeta, N) - pf), 1e-9 * norm2(pf));
  EXPECT_LT(std::abs(inner(pf, g) - inner(f, pg)), 1e-9);
}

TEST(NormKzz, ClosedFormMatchesProjection) {
  Rng rng(16);
  for (int t = 0; t < 20; ++t) {
    const cplx z = random_in_disk(rng, 0.7), zeta = random_in_disk(rng, 0.7);
    const TrigPoly2 f = analytic2(rng, 6);
    const double direct = std::pow(norm2(project_Kzz(f, z, zeta, 150)), 2);
    EXPECT_LT(rel(norm_Kzz_closed(f, z, zeta), direct), 1e-9);
  }
}

TEST(NormKzz, OriginReducesToSlices) {
  Rng rng(17);
  const TrigPoly2 f = analytic2(rng, 5);
  const double a = std::pow(norm2(slice_at_x(f, 0.0)), 2), b = std::pow(norm2(slice_at_y(f, 0.0)), 2);
  EXPECT_NEAR(norm_Kzz_closed(f, 0.0, 0.0), a + b - std::norm(f(0, 0)), 1e-14);
}

TEST(ModelSpace1Test, GramClosedFormMatchesSeries) {
  const ModelSpace1 S(BlaschkeProduct({cplx(0.6, 0.1), cplx(-0.3, 0.5), cplx(0.0, -0.7)}));
  EXPECT_LT((S.gram() - S.gram_series()).norm(), 1e-12);
}

TEST(ModelOpTest, ShiftIsDiagonal) {
  const std::vector<cplx> z{cplx(0.3, 0.1), cplx(-0.5, 0.2)};
  const ModelSpace1 S{BlaschkeProduct(z)};
  const ModelOp m = model_op(TrigPoly1::monomial(1), S);
  EXPECT_EQ(m.matrix(0, 0), z[0]);
  EXPECT_EQ(m.matrix(1, 1), z[1]);
  EXPECT_EQ(m.matrix(0, 1), cplx{});
  EXPECT_LT((model_op_projected(TrigPoly1::monomial(1), S) - m.matrix).norm(), 1e-10);
  EXPECT_NEAR(model_op(TrigPoly1::constant(1.0), S).norm, 1.0, 1e-12);
}

TEST(ModelOpTest, BlaschkeAnnihilates) {
  const BlaschkeProduct b({cplx(0.2, 0.3), cplx(-0.4, -0.1), cplx(0.5, -0.5)});
  const ModelSpace1 S(b);
  EXPECT_LT(model_op(coeffs(b, 40), S).norm, 1e-8);
}

TEST(ModelOpTest, ProjectedRouteMatchesDiagonal) {
  Rng rng(18);
  const ModelSpace1 S(BlaschkeProduct(random_nodes(rng, 3, 0.7)));
  const TrigPoly1 G = analytic1(rng, 4);
  EXPECT_LT((model_op_projected(G, S) - model_op(G, S).matrix).norm(), 1e-9);
}

TEST(ModelOpTest, ContractionIffPickMatrixIsPsd) {
  Rng rng(19);
  int agree = 0, total = 0;
  for (int t = 0; t < 40; ++t) {
    const auto z = random_nodes(rng, 1 + t % 4, 0.8);
    const TrigPoly1 G = analytic1(rng, 3) * uniform(rng, 0.5, 2.0);
    const double nrm = model_op(G, ModelSpace1(BlaschkeProduct(z))).norm;
    const Eigen::Index n = static_cast<Eigen::Index>(z.size());
    CMatrix P(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k) {
        const cplx gj = eval_disk(G, z[static_cast<std::size_t>(j)]), gk = eval_disk(G, z[static_cast<std::size_t>(k)]);
        P(j, k) = (1.0 - gj * std::conj(gk)) / (1.0 - z[static_cast<std::size_t>(j)] * std::conj(z[static_cast<std::size_t>(k)]));
      }
    if (std::abs(nrm - 1.0) < 1e-6) continue;
    ++total;
    agree += (nrm <= 1.0) == (min_eigenvalue(P) >= 0.0);
  }
  EXPECT_EQ(agree, total);
}

TEST(ModelSpace2Test, BlocksAreOrthogonalAndK0HasDimensionNSquared) {
  const BlaschkeProduct b1({cplx(0.3, 0.2), cplx(-0.4, 0.3)}), b2({cplx(0.1, -0.5), cplx(0.6, 0.0)});
  const ModelSpace2 S(b1, b2, 6);
  int k0 = 0;
  for (const auto& m : S.members()) k0 += m.block == ModelSpace2::Block::K0;
  EXPECT_EQ(k0, 4);
  const CMatrix g = S.gram();
  double cross = 0.0;
  for (int k = 0; k < S.dim(); ++k)
    for (int l = 0; l < S.dim(); ++l)
      if (S.members()[static_cast<std::size_t>(k)].block != S.members()[static_cast<std::size_t>(l)].block)
        cross = std::max(cross, std::abs(g(k, l)));
  EXPECT_LT(cross, 1e-12);
}

TEST(ModelSpace2Test, MembersAreOrthogonalToTheProductMultiples) {
  Rng rng(20);
  const BlaschkeProduct b1({cplx(0.3, 0.2)}), b2({cplx(-0.2, 0.4), cplx(0.5, 0.1)});
  const ModelSpace2 S(b1, b2, 4);
  const int D = std::max(S.degree_x(), S.degree_y());
  const TrigPoly2 B = outer(coeffs(b1, D), coeffs(b2, D));
  for (int t = 0; t < 3; ++t) {
    const TrigPoly2 h = multiply(B, analytic2(rng, 3));
    for (int k = 0; k < S.dim(); ++k) EXPECT_LT(std::abs(inner(S.member(k), h)), 1e-12);
  }
}

TEST(RestrictedNorm, AnalyticSymbolGivesZero) {
  Rng rng(21);
  const ModelSpace2 S(BlaschkeProduct({cplx(0.3, 0.1)}), BlaschkeProduct({cplx(-0.2, 0.2)}), 4);
  EXPECT_NEAR(restricted_norm(separate_lowrank(analytic2(rng, 3)), S), 0.0, 1e-12);
}

TEST(RestrictedNorm, MatchesArmNormOfTheFullOperator) {
  Rng rng(22);
  const BlaschkeProduct b1(random_nodes(rng, 2, 0.5)), b2(random_nodes(rng, 2, 0.5));
  const TrigPoly2 G = analytic2(rng, 2);
  const SeparableSymbol phi = conjugate_blaschke_times(b1, b2, G);
  const double r = restricted_norm(phi, ModelSpace2(b1, b2, 64));
  const double ref = BlaschkeGram(phi, 12).arm_norm({}, {}, 128).value;
  EXPECT_LT(rel(r, ref), 5e-3);
}

TEST(Multiplier, ZeroDataGivesZero) {
  const ModelSpace2 S(BlaschkeProduct({cplx(0.3, 0.1), cplx(0.0, 0.4)}),
                      BlaschkeProduct({cplx(-0.2, 0.2), cplx(0.5, 0.0)}), 6);
  const MultiplierReport r = multiplier_Gamma_phi(TrigPoly1(0), TrigPoly1(0), S);
  EXPECT_EQ(r.norm_multiplier, 0.0);
  EXPECT_EQ(r.norm_hankel, 0.0);
}

TEST(Multiplier, UnitDataMatchesConjugateBlaschkeHankel) {
  const BlaschkeProduct b1({cplx(0.3, 0.1), cplx(0.0, 0.4)}), b2({cplx(-0.2, 0.2), cplx(0.5, 0.0)});
  const MultiplierReport r = multiplier_Gamma_phi(TrigPoly1::constant(1.0), TrigPoly1::constant(1.0), ModelSpace2(b1, b2, 8));
  EXPECT_NEAR(r.norm_multiplier, 1.0, 1e-12);
  EXPECT_LT(r.relative_gap, 1e-12);
  // Direct SVD of the Hankel matrix of conj(b1 (x) b2): it is an isometry on K_{b1 b2}.
  const TrigPoly2 phi = conjugate(outer(coeffs(b1, 60), coeffs(b2, 60)));
  EXPECT_NEAR(op_norm(build(phi, 6)), 1.0, 1e-12);
}

TEST(Multiplier, EqualsRestrictedHankelNorm) {
  Rng rng(23);
  for (int t = 0; t < 3; ++t) {
    const BlaschkeProduct b1(random_nodes(rng, 2, 0.6)), b2(random_nodes(rng, 2, 0.6));
    const TrigPoly1 G1 = analytic1(rng, 3), G2 = analytic1(rng, 3);
    const MultiplierReport r = multiplier_Gamma_phi(G1, G2, ModelSpace2(b1, b2, 16));
    EXPECT_LT(r.relative_gap, 1e-10);
    EXPECT_GT(r.norm_multiplier, 0.0);
  }
}

TEST(Multiplier, RejectsUnequalDegrees) {
  const ModelSpace2 S(BlaschkeProduct({0.1}), BlaschkeProduct({0.2, -0.3}), 2);
  EXPECT_THROW(multiplier_Gamma_phi(TrigPoly1::constant(1.0), TrigPoly1::constant(1.0), S), ConfigError);
}
