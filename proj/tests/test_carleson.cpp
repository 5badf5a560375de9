#include <gtest/gtest.h>

#include "nehari/carleson.hpp"
#include "nehari/random.hpp"

using namespace nehari;

namespace {

DiscreteMeasure random_measure(Rng& rng, int atoms, double r) {
  DiscreteMeasure m;
  for (int k = 0; k < atoms; ++k) m.atoms.push_back({random_in_disk(rng, r), random_in_disk(rng, r), uniform(rng, 0.1, 1.0)});
  return m;
}

}  // namespace

TEST(Carleson, OriginAtomIsAProjector) {
  DiscreteMeasure m;
  m.atoms.push_back({0.0, 0.0, 1.0});
  EXPECT_NEAR(m.atoms[0].nu(), 1.0, 0.0);
  EXPECT_NEAR(embedding_constant(m, 8).C, 1.0, 1e-14);
  EXPECT_NEAR(vector_hankel_constant(m, 8).C, 1.0, 1e-14);
}

TEST(Carleson, EmptyMeasureGivesZero) {
  EXPECT_EQ(embedding_constant(DiscreteMeasure{}, 6).C, 0.0);
  EXPECT_EQ(vector_hankel_constant(DiscreteMeasure{}, 6).C, 0.0);
}

TEST(Carleson, InvalidAtomsAreRejected) {
  DiscreteMeasure m;
  m.atoms.push_back({1.0, 0.0, 1.0});
  EXPECT_THROW(embedding_constant(m, 4), ConfigError);
  m.atoms[0] = {0.1, 0.0, -1.0};
  EXPECT_THROW(vector_hankel_constant(m, 4), ConfigError);
}

TEST(Carleson, TwoAtomsAreBracketed) {
  DiscreteMeasure m;
  m.atoms.push_back({cplx(0.6, 0.0), cplx(0.6, 0.0), 0.5});
  m.atoms.push_back({cplx(-0.6, 0.0), cplx(-0.6, 0.0), 0.5});
  const double C2 = std::pow(embedding_constant(m, 12).C, 2);
  EXPECT_LE(C2, m.atoms[0].nu() + m.atoms[1].nu() + 1e-12);
  EXPECT_GE(C2, std::max(m.atoms[0].nu(), m.atoms[1].nu()) * (1.0 - 1e-3));
}

TEST(Carleson, TwoAssembliesAgree) {
  Rng rng(41);
  for (int t = 0; t < 5; ++t) {
    const DiscreteMeasure m = random_measure(rng, 5, 0.7);
    const CarlesonReport a = embedding_constant(m, 10), b = vector_hankel_constant(m, 10);
    EXPECT_LT(std::abs(a.C - b.C), 1e-9 * a.C);
    EXPECT_GE(a.drift, -1e-12);
  }
}

TEST(Carleson, DoublingWeightsScalesBySqrtTwo) {
  Rng rng(42);
  const DiscreteMeasure m = random_measure(rng, 4, 0.6);
  EXPECT_NEAR(embedding_constant(m.scaled(2.0), 8).C, std::sqrt(2.0) * embedding_constant(m, 8).C, 1e-12);
}

TEST(Carleson, AddingAnAtomNeverDecreases) {
  Rng rng(43);
  DiscreteMeasure m = random_measure(rng, 3, 0.6);
  const double before = embedding_constant(m, 8).C;
  m.atoms.push_back({random_in_disk(rng, 0.6), random_in_disk(rng, 0.6), 0.2});
  EXPECT_GE(embedding_constant(m, 8).C, before - 1e-14);
}

TEST(Carleson, QuadraticFormMatchesClosedFormNorms) {
  Rng rng(44);
  const DiscreteMeasure m = random_measure(rng, 3, 0.5);
  const int N = 6;
  const CMatrix A = detail::embedding_form(m, N);
  for (int t = 0; t < 5; ++t) {
    const TrigPoly2 f = random_poly<2>(rng, N, Sector::Pfull);
    CVector v((N + 1) * (N + 1));
    for (int a = 0; a <= N; ++a)
      for (int b = 0; b <= N; ++b) v(detail::box_index(a, b, N)) = f(a, b);
    const double q = v.dot(A * v).real();
    EXPECT_NEAR(q, embedding_energy(m, f), 1e-8 * q);
  }
}
