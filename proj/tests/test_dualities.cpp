#include <gtest/gtest.h>

#include "support.hpp"

using namespace homolab;
using namespace support;

namespace {

QRingPtr ci(const Two& r) { return quotient(r.S, {r.x * r.x, r.y * r.y}); }
QRingPtr fatPoint(const Two& r) { return quotient(r.S, {r.x * r.x, r.x * r.y, r.y * r.y}); }

}  // namespace

TEST(PhiMap, FreeSourceIsIsomorphism) {
  std::mt19937_64 rng(71);
  Two r;
  auto R = quotient(r.S, {r.x * r.y});
  for (int t = 0; t < 8; ++t) {
    auto N = randomModule(rng, R), C = randomModule(rng, R);
    auto f = phiMap(GradedModule::free(R, {0, 1}), N, C);
    EXPECT_TRUE(f.isWellDefined());
    EXPECT_TRUE(iso(f)) << "trial " << t;
  }
}

TEST(PhiMap, RingCoefficientsGiveIsomorphism) {
  std::mt19937_64 rng(72);
  Two r;
  auto R = ci(r);
  for (int t = 0; t < 8; ++t) {
    auto M = randomModule(rng, R), N = randomModule(rng, R);
    EXPECT_TRUE(iso(phiMap(M, N, support::R(R)))) << "trial " << t;
  }
}

TEST(PhiMap, ResidueFieldWithCanonicalModule) {
  Two r;
  auto R = fatPoint(r);
  auto f = phiMap(k(R), k(R), canonicalModule(R));
  EXPECT_TRUE(f.isWellDefined());
  // Hom(k,k) (x) w and Hom(k, k (x) w) are both k^2; bijectivity itself is only recorded
  EXPECT_EQ(engineHilbert(minimalize(f.source), -3, 3), engineHilbert(minimalize(f.target), -3, 3));
  EXPECT_NO_THROW(mapDiagnostics(f));
}

TEST(PhiMap, RingMismatchThrows) {
  Two r;
  EXPECT_THROW(phiMap(k(quotient(r.S)), k(ci(r)), k(ci(r))), StructuralError);
}

TEST(ExtComparison, RingCoefficients) {
  std::mt19937_64 rng(73);
  Two r;
  auto R = quotient(r.S, {r.x * r.y});
  for (int t = 0; t < 6; ++t) {
    auto M = randomModule(rng, R), N = randomModule(rng, R);
    for (auto& b : extComparison(M, N, support::R(R), 2)) {
      EXPECT_TRUE(b.cochainIso);
      EXPECT_TRUE(b.diagnostics.isIsomorphism) << "trial " << t << " i " << b.i;
    }
  }
}

TEST(ExtComparison, FreeSource) {
  Two r;
  auto R = fatPoint(r);
  auto bs = extComparison(GradedModule::free(R, {0}), k(R), canonicalModule(R), 2);
  ASSERT_EQ(bs.size(), 3u);
  EXPECT_FALSE(bs[0].lhs.isZero());
  EXPECT_TRUE(bs[0].diagnostics.isIsomorphism);
  for (int i = 1; i <= 2; ++i) {
    EXPECT_TRUE(bs[i].lhs.isZero());
    EXPECT_TRUE(bs[i].rhs.isZero());
  }
}

TEST(ExtComparison, GorensteinCanonicalModule) {
  std::mt19937_64 rng(74);
  Two r;
  auto R = ci(r);
  auto w = canonicalModule(R);
  for (int t = 0; t < 6; ++t) {
    auto M = randomModule(rng, R);
    for (auto& b : extComparison(M, support::R(R), w, 2)) {
      EXPECT_TRUE(b.cochainIso);
      EXPECT_TRUE(b.diagnostics.isIsomorphism) << "trial " << t << " i " << b.i;
    }
  }
}

TEST(ExtComparison, DegreeZeroMatchesPhi) {
  std::mt19937_64 rng(75);
  Two r;
  auto R = fatPoint(r);
  auto w = canonicalModule(R);
  for (int t = 0; t < 6; ++t) {
    auto M = randomModule(rng, R), N = randomModule(rng, R);
    auto b = extComparison(M, N, w, 0)[0];
    auto f = phiMap(M, N, w);
    auto d = mapDiagnostics(f);
    EXPECT_EQ(engineHilbert(b.lhs, -5, 5), engineHilbert(f.source, -5, 5));
    EXPECT_EQ(engineHilbert(b.rhs, -5, 5), engineHilbert(f.target, -5, 5));
    EXPECT_EQ(b.diagnostics.isIsomorphism, d.isIsomorphism) << "trial " << t;
    EXPECT_EQ(b.diagnostics.isInjective, d.isInjective) << "trial " << t;
    EXPECT_EQ(b.diagnostics.isSurjective, d.isSurjective) << "trial " << t;
  }
}

TEST(Spherical, ResidueFieldOfPlane) {
  Two r;
  auto S = quotient(r.S);
  auto rep = sphericalConstruction(k(S));
  EXPECT_EQ(rep.n, 2);
  EXPECT_TRUE(rep.dualExact);
  EXPECT_TRUE(rep.lowExtVanish);
  EXPECT_TRUE(rep.topExtIsoM);
  EXPECT_TRUE(rep.pdBoundHolds);
  EXPECT_EQ(engineHilbert(rep.N, -3, 1), (std::vector<std::int64_t>{0, 1, 0, 0, 0}));
  for (int i = rep.dual.low() + 2; i <= rep.dual.high(); ++i)
    EXPECT_TRUE(oracle::productVanishes(rep.dual.differential(i - 1), rep.dual.differential(i), S));
}

TEST(Spherical, HyperplaneQuotient) {
  Two r;
  auto S = quotient(r.S);
  auto rep = sphericalConstruction(cyclic(S, {r.x}));
  EXPECT_EQ(rep.n, 1);
  EXPECT_EQ(rep.N.degrees(), std::vector<int>{-1});
  EXPECT_EQ(engineHilbert(rep.N, -1, 3), engineHilbert(cyclic(S, {r.x}).twist(1), -1, 3));
  EXPECT_TRUE(rep.topExtIsoM);
  EXPECT_TRUE(rep.toJson()["topExtIsoM"].get<bool>());
}

TEST(Spherical, GradeZeroRejected) {
  Two r;
  auto R = quotient(r.S, {r.x * r.y});
  EXPECT_THROW(sphericalConstruction(support::R(R)), StructuralError);
  EXPECT_THROW(sphericalConstruction(k(fatPoint(r))), StructuralError);
}

TEST(Spherical, RandomPerfectModulesOverPlane) {
  std::mt19937_64 rng(76);
  Two r;
  auto S = quotient(r.S);
  int tried = 0;
  for (int t = 0; t < 30 && tried < 8; ++t) {
    auto M = minimalize(randomModule(rng, S));
    if (M.isZero() || grade(M) == 0) continue;
    ++tried;
    auto rep = sphericalConstruction(M);
    EXPECT_TRUE(rep.dualExact) << "trial " << t;
    EXPECT_TRUE(rep.lowExtVanish) << "trial " << t;
    EXPECT_TRUE(rep.pdBoundHolds) << "trial " << t;
  }
  EXPECT_GT(tried, 0);
}
