#include <gtest/gtest.h>

#include "support.hpp"

using namespace homolab;
using namespace support;

namespace {

Polynomial randomPoly(std::mt19937_64& rng, const RingPtr& S) {
  std::vector<Polynomial::TermType> ts;
  int n = static_cast<int>(rng() % 4);
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(S->nvars());
    for (auto& x : e) x = static_cast<int>(rng() % 3);
    ts.emplace_back(Monomial(e), static_cast<std::uint32_t>(rng() % S->field().characteristic()));
  }
  return Polynomial::fromTerms(S, ts);
}

Monomial randomMonomial(std::mt19937_64& rng, int n) {
  std::vector<int> e(n);
  for (auto& x : e) x = static_cast<int>(rng() % 4);
  return Monomial(e);
}

}  // namespace

TEST(Field, InverseAndArithmetic) {
  PrimeField F(7);
  for (std::uint32_t a = 1; a < 7; ++a) EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
  EXPECT_EQ(F.fromInt(-1), 6u);
  EXPECT_EQ(F.toSigned(6), -1);
  EXPECT_THROW(F.inv(0), StructuralError);
  EXPECT_THROW(PrimeField(6), StructuralError);
}

TEST(MonomialCompare, GrevlexDegreeTie) {
  MonomialOrder ord{OrderKind::Grevlex, 2};
  EXPECT_EQ(monomialCompare(Monomial{2, 0}, Monomial{1, 1}, ord), std::strong_ordering::greater);
}

TEST(MonomialCompare, Reflexive) {
  MonomialOrder ord{OrderKind::Grevlex, 3};
  Monomial a{1, 2, 3};
  EXPECT_EQ(monomialCompare(a, a, ord), std::strong_ordering::equal);
}

TEST(MonomialCompare, LexIgnoresDegree) {
  MonomialOrder ord{OrderKind::Lex, 3};
  EXPECT_EQ(monomialCompare(Monomial{1, 0, 0}, Monomial{0, 2, 3}, ord), std::strong_ordering::greater);
}

TEST(MonomialCompare, RejectsMismatchedVariables) {
  MonomialOrder ord{OrderKind::Grevlex, 2};
  EXPECT_THROW(monomialCompare(Monomial{1, 0}, Monomial{1, 0, 0}, ord), StructuralError);
}

TEST(MonomialCompare, OrderAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (auto kind : {OrderKind::Grevlex, OrderKind::Lex}) {
    MonomialOrder ord{kind, 3};
    for (int t = 0; t < 3000; ++t) {
      Monomial a = randomMonomial(rng, 3), b = randomMonomial(rng, 3), c = randomMonomial(rng, 3);
      int ab = ord.cmp(a, b), ba = ord.cmp(b, a), bc = ord.cmp(b, c), ac = ord.cmp(a, c);
      EXPECT_EQ(ab, -ba);
      if (ab < 0 && bc < 0) EXPECT_LT(ac, 0);
      if (ab < 0) EXPECT_LT(ord.cmp(a * c, b * c), 0);
      if (ab == 0) EXPECT_TRUE(a == b);
    }
  }
}

TEST(Polynomial, DifferenceOfSquares) {
  Two r;
  EXPECT_EQ(polynomialProduct(r.x + r.y, r.x - r.y), r.x * r.x - r.y * r.y);
  EXPECT_EQ((r.x * r.x - r.y * r.y).toString(), "x^2 - y^2");
}

TEST(Polynomial, ZeroAbsorbs) {
  Two r;
  EXPECT_TRUE(((r.x + r.y) * Polynomial(r.S)).isZero());
}

TEST(Polynomial, FrobeniusInCharacteristicTwo) {
  auto S = PolyRing::create(2, {"x", "y"});
  auto x = var(S, 0), y = var(S, 1);
  EXPECT_EQ((x + y).pow(2), x * x + y * y);
}

TEST(Polynomial, RingAxiomsOnRandomTriples) {
  for (std::uint64_t p : {2ull, 7ull, 32003ull}) {
    auto S = PolyRing::create(p, {"x", "y", "z"});
    std::mt19937_64 rng(p);
    for (int t = 0; t < 10000; ++t) {
      Polynomial a = randomPoly(rng, S), b = randomPoly(rng, S), c = randomPoly(rng, S);
      ASSERT_EQ((a * b) * c, a * (b * c));
      ASSERT_EQ(a * (b + c), a * b + a * c);
      ASSERT_EQ(a * b, b * a);
      ASSERT_EQ((a + b) + c, a + (b + c));
      ASSERT_TRUE((a - a).isZero());
    }
  }
}

TEST(Polynomial, DegreeAndHomogeneity) {
  Two r;
  EXPECT_EQ(Polynomial(r.S).degree(), -1);
  EXPECT_TRUE((r.x * r.y + r.y * r.y).isHomogeneous());
  EXPECT_FALSE((r.x + r.x * r.x).isHomogeneous());
}

TEST(MatrixApply, Identity) {
  Two r;
  auto I = PolyMatrix::identity(r.S, {0, 0});
  std::vector<Polynomial> v{r.x, r.y + r.x};
  EXPECT_EQ(matrixApply(I, v), v);
}

TEST(MatrixApply, ZeroMatrix) {
  Two r;
  auto Z = PolyMatrix::zero(r.S, {0, 0}, {0, 0});
  for (auto& f : matrixApply(Z, {r.x, r.y})) EXPECT_TRUE(f.isZero());
}

TEST(MatrixApply, KoszulRelation) {
  Two r;
  auto A = PolyMatrix::fromEntries(r.S, {{r.y}, {-r.x}}, {0, 0}, {1});
  auto out = matrixApply(A, {cst(r.S, 1)});
  EXPECT_EQ(out[0], r.y);
  EXPECT_EQ(out[1], -r.x);
}

TEST(HomogeneityCheck, Examples) {
  Two r;
  EXPECT_TRUE(homogeneityCheck(PolyMatrix::fromEntries(r.S, {{r.x, r.y}}, {0}, {1, 1})));
  EXPECT_FALSE(homogeneityCheck(PolyMatrix::fromEntries(r.S, {{r.x + r.x * r.x}}, {0}, {1})));
  EXPECT_TRUE(homogeneityCheck(PolyMatrix::zero(r.S, {0, 3}, {5, -2})));
}

TEST(HomogeneityCheck, ClosedUnderProducts) {
  Three r;
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    std::vector<int> a{0, 1}, b{1, 2, 2}, c{3, 4};
    std::vector<std::vector<Polynomial>> A(2, std::vector<Polynomial>(3)), B(3, std::vector<Polynomial>(2));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 3; ++j) A[i][j] = randomForm(rng, r.S, b[j] - a[i], 2);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 2; ++j) B[i][j] = randomForm(rng, r.S, c[j] - b[i], 2);
    auto MA = PolyMatrix::fromEntries(r.S, A, a, b), MB = PolyMatrix::fromEntries(r.S, B, b, c);
    ASSERT_TRUE(homogeneityCheck(MA));
    ASSERT_TRUE(homogeneityCheck(MB));
    EXPECT_TRUE(homogeneityCheck(MA * MB));
  }
}

TEST(QuotientRing, ReducesModuloIdeal) {
  Two r;
  auto R = quotient(r.S, {r.x * r.y});
  EXPECT_TRUE(R->reduce(r.x * r.y * r.y).isZero());
  EXPECT_FALSE(R->reduce(r.x * r.x).isZero());
  EXPECT_THROW(quotient(r.S, {r.x + r.y * r.y}), StructuralError);
}

TEST(QuotientRing, CacheIsSharedPerRing) {
  Two r;
  auto R = quotient(r.S, {r.x * r.y});
  int calls = 0;
  auto a = R->cached<int>("k", [&] { return ++calls; });
  auto b = R->cached<int>("k", [&] { return ++calls; });
  EXPECT_EQ(*a, 1);
  EXPECT_EQ(*b, 1);
  EXPECT_EQ(calls, 1);
}
