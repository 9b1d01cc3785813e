#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace homolab;
using namespace support;

namespace {

std::set<std::vector<int>> leadExponents(const GroebnerBasis& gb) {
  std::set<std::vector<int>> out;
  for (auto& t : gb.leadingTerms()) out.insert(t.m.exponents());
  return out;
}

Vec applyCombination(const std::vector<Vec>& gens, const Vec& coeffs, const RingPtr& S) {
  Vec out;
  for (auto& t : coeffs) {
    Polynomial c = Polynomial::monomial(S, t.m, t.coef);
    out = vec::add(out, vec::timesPolynomial(gens[t.comp], c, S->order(), S->field()), S->order(), S->field());
  }
  return out;
}

}  // namespace

TEST(Buchberger, SingleGenerator) {
  Two r;
  auto gb = buchberger({r.x});
  ASSERT_EQ(gb.size(), 1u);
  EXPECT_EQ(toPolynomial(r.S, gb.generators()[0]), r.x);
}

TEST(Buchberger, SPairProducesCube) {
  Two r;
  auto gb = buchberger({r.x * r.x + r.y * r.y, r.x * r.y});
  EXPECT_EQ(gb.size(), 3u);
  EXPECT_EQ(leadExponents(gb), (std::set<std::vector<int>>{{2, 0}, {1, 1}, {0, 3}}));
  EXPECT_TRUE(gb.contains(toVec(r.y.pow(3))));
}

TEST(Buchberger, EmptyInputGeneratesZero) {
  Two r;
  auto gb = buchberger(r.S, GradedFreeModule({0}), {});
  EXPECT_EQ(gb.size(), 0u);
  EXPECT_EQ(normalForm(toVec(r.x), gb), toVec(r.x));
}

TEST(Buchberger, RejectsInhomogeneousInput) {
  Two r;
  EXPECT_THROW(buchberger({r.x + r.y * r.y}), StructuralError);
}

TEST(NormalForm, SingleDivisionStep) {
  Two r;
  auto gb = buchberger({r.x * r.x + r.y * r.y, r.x * r.y});
  EXPECT_EQ(normalForm(r.x * r.x, gb), -(r.y * r.y));
  EXPECT_TRUE(normalForm(Polynomial(r.S), gb).isZero());
  EXPECT_TRUE(normalForm(r.x * r.x + r.y * r.y, gb).isZero());
  EXPECT_TRUE(normalForm(r.x * r.y, gb).isZero());
}

TEST(NormalForm, MembershipAgreesWithLinearAlgebra) {
  std::mt19937_64 rng(2024);
  Three r;
  int checked = 0;
  for (int t = 0; t < 20; ++t) {
    auto gens = randomIdeal(rng, r.S, 1 + static_cast<int>(rng() % 3), 3);
    auto gb = buchberger(gens);
    std::vector<oracle::SparsePoly> og;
    for (auto& g : gens) og.push_back(oracle::fromPolynomial(g));
    for (int d = 1; d <= 8; ++d) {
      for (int s = 0; s < 4; ++s) {
        Polynomial f = randomForm(rng, r.S, d, 1 + static_cast<int>(rng() % 4));
        // half the samples are forced into the ideal
        if (s % 2 == 0) {
          Polynomial acc(r.S);
          for (auto& g : gens)
            if (g.degree() <= d) acc = acc + g * randomForm(rng, r.S, d - g.degree(), 2);
          f = acc;
        }
        bool engine = normalForm(f, gb).isZero();
        bool brute = oracle::inIdeal(oracle::fromPolynomial(f), og, 3, 7);
        ASSERT_EQ(engine, brute) << "ideal " << t << " degree " << d << " f = " << f.toString();
        ++checked;
      }
    }
  }
  EXPECT_EQ(checked, 20 * 8 * 4);
}

TEST(Buchberger, IndependentOfInputOrder) {
  std::mt19937_64 rng(7);
  Three r;
  for (int t = 0; t < 20; ++t) {
    auto gens = randomIdeal(rng, r.S, 3, 3);
    auto shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    auto a = buchberger(gens), b = buchberger(shuffled);
    for (auto& g : a.generators()) EXPECT_TRUE(b.contains(g));
    for (auto& g : b.generators()) EXPECT_TRUE(a.contains(g));
  }
}

TEST(SyzygyBasis, KoszulFirstSyzygy) {
  Two r;
  auto syz = syzygyBasis(r.S, GradedFreeModule({0}), {toVec(r.x), toVec(r.y)});
  ASSERT_EQ(syz.size(), 1u);
  Polynomial a(r.S), b(r.S);
  for (auto& t : syz[0]) (t.comp == 0 ? a : b) = (t.comp == 0 ? a : b) + Polynomial::monomial(r.S, t.m, t.coef);
  // (y, -x) up to a unit
  auto u = r.S->field().inv(a.leadCoefficient());
  EXPECT_EQ(a.scaled(u), r.y);
  EXPECT_EQ(b.scaled(u), -r.x);
}

TEST(SyzygyBasis, UnitHasNoSyzygies) {
  Two r;
  EXPECT_TRUE(syzygyBasis(r.S, GradedFreeModule({0}), {toVec(cst(r.S, 1))}).empty());
}

TEST(SyzygyBasis, KoszulSecondSyzygyMatchesBruteForce) {
  Three r;
  GradedFreeModule amb({1, 1, 1});
  std::vector<Vec> cols;
  auto col = [&](Polynomial a, Polynomial b, Polynomial c) {
    Vec v;
    for (auto [f, i] : {std::pair{a, 0u}, std::pair{b, 1u}, std::pair{c, 2u}})
      for (auto& [m, co] : f.terms()) v.push_back({m, i, co});
    vec::sortCombine(v, r.S->order(), r.S->field());
    return v;
  };
  Polynomial zero(r.S);
  cols.push_back(col(r.y, -r.x, zero));
  cols.push_back(col(r.z, zero, -r.x));
  cols.push_back(col(zero, r.z, -r.y));
  auto syz = syzygyBasis(r.S, amb, cols);
  ASSERT_EQ(syz.size(), 1u);
  EXPECT_TRUE(applyCombination(cols, syz[0], r.S).empty());
  for (int e = 2; e <= 4; ++e) {
    std::vector<std::vector<std::uint64_t>> rows;
    oracle::Presentation tgt;
    tgt.p = 7;
    tgt.n = 3;
    tgt.degrees = {1, 1, 1};
    oracle::Piece piece(tgt, e);
    std::size_t srcDim = 0;
    for (int j = 0; j < 3; ++j)
      for (auto& m : oracle::monomials(3, e - 2)) {
        oracle::SparseVec img;
        for (auto& t : cols[j]) {
          auto& s = img[{t.comp, oracle::add(t.m.exponents(), m)}];
          s = (s + t.coef) % 7;
        }
        rows.push_back(piece.coords(img));
        ++srcDim;
      }
    std::size_t kernel = srcDim - oracle::rankOf(rows, piece.dim(), 7);
    EXPECT_EQ(kernel, oracle::monomials(3, e - 3).size()) << "degree " << e;
  }
}

TEST(SyzygyBasis, EverySyzygyEvaluatesToZero) {
  std::mt19937_64 rng(99);
  Three r;
  for (int t = 0; t < 20; ++t) {
    std::vector<Vec> gens;
    for (auto& f : randomIdeal(rng, r.S, 3, 3)) gens.push_back(toVec(f));
    for (auto& s : syzygyBasis(r.S, GradedFreeModule({0}), gens)) EXPECT_TRUE(applyCombination(gens, s, r.S).empty());
  }
}

TEST(QuotientSyzygies, HypersurfaceFirstStep) {
  Two r;
  auto R = quotient(r.S, {r.x * r.y});
  auto syz = quotientSyzygies(R, {0}, {toVec(r.x)}, {1});
  ASSERT_EQ(syz.size(), 1u);
  Polynomial s = toPolynomial(r.S, syz[0]);
  EXPECT_EQ(s.scaled(r.S->field().inv(s.leadCoefficient())), r.y);
}

TEST(QuotientSyzygies, RegularRingMatchesSyzygyBasis) {
  Two r;
  auto R = quotient(r.S);
  auto a = quotientSyzygies(R, {0}, {toVec(r.x), toVec(r.y)}, {1, 1});
  auto b = syzygyBasis(r.S, GradedFreeModule({0}), {toVec(r.x), toVec(r.y)});
  EXPECT_EQ(a.size(), b.size());
}

TEST(QuotientSyzygies, CompleteIntersectionAnnihilator) {
  Two r;
  auto R = quotient(r.S, {r.x * r.x, r.y * r.y});
  auto syz = quotientSyzygies(R, {0}, {toVec(r.x)}, {1});
  ASSERT_EQ(syz.size(), 1u);
  Polynomial s = toPolynomial(r.S, syz[0]);
  EXPECT_EQ(s.scaled(r.S->field().inv(s.leadCoefficient())), r.x);
  // kernel of multiplication by x, degree by degree
  for (int d = 0; d <= 3; ++d) {
    oracle::Presentation P = oracle::fromModule(GradedModule::free(R, {0}));
    oracle::Piece src(P, d - 1), tgt(P, d);
    std::vector<std::vector<std::uint64_t>> rows;
    for (std::size_t q = 0; q < src.dim(); ++q) {
      oracle::SparseVec v;
      for (auto& [key, c] : src.basis(q)) v[{key.first, oracle::add(key.second, {1, 0})}] = c;
      rows.push_back(tgt.coords(v));
    }
    std::size_t kernel = src.dim() - oracle::rankOf(rows, tgt.dim(), 7);
    std::size_t expected = d == 2 || d == 3 ? 1 : 0;
    EXPECT_EQ(kernel, expected) << "degree " << d;
  }
}
