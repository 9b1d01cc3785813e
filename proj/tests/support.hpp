#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <homolab/homolab.hpp>

#include "oracle.hpp"

namespace support {

using namespace homolab;

inline RingPtr poly2(std::uint64_t p = 7) { return PolyRing::create(p, {"x", "y"}); }
inline RingPtr poly3(std::uint64_t p = 7) { return PolyRing::create(p, {"x", "y", "z"}); }

inline Polynomial var(const RingPtr& S, int i) { return Polynomial::variable(S, i); }
inline Polynomial cst(const RingPtr& S, std::int64_t c) { return Polynomial::constant(S, c); }

struct Two {
  RingPtr S = poly2();
  Polynomial x = var(S, 0), y = var(S, 1);
};
struct Three {
  RingPtr S = poly3();
  Polynomial x = var(S, 0), y = var(S, 1), z = var(S, 2);
};

inline QRingPtr quotient(const RingPtr& S, std::vector<Polynomial> ideal = {}) { return QuotientRing::create(S, std::move(ideal)); }

inline GradedModule R(const QRingPtr& ring) { return GradedModule::free(ring, {0}); }
inline GradedModule k(const QRingPtr& ring) { return GradedModule::residueField(ring); }
inline GradedModule cyclic(const QRingPtr& ring, std::vector<Polynomial> gens) { return GradedModule::cyclic(ring, gens); }

/// Random homogeneous form of the given degree with up to `terms` terms.
inline Polynomial randomForm(std::mt19937_64& rng, const RingPtr& S, int degree, int terms) {
  auto mons = monomialsOfDegree(S->nvars(), degree);
  std::vector<Polynomial::TermType> ts;
  for (int t = 0; t < terms; ++t)
    ts.emplace_back(mons[rng() % mons.size()], static_cast<std::uint32_t>(1 + rng() % (S->field().characteristic() - 1)));
  return Polynomial::fromTerms(S, ts);
}

/// Random homogeneous ideal generators of degree 1..maxDeg.
inline std::vector<Polynomial> randomIdeal(std::mt19937_64& rng, const RingPtr& S, int count, int maxDeg) {
  std::vector<Polynomial> out;
  while (static_cast<int>(out.size()) < count) {
    Polynomial f = randomForm(rng, S, 1 + static_cast<int>(rng() % maxDeg), 1 + static_cast<int>(rng() % 3));
    if (!f.isZero()) out.push_back(f);
  }
  return out;
}

/// Random presented module over ring: up to maxGens generators in degree 0 or 1, relations of degree <= 3.
inline GradedModule randomModule(std::mt19937_64& rng, const QRingPtr& ring, int maxGens = 2) {
  const auto& S = ring->cover();
  int g = 1 + static_cast<int>(rng() % maxGens);
  std::vector<int> deg(g);
  for (auto& d : deg) d = static_cast<int>(rng() % 2);
  int r = static_cast<int>(rng() % (g + 2));
  std::vector<int> cd;
  std::vector<Vec> cols;
  for (int j = 0; j < r; ++j) {
    int D = 2 + static_cast<int>(rng() % 2);
    Vec v;
    for (int i = 0; i < g; ++i) {
      if (rng() % 3 == 0) continue;
      Polynomial f = randomForm(rng, S, D - deg[i], 1 + static_cast<int>(rng() % 2));
      for (auto& [m, c] : f.terms()) v.push_back({m, static_cast<std::uint32_t>(i), c});
    }
    vec::sortCombine(v, S->order(), S->field());
    if (v.empty()) continue;
    cd.push_back(D);
    cols.push_back(v);
  }
  return GradedModule(ring, deg, PolyMatrix(S, deg, cd, cols));
}

/// Hilbert function of a module from its presentation, by the oracle.
inline std::vector<std::int64_t> oracleHilbert(const GradedModule& M, int lo, int hi) {
  auto P = oracle::fromModule(M);
  std::vector<std::int64_t> out;
  for (int d = lo; d <= hi; ++d) out.push_back(oracle::hilbertFunction(P, d));
  return out;
}

/// Hilbert function from the library's Hilbert series.
inline std::vector<std::int64_t> engineHilbert(const GradedModule& M, int lo, int hi) {
  std::vector<std::int64_t> out;
  HilbertSeries h = hilbertSeries(M);
  for (int d = lo; d <= hi; ++d) out.push_back(h.at(d));
  return out;
}

inline bool iso(const ModuleMap& f) { return mapDiagnostics(f).isIsomorphism; }

}  // namespace support
