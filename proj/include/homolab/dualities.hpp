#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "invariants.hpp"

namespace homolab {

namespace detail {

/// Pair-basis vectors over Hom(F, N) (index l*rank N + n) tensored with C's
/// generator c, sent to Hom(F, N (x) C) (index l*rank(N)*rank(C) + n*rank C + c).
inline Vec phiOnPairs(const Vec& v, std::size_t rankN, std::size_t rankC, std::size_t c) {
  Vec out;
  for (auto& t : v) {
    std::size_t l = t.comp / rankN, n = t.comp % rankN;
    out.push_back({t.m, static_cast<std::uint32_t>(l * rankN * rankC + n * rankC + c), t.coef});
  }
  return out;
}

inline nlohmann::json diagnosticsJson(const MapDiagnostics& d) {
  return {{"zero", d.isZero}, {"injective", d.isInjective}, {"surjective", d.isSurjective}, {"isomorphism", d.isIsomorphism}};
}

}  // namespace detail

/// Hom(M,N) (x) C -> Hom(M, N (x) C), phi (x) c |-> (m |-> phi(m) (x) c).
inline ModuleMap phiMap(const GradedModule& M, const GradedModule& N, const GradedModule& C) {
  requireSameRing(M, N);
  requireSameRing(M, C);
  HomModule H = homModuleWithMaps(M, N);
  GradedModule src = rawTensor(H.module(), C);
  GradedModule T = rawTensor(N, C);
  HomModule HT = homModuleWithMaps(M, T);
  const std::size_t rN = N.rank(), rC = C.rank();
  std::vector<Vec> images;
  for (std::size_t h = 0; h < H.module().rank(); ++h) {
    ModuleMap phi = H.evalGenerator(h);
    for (std::size_t c = 0; c < rC; ++c) {
      std::vector<Vec> cols;
      for (std::size_t j = 0; j < M.rank(); ++j) cols.push_back(detail::phiOnPairs(phi.matrix.column(j), rN, rC, c));
      ModuleMap f(M, T, cols, phi.degree + C.degrees()[c]);
      images.push_back(HT.represent(f));
    }
  }
  return ModuleMap(src, HT.module(), images);
}

struct ComparisonBundle {
  int i = 0;
  GradedModule lhs;  // Ext^i(M,N) (x) C
  GradedModule rhs;  // Ext^i(M, N (x) C)
  ModuleMap map;
  MapDiagnostics diagnostics;
  bool cochainIso = false;  // levelwise Phi on Hom(F_i, N) (x) C

  nlohmann::json toJson() const {
    return {{"i", i}, {"lhsRank", lhs.rank()}, {"rhsRank", rhs.rank()}, {"lhsZero", lhs.isZero()},
            {"rhsZero", rhs.isZero()}, {"diagnostics", detail::diagnosticsJson(diagnostics)}, {"cochainIso", cochainIso}};
  }
};

/// The natural maps Ext^i(M,N) (x) C -> Ext^i(M, N (x) C) for 0 <= i <= maxI,
/// built on a free resolution of M at cochain level and passed to homology.
inline std::vector<ComparisonBundle> extComparison(const GradedModule& M, const GradedModule& N, const GradedModule& C,
                                                   int maxI) {
  requireSameRing(M, N);
  requireSameRing(M, C);
  GradedModule T = rawTensor(N, C);
  FreeResolution F = minimalFreeResolution(M, maxI + 1);
  BoundedComplex X = F.toComplex();
  BoundedComplex HN = homComplex(X, moduleComplex(N));
  BoundedComplex HT = homComplex(X, moduleComplex(T));
  const std::size_t rN = N.rank(), rC = C.rank();
  std::vector<ComparisonBundle> out;
  for (int i = 0; i <= maxI; ++i) {
    ComparisonBundle b;
    b.i = i;
    Subquotient E = homologyOf(HN, -i);
    Subquotient ET = homologyOf(HT, -i);
    b.lhs = rawTensor(E.module, C);
    b.rhs = ET.module;
    std::vector<Vec> images;
    for (std::size_t g = 0; g < E.module.rank(); ++g)
      for (std::size_t c = 0; c < rC; ++c) images.push_back(ET.lift(detail::phiOnPairs(E.generators[g], rN, rC, c)));
    b.map = ModuleMap(b.lhs, b.rhs, images);
    b.diagnostics = mapDiagnostics(b.map);

    GradedModule Hi = HN.term(-i), Ti = HT.term(-i);
    GradedModule lvl = rawTensor(Hi, C);
    std::vector<Vec> li;
    for (std::size_t g = 0; g < Hi.rank(); ++g)
      for (std::size_t c = 0; c < rC; ++c)
        li.push_back(detail::phiOnPairs(vec::unit(M.ring()->nvars(), static_cast<std::uint32_t>(g)), rN, rC, c));
    b.cochainIso = mapDiagnostics(ModuleMap(lvl, Ti, li)).isIsomorphism;
    out.push_back(std::move(b));
  }
  return out;
}

struct SphericalReport {
  int n = 0;
  GradedModule N;
  BoundedComplex dual;            // 0 -> F_0* -> ... -> F_n*, F_k* in homological degree n-k
  bool dualExact = false;         // exact except at the end, where the cokernel is N
  bool lowExtVanish = false;      // Ext^i(N,R) = 0 for 1 <= i <= n-1
  bool topExtIsoM = false;        // natural M -> Ext^n(N,R) is an isomorphism
  std::optional<FinitenessVerdict> pdM, pdN;
  bool pdBoundHolds = true;       // pd N <= n whenever pd M is finite

  nlohmann::json toJson() const {
    nlohmann::json j{{"n", n}, {"dualExact", dualExact}, {"lowExtVanish", lowExtVanish}, {"topExtIsoM", topExtIsoM},
                     {"pdBoundHolds", pdBoundHolds}, {"generatorDegrees", N.degrees()}};
    if (pdM) j["pdM"] = pdM->toJson();
    if (pdN) j["pdN"] = pdN->toJson();
    return j;
  }
};

/// N = coker(d_n^*) for a minimal resolution F of M truncated at n = grade M.
inline SphericalReport sphericalConstruction(const GradedModule& M) {
  const int n = grade(M);
  if (n == 0) throw StructuralError("sphericalConstruction: grade of the module is 0");
  const auto& ring = M.ring();
  FreeResolution F = minimalFreeResolution(M, n);
  SphericalReport rep;
  rep.n = n;

  std::vector<GradedModule> terms;
  std::vector<PolyMatrix> diffs;
  for (int k = 0; k <= n; ++k) {
    std::vector<int> d = F.ranks[n - k];
    for (auto& x : d) x = -x;
    terms.push_back(GradedModule::free(ring, d));
  }
  for (int k = 1; k <= n; ++k) diffs.push_back(F.maps[n - k].transpose());
  rep.dual = BoundedComplex(ring, 0, terms, diffs);
  PolyMatrix top = F.maps[n - 1].transpose();
  rep.N = GradedModule(ring, top.rowDegrees(), top);

  rep.dualExact = true;
  for (int k = 1; k <= n; ++k)
    if (!homologyAt(rep.dual, k).isZero()) rep.dualExact = false;

  GradedModule R = detail::ringModule(ring);
  rep.lowExtVanish = true;
  for (int i = 1; i < n; ++i)
    if (!extModule(rep.N, R, i).isZero()) rep.lowExtVanish = false;

  // the dual complex resolves N; dualizing it back gives F_0 / im d_1 at the end
  Subquotient top2 = homologyOf(homComplex(rep.dual, moduleComplex(R)), -n);
  std::vector<Vec> images;
  for (std::size_t l = 0; l < F.module.rank(); ++l)
    images.push_back(top2.lift(vec::unit(ring->nvars(), static_cast<std::uint32_t>(l))));
  if (rep.dualExact) rep.topExtIsoM = mapDiagnostics(ModuleMap(F.module, top2.module, images)).isIsomorphism;

  rep.pdM = projDim(M);
  if (rep.pdM->isFinite() && !rep.N.isZero()) {
    rep.pdN = projDim(rep.N);
    rep.pdBoundHolds = rep.pdN->isFinite() && rep.pdN->value <= n;
  }
  return rep;
}

}  // namespace homolab
