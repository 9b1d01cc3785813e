#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "resolution.hpp"

namespace homolab {

/// Hilbert series as numerator(t) / (1 - t)^n with an integer Laurent numerator.
struct HilbertSeries {
  std::map<int, std::int64_t> numerator;
  int nvars = 0;

  bool isZero() const { return numerator.empty(); }

  /// dim_k of the degree-d part.
  std::int64_t at(int d) const {
    std::int64_t s = 0;
    for (auto& [j, c] : numerator) {
      int e = d - j;
      if (e < 0) continue;
      s += c * binom(e + nvars - 1, nvars - 1);
    }
    return s;
  }

  /// Numerator with all factors (1 - t) divided out, lowest exponent first, and how many were removed.
  std::pair<int, std::vector<std::int64_t>> reduced() const {
    int lo = numerator.begin()->first, hi = numerator.rbegin()->first;
    std::vector<std::int64_t> p(hi - lo + 1, 0);
    for (auto& [j, c] : numerator) p[j - lo] = c;
    int k = 0;
    for (;;) {
      std::int64_t s = 0;
      for (auto c : p) s += c;
      if (s != 0 || p.size() < 2) return {k, p};
      // divide by (1 - t): q_i = sum_{l <= i} p_l
      std::vector<std::int64_t> q(p.size() - 1);
      std::int64_t acc = 0;
      for (std::size_t i = 0; i + 1 < p.size(); ++i) q[i] = acc += p[i];
      p = std::move(q);
      ++k;
    }
  }

  /// Order of vanishing of the numerator at t = 1 (at most nvars for a module).
  int orderAtOne() const { return numerator.empty() ? -1 : reduced().first; }

  /// Reduced form, e.g. "(3*t^-1 - 3)/(1-t)" or "1 + 2*t".
  std::string toString() const {
    if (numerator.empty()) return "0";
    auto [k, p] = reduced();
    const int lo = numerator.begin()->first;
    std::string s;
    int terms = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      std::int64_t c = p[i];
      if (c == 0) continue;
      int j = lo + static_cast<int>(i);
      ++terms;
      if (!s.empty()) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      std::int64_t a = c < 0 ? -c : c;
      if (j == 0) s += std::to_string(a);
      else s += (a == 1 ? "" : std::to_string(a) + "*") + "t" + (j == 1 ? "" : "^" + std::to_string(j));
    }
    int e = nvars - k;
    if (e == 0) return s;
    if (terms > 1) s = "(" + s + ")";
    return s + "/(1-t)" + (e == 1 ? "" : "^" + std::to_string(e));
  }

  static std::int64_t binom(int n, int k) {
    if (k < 0 || n < k) return 0;
    if (k == 0) return 1;
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
  }
};

inline HilbertSeries hilbertSeries(const GradedModule& M) {
  HilbertSeries h;
  h.nvars = M.ring()->nvars();
  FreeResolution F = coverResolution(M);
  for (std::size_t i = 0; i < F.ranks.size(); ++i)
    for (int d : F.ranks[i]) h.numerator[d] += (i % 2 ? -1 : 1);
  std::erase_if(h.numerator, [](const auto& kv) { return kv.second == 0; });
  return h;
}

namespace detail {
inline void requireNonzero(const GradedModule& M, const char* what) {
  if (M.isZero()) throw ZeroModuleError(std::string(what) + ": zero module");
}
inline GradedModule ringModule(const QRingPtr& ring) { return GradedModule::free(ring, {0}); }
}  // namespace detail

struct DimDepth {
  int dim = 0;
  int depth = 0;
};

namespace detail {
template <class T, class Fn>
T cachedFor(const GradedModule& M, const std::string& tag, Fn&& fn) {
  return *M.ring()->cached<T>(tag + "|" + M.fingerprint(), std::forward<Fn>(fn));
}
}  // namespace detail

inline DimDepth dimDepth(const GradedModule& M) {
  detail::requireNonzero(M, "dimDepth");
  return detail::cachedFor<DimDepth>(M, "dimdepth", [&] {
    HilbertSeries h = hilbertSeries(M);
    FreeResolution F = coverResolution(M);
    int pd = 0;
    for (std::size_t i = 0; i < F.ranks.size(); ++i)
      if (!F.ranks[i].empty()) pd = static_cast<int>(i);
    return DimDepth{h.nvars - h.orderAtOne(), h.nvars - pd};
  });
}

inline int depthOf(const GradedModule& M) { return dimDepth(M).depth; }
inline bool isCohenMacaulay(const GradedModule& M) {
  auto dd = dimDepth(M);
  return dd.dim == dd.depth;
}

/// mu^i(M) = dim_k Ext^i(k, M).
inline int bassNumber(const GradedModule& M, int i) {
  return static_cast<int>(extModule(GradedModule::residueField(M.ring()), M, i).rank());
}

inline std::vector<int> bettiNumbers(const GradedModule& M, int upTo) {
  FreeResolution F = minimalFreeResolution(M, upTo);
  std::vector<int> out;
  for (int i = 0; i <= upTo; ++i) out.push_back(F.betti(i));
  return out;
}

struct FinitenessVerdict {
  enum class Status { Finite, Infinite, Unknown };
  Status status = Status::Unknown;
  int value = 0;
  int bound = 0;
  std::string certificate;

  static FinitenessVerdict finite(int v, std::string cert) { return {Status::Finite, v, 0, std::move(cert)}; }
  static FinitenessVerdict infinite(std::string cert) { return {Status::Infinite, 0, 0, std::move(cert)}; }
  static FinitenessVerdict unknown(int bound, std::string cert) { return {Status::Unknown, 0, bound, std::move(cert)}; }

  bool isFinite() const { return status == Status::Finite; }
  bool isInfinite() const { return status == Status::Infinite; }
  bool isUnknown() const { return status == Status::Unknown; }

  std::string statusName() const {
    switch (status) {
      case Status::Finite: return "finite";
      case Status::Infinite: return "infinite";
      default: return "unknown";
    }
  }

  nlohmann::json toJson() const {
    nlohmann::json j;
    j["status"] = statusName();
    if (isFinite()) j["value"] = value;
    if (isUnknown()) j["bound"] = bound;
    j["certificate"] = certificate;
    return j;
  }

  std::string toString() const {
    if (isFinite()) return "finite(" + std::to_string(value) + ") [" + certificate + "]";
    if (isUnknown()) return "unknown(bound " + std::to_string(bound) + ") [" + certificate + "]";
    return "infinite [" + certificate + "]";
  }
};

struct RingProfile {
  int depthR = 0;
  int dimR = 0;
  bool isCM = false;
  bool isGorenstein = false;
  int typeR = 1;
  std::optional<GradedModule> omega;

  nlohmann::json toJson() const {
    return {{"depth", depthR}, {"dim", dimR}, {"cohenMacaulay", isCM}, {"gorenstein", isGorenstein}, {"type", typeR},
            {"hasCanonicalModule", omega.has_value()}};
  }
};

/// K^i(M) = Ext_S^{n-i}(M, S)(-n), viewed over the ring of M.
inline GradedModule deficiency(const GradedModule& M, int i) {
  const auto& ring = M.ring();
  const int n = ring->nvars();
  if (i < 0 || i > n || M.isZero()) return GradedModule::zero(ring);
  GradedModule MS = M.overCover();
  GradedModule S = GradedModule::free(MS.ring(), {0});
  GradedModule E = extModule(MS, S, n - i).twist(-n);
  return minimalize(E.overRing(ring));
}

namespace detail {
inline RingProfile computeProfile(const QRingPtr& ring) {
  RingProfile p;
  GradedModule R = ringModule(ring);
  auto dd = dimDepth(R);
  p.depthR = dd.depth;
  p.dimR = dd.dim;
  p.isCM = dd.depth == dd.dim;
  p.typeR = bassNumber(R, dd.depth);
  p.isGorenstein = p.isCM && p.typeR == 1;
  if (p.isCM) p.omega = deficiency(R, p.dimR);
  return p;
}
}  // namespace detail

inline const RingProfile& ringProfile(const QRingPtr& ring) {
  return *ring->cached<RingProfile>("profile", [&] { return detail::computeProfile(ring); });
}

inline GradedModule canonicalModule(const QRingPtr& ring) {
  const auto& p = ringProfile(ring);
  if (!p.isCM) throw UnsupportedError("canonicalModule: ring is not Cohen-Macaulay");
  return *p.omega;
}

struct TypeAndMu {
  int type = 0;
  int mu = 0;
};

inline TypeAndMu typeAndMu(const GradedModule& M) {
  detail::requireNonzero(M, "typeAndMu");
  return {bassNumber(M, depthOf(M)), static_cast<int>(minimalize(M).rank())};
}

inline int grade(const GradedModule& M) {
  detail::requireNonzero(M, "grade");
  GradedModule R = detail::ringModule(M.ring());
  const int t = ringProfile(M.ring()).depthR;
  for (int i = 0; i <= t; ++i)
    if (!extModule(M, R, i).isZero()) return i;
  throw StructuralError("grade: no nonvanishing Ext up to depth R");
}

namespace detail {

inline FinitenessVerdict computeProjDim(const GradedModule& M) {
  const int s = ringProfile(M.ring()).depthR - depthOf(M);
  if (s < 0) return FinitenessVerdict::infinite("ab-negative");
  FreeResolution F = minimalFreeResolution(M, s + 1);
  if (F.betti(s + 1) != 0) return FinitenessVerdict::infinite("resolution-continues");
  int pd = 0;
  for (int i = 0; i <= s; ++i)
    if (F.betti(i)) pd = i;
  return FinitenessVerdict::finite(pd, "resolution-terminates");
}

inline FinitenessVerdict computeInjDim(const GradedModule& M) {
  const int t = ringProfile(M.ring()).depthR;
  const int B = std::max(t, depthOf(M));
  if (bassNumber(M, B + 1) == 0) return FinitenessVerdict::finite(t, "bass-window");
  return FinitenessVerdict::infinite("bass-window");
}

}  // namespace detail

inline FinitenessVerdict projDim(const GradedModule& M) {
  detail::requireNonzero(M, "projDim");
  return detail::cachedFor<FinitenessVerdict>(M, "projDim", [&] { return detail::computeProjDim(M); });
}

inline FinitenessVerdict injDim(const GradedModule& M) {
  detail::requireNonzero(M, "injDim");
  return detail::cachedFor<FinitenessVerdict>(M, "injDim", [&] { return detail::computeInjDim(M); });
}

/// The natural map G -> G** (duals into R).
inline ModuleMap bidualityMap(const GradedModule& G) {
  const auto& ring = G.ring();
  GradedModule R = detail::ringModule(ring);
  HomModule dual = homModuleWithMaps(G, R);
  const GradedModule& Gs = dual.module();
  HomModule bidual = homModuleWithMaps(Gs, R);
  std::vector<ModuleMap> evals;
  for (std::size_t h = 0; h < Gs.rank(); ++h) evals.push_back(dual.evalGenerator(h));
  std::vector<Vec> images;
  for (std::size_t j = 0; j < G.rank(); ++j) {
    std::vector<Vec> at;
    for (auto& phi : evals) at.push_back(phi.matrix.column(j));
    ModuleMap ev(Gs, R, at, G.degrees()[j]);
    images.push_back(bidual.represent(ev));
  }
  return ModuleMap(G, bidual.module(), images);
}

namespace detail {

inline FinitenessVerdict computeGDim(const GradedModule& M, int bound) {
  auto pd = projDim(M);
  if (pd.isFinite()) return FinitenessVerdict::finite(pd.value, "pd-finite");
  const auto& prof = ringProfile(M.ring());
  const int t = prof.depthR, dM = depthOf(M);
  if (prof.isGorenstein) return FinitenessVerdict::finite(t - dM, "gorenstein-ring");
  GradedModule R = ringModule(M.ring());
  for (int i = t + 1; i <= t + bound; ++i)
    if (!extModule(M, R, i).isZero()) return FinitenessVerdict::infinite("ext-nonvanishing");
  if (t - dM < 0) return FinitenessVerdict::infinite("ab-negative");
  GradedModule G = syzygyModule(M, t - dM);
  if (!mapDiagnostics(bidualityMap(G)).isIsomorphism) return FinitenessVerdict::infinite("not-reflexive");
  GradedModule Gs = homModule(G, R);
  for (int i = 1; i <= bound; ++i) {
    if (!extModule(G, R, i).isZero()) return FinitenessVerdict::infinite("syzygy-ext-nonvanishing");
    if (!Gs.isZero() && !extModule(Gs, R, i).isZero()) return FinitenessVerdict::infinite("dual-ext-nonvanishing");
  }
  return FinitenessVerdict::unknown(bound, "totally-reflexive-up-to-bound");
}

}  // namespace detail

inline FinitenessVerdict gDim(const GradedModule& M, int bound) {
  detail::requireNonzero(M, "gDim");
  if (bound < 1) throw StructuralError("gDim: bound must be positive");
  return detail::cachedFor<FinitenessVerdict>(M, "gDim|" + std::to_string(bound),
                                              [&] { return detail::computeGDim(M, bound); });
}

inline FinitenessVerdict gInjDim(const GradedModule& M, int bound) {
  detail::requireNonzero(M, "gInjDim");
  const auto& prof = ringProfile(M.ring());
  if (!prof.isCM) throw UnsupportedError("gInjDim: ring is not Cohen-Macaulay");
  return detail::cachedFor<FinitenessVerdict>(M, "gInjDim|" + std::to_string(bound), [&] {
    GradedModule H = homModule(*prof.omega, M);
    if (H.isZero()) return FinitenessVerdict::infinite("omega-hom-vanishes");
    auto v = gDim(H, bound);
    if (v.isFinite()) return FinitenessVerdict::finite(prof.depthR, "cfh-formula");
    if (v.isInfinite()) return FinitenessVerdict::infinite("via-omega-reduction");
    return FinitenessVerdict::unknown(bound, "via-omega-reduction");
  });
}

}  // namespace homolab
