#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "complex.hpp"

namespace homolab {

/// Graded Betti numbers beta_{i,j}.
struct BettiTable {
  std::map<std::pair<int, int>, int> beta;  // (i, j) -> beta_{i,j}
  int length = 0;                            // last homological degree computed
  bool complete = false;

  int at(int i, int j) const {
    auto it = beta.find({i, j});
    return it == beta.end() ? 0 : it->second;
  }
  int total(int i) const {
    int s = 0;
    for (auto& [k, v] : beta)
      if (k.first == i) s += v;
    return s;
  }

  /// Macaulay2-style grid: columns i, rows j - i.
  std::string toString() const {
    std::ostringstream os;
    if (beta.empty()) return "0\n";
    int rmin = 1 << 30, rmax = -(1 << 30);
    for (auto& [k, v] : beta) {
      rmin = std::min(rmin, k.second - k.first);
      rmax = std::max(rmax, k.second - k.first);
    }
    auto pad = [](const std::string& s, std::size_t w = 4) { return std::string(s.size() < w ? w - s.size() : 0, ' ') + s; };
    os << pad("", 6);
    for (int i = 0; i <= length; ++i) os << pad(std::to_string(i));
    os << "\n" << pad("total:", 6);
    for (int i = 0; i <= length; ++i) os << pad(std::to_string(total(i)));
    os << "\n";
    for (int r = rmin; r <= rmax; ++r) {
      os << pad(std::to_string(r) + ":", 6);
      for (int i = 0; i <= length; ++i) {
        int b = at(i, i + r);
        os << pad(b ? std::to_string(b) : ".");
      }
      os << "\n";
    }
    return os.str();
  }

  nlohmann::json toJson() const {
    nlohmann::json j;
    j["length"] = length;
    j["complete"] = complete;
    nlohmann::json entries = nlohmann::json::array();
    for (auto& [k, v] : beta) entries.push_back({{"i", k.first}, {"j", k.second}, {"beta", v}});
    j["entries"] = entries;
    nlohmann::json totals = nlohmann::json::array();
    for (int i = 0; i <= length; ++i) totals.push_back(total(i));
    j["totals"] = totals;
    return j;
  }
};

/// Minimal graded free resolution prefix F_0 <- F_1 <- ... <- F_L.
struct FreeResolution {
  GradedModule module;                  // minimal presentation of the resolved module
  std::vector<std::vector<int>> ranks;  // generator degrees of F_0..F_L
  std::vector<PolyMatrix> maps;         // maps[k] = d_{k+1}: F_{k+1} -> F_k
  bool minimal = true;
  bool complete = false;

  int length() const { return static_cast<int>(maps.size()); }
  int betti(int i) const { return i < static_cast<int>(ranks.size()) ? static_cast<int>(ranks[i].size()) : 0; }
  const PolyMatrix& differential(int i) const { return maps.at(i - 1); }

  BettiTable bettiTable() const {
    BettiTable t;
    t.length = static_cast<int>(ranks.size()) - 1;
    t.complete = complete;
    for (std::size_t i = 0; i < ranks.size(); ++i)
      for (int d : ranks[i]) t.beta[{static_cast<int>(i), d}]++;
    return t;
  }

  /// The resolution as a complex of free modules in degrees 0..L.
  BoundedComplex toComplex() const {
    const auto& ring = module.ring();
    std::vector<GradedModule> terms;
    for (auto& r : ranks) terms.push_back(GradedModule::free(ring, r));
    return BoundedComplex(ring, 0, terms, maps);
  }
};

namespace detail {

/// Incrementally extended resolution, shared through the ring cache.
struct ResolutionState {
  mutable std::mutex mu;
  mutable FreeResolution res;
  mutable std::vector<Vec> pending;  // syzygy candidates over the last free module
  mutable std::vector<int> pendingDeg;

  void step() const {
    const auto& ring = res.module.ring();
    const auto& S = ring->cover();
    const std::vector<int>& prev = res.ranks.back();
    std::vector<GbInput> in;
    for (std::size_t k = 0; k < pending.size(); ++k) in.push_back({pending[k], pendingDeg[k], InputRole::Optional});
    TrackedGroebner tg(S, ModuleOrder::termOverPosition(S->order(), prev), ring->idealTimesFree(prev.size()), in);
    std::vector<int> deg;
    std::vector<Vec> cols;
    for (std::size_t k = 0; k < in.size(); ++k)
      if (tg.kept(k)) {
        deg.push_back(in[k].degree);
        cols.push_back(in[k].v);
      }
    res.maps.emplace_back(S, prev, deg, cols);
    res.ranks.push_back(deg);
    pending.clear();
    pendingDeg.clear();
    for (std::size_t s = 0; s < tg.syzygies().size(); ++s) {
      Vec z = ring->reduce(tg.toKept(tg.syzygies()[s]));
      if (z.empty()) continue;
      pending.push_back(std::move(z));
      pendingDeg.push_back(tg.syzygyDegrees()[s]);
    }
    if (pending.empty()) res.complete = true;
  }
};

inline std::shared_ptr<const ResolutionState> resolutionState(const GradedModule& M) {
  return M.ring()->cached<ResolutionState>("resolution|" + M.fingerprint(), [&] {
    auto ptr = std::make_shared<ResolutionState>();
    ResolutionState& st = *ptr;
    GradedModule P = minimalize(M);
    st.res.module = P;
    st.res.ranks.push_back(P.degrees());
    for (std::size_t j = 0; j < P.relations().cols(); ++j) {
      st.pending.push_back(P.relations().column(j));
      st.pendingDeg.push_back(P.relations().colDegrees()[j]);
    }
    if (st.pending.empty()) st.res.complete = true;
    return std::shared_ptr<const ResolutionState>(ptr);
  });
}

}  // namespace detail

/// Minimal free resolution of M up to homological degree maxLength.
inline FreeResolution minimalFreeResolution(const GradedModule& M, int maxLength) {
  if (maxLength < 0) throw StructuralError("minimalFreeResolution: negative length");
  auto st = detail::resolutionState(M);
  std::lock_guard<std::mutex> lock(st->mu);
  while (!st->res.complete && st->res.length() < maxLength) st->step();
  FreeResolution out = st->res;
  if (out.length() > maxLength) {
    out.maps.resize(maxLength);
    out.ranks.resize(maxLength + 1);
    out.complete = false;
  }
  return out;
}

/// Resolution over the polynomial cover; always complete.
inline FreeResolution coverResolution(const GradedModule& M) {
  return minimalFreeResolution(M.overCover(), M.ring()->nvars() + 1);
}

/// Omega^i(M): image of d_i, presented by d_{i+1}; Omega^0 = minimalize(M).
inline GradedModule syzygyModule(const GradedModule& M, int i) {
  if (i < 0) throw StructuralError("syzygyModule: negative index");
  FreeResolution F = minimalFreeResolution(M, i + 1);
  if (i == 0) return F.module;
  if (F.betti(i) == 0) return GradedModule::zero(M.ring());
  const auto& ring = M.ring();
  PolyMatrix rel = F.length() > i ? F.maps[i] : PolyMatrix(ring->cover(), F.ranks[i], {});
  return GradedModule(ring, F.ranks[i], rel);
}

/// Auslander transpose: coker of the dual of a minimal presentation, minimalized.
inline GradedModule transpose(const GradedModule& M) {
  GradedModule P = minimalize(M);
  PolyMatrix T = P.relations().transpose();
  return minimalize(GradedModule(M.ring(), T.rowDegrees(), T));
}

/// Ext modules with the cochain data used to build them.
struct ExtData {
  FreeResolution resolution;
  BoundedComplex hom;               // Hom(F, N[0])
  std::vector<Subquotient> ext;     // ext[i] = H_{-i}
  const GradedModule& at(int i) const { return ext.at(i).module; }
};

inline ExtData extData(const GradedModule& M, const GradedModule& N, int maxI) {
  requireSameRing(M, N);
  ExtData d;
  d.resolution = minimalFreeResolution(M, maxI + 1);
  d.hom = homComplex(d.resolution.toComplex(), moduleComplex(N));
  for (int i = 0; i <= maxI; ++i) d.ext.push_back(homologyOf(d.hom, -i));
  return d;
}

/// Ext^i(M, N) for 0 <= i <= maxI.
inline std::vector<GradedModule> extModules(const GradedModule& M, const GradedModule& N, int maxI) {
  auto d = extData(M, N, maxI);
  std::vector<GradedModule> out;
  for (auto& e : d.ext) out.push_back(e.module);
  return out;
}

/// Single Ext^i(M, N), cached per ring.
inline GradedModule extModule(const GradedModule& M, const GradedModule& N, int i) {
  requireSameRing(M, N);
  auto key = "ext|" + std::to_string(i) + "|" + M.fingerprint() + "|" + N.fingerprint();
  return *M.ring()->cached<GradedModule>(key, [&] {
    FreeResolution F = minimalFreeResolution(M, i + 1);
    BoundedComplex X = F.toComplex();
    return homologyAt(homComplex(X, moduleComplex(N)), -i);
  });
}

/// Tor_i(M, N) for 0 <= i <= maxI.
inline std::vector<GradedModule> torModules(const GradedModule& M, const GradedModule& N, int maxI) {
  requireSameRing(M, N);
  FreeResolution F = minimalFreeResolution(M, maxI + 1);
  BoundedComplex T = tensorComplex(F.toComplex(), moduleComplex(N));
  std::vector<GradedModule> out;
  for (int i = 0; i <= maxI; ++i) out.push_back(homologyAt(T, i));
  return out;
}

}  // namespace homolab
