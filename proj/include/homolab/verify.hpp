#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "dualities.hpp"
#include "instance_file.hpp"

namespace homolab {

inline constexpr const char* kEngineVersion = "homolab 1.0.0";

enum class Tri { False, True, Unknown };

inline const char* triName(Tri t) { return t == Tri::True ? "true" : t == Tri::False ? "false" : "unknown"; }
inline Tri tri(bool b) { return b ? Tri::True : Tri::False; }
inline Tri triAnd(Tri a, Tri b) {
  if (a == Tri::False || b == Tri::False) return Tri::False;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::True;
}
inline Tri triOr(Tri a, Tri b) {
  if (a == Tri::True || b == Tri::True) return Tri::True;
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return Tri::False;
}
inline Tri triNot(Tri a) { return a == Tri::Unknown ? a : tri(a == Tri::False); }
inline Tri triImplies(Tri a, Tri b) { return triOr(triNot(a), b); }
inline Tri triIff(Tri a, Tri b) {
  if (a == Tri::Unknown || b == Tri::Unknown) return Tri::Unknown;
  return tri(a == b);
}
inline Tri finiteness(const FinitenessVerdict& v) {
  return v.isFinite() ? Tri::True : v.isInfinite() ? Tri::False : Tri::Unknown;
}

struct Bounds {
  int extMax = 3;
  int gdimBound = 4;
  std::chrono::milliseconds timeout{60000};
};

/// Evaluation context of one probe on one binding of roles to modules.
struct ProbeContext {
  const Instance& inst;
  const Bounds& bounds;
  std::map<std::string, std::string> names;  // role -> module name
  std::map<std::string, GradedModule> bind;
  nlohmann::json notes = nlohmann::json::object();

  const GradedModule& operator[](const std::string& role) const { return bind.at(role); }
  const QRingPtr& ring() const { return inst.ring; }
  const RingProfile& profile() const { return ringProfile(inst.ring); }
  int t() const { return profile().depthR; }
  GradedModule R() const { return GradedModule::free(inst.ring, {0}); }
  GradedModule k() const { return GradedModule::residueField(inst.ring); }
  GradedModule omega() const { return canonicalModule(inst.ring); }
};

struct Clause {
  std::string name;
  std::function<Tri(ProbeContext&)> eval;
};

/// A statement turned into premises and conclusions over named roles.
struct Probe {
  std::string id;
  std::string statement;  // which result
  std::string quote;      // the statement being checked
  std::vector<std::string> roles;
  std::vector<Clause> premises;
  std::vector<Clause> conclusions;
  bool exploratory = false;  // records, never adjudicates
};

struct ProbeOutcome {
  enum class Kind { Verified, PremiseFailed, Inconclusive, Refuted };
  Kind kind = Kind::Inconclusive;
  std::string which;    // failing premise or conclusion
  std::string reason;   // why inconclusive
  std::string witness;  // replayable instance text for Refuted
  nlohmann::json detail = nlohmann::json::object();

  std::string name() const {
    switch (kind) {
      case Kind::Verified: return "verified";
      case Kind::PremiseFailed: return "premise-failed";
      case Kind::Refuted: return "refuted";
      default: return "inconclusive";
    }
  }
  nlohmann::json toJson() const {
    nlohmann::json j{{"outcome", name()}, {"detail", detail}};
    if (!which.empty()) j["which"] = which;
    if (!reason.empty()) j["reason"] = reason;
    if (!witness.empty()) j["witness"] = witness;
    return j;
  }
};

namespace probes {

enum class Reading { Pd, G };

inline bool zero(const GradedModule& X) { return X.isZero(); }

inline GradedModule ext(const GradedModule& M, const GradedModule& N, int i) { return extModule(M, N, i); }

inline GradedModule tensor(const GradedModule& M, const GradedModule& N) {
  return *M.ring()->cached<GradedModule>("tensor|" + M.fingerprint() + "|" + N.fingerprint(),
                                         [&] { return tensorModule(M, N); });
}
inline GradedModule hom(const GradedModule& M, const GradedModule& N) {
  return *M.ring()->cached<GradedModule>("hom|" + M.fingerprint() + "|" + N.fingerprint(),
                                         [&] { return minimalize(homModule(M, N)); });
}
inline int mu(const GradedModule& X) { return zero(X) ? 0 : static_cast<int>(minimalize(X).rank()); }
inline int depthOrInf(const GradedModule& X) { return zero(X) ? 1 << 20 : depthOf(X); }
inline int dimOrNeg(const GradedModule& X) { return zero(X) ? -1 : dimDepth(X).dim; }

/// Finite homological dimension; the zero module counts as finite.
inline Tri hdim(ProbeContext& c, const GradedModule& X, Reading r) {
  if (zero(X)) return Tri::True;
  return finiteness(r == Reading::Pd ? projDim(X) : gDim(X, c.bounds.gdimBound));
}
inline Tri hid(ProbeContext& c, const GradedModule& X, Reading r) {
  if (zero(X)) return Tri::True;
  if (r == Reading::Pd) return finiteness(injDim(X));
  try {
    return finiteness(gInjDim(X, c.bounds.gdimBound));
  } catch (const UnsupportedError&) {
    c.notes["unsupported"] = "injective Gorenstein dimension needs a Cohen-Macaulay ring";
    return Tri::Unknown;
  }
}

/// Conjunction of f(i) over lo <= i <= hi, stopping at the first False.
template <class F>
Tri forAll(int lo, int hi, F&& f) {
  Tri acc = Tri::True;
  for (int i = lo; i <= hi; ++i) {
    acc = triAnd(acc, f(i));
    if (acc == Tri::False) return acc;
  }
  return acc;
}

inline Tri ringCM(ProbeContext& c) { return tri(c.profile().isCM); }
inline Tri nonzero(ProbeContext& c, const std::string& role) { return tri(!zero(c[role])); }

inline const char* suffix(Reading r) { return r == Reading::Pd ? "pd" : "G-dim"; }
inline const char* isuffix(Reading r) { return r == Reading::Pd ? "id" : "Gid"; }

/// The relation polynomials of a cyclic module generated in degree 0.
inline std::optional<std::vector<Polynomial>> cyclicRelations(const GradedModule& M) {
  if (M.rank() != 1 || M.degrees()[0] != 0) return std::nullopt;
  std::vector<Polynomial> out;
  for (auto& col : M.relations().columns()) out.push_back(toPolynomial(M.ring()->cover(), col));
  return out;
}

inline bool scalarMultiple(const Polynomial& a, const Polynomial& b) {
  if (a.isZero() || b.isZero()) return a.isZero() && b.isZero();
  const auto& F = a.ring()->field();
  return a == b.scaled(F.mul(a.leadCoefficient(), F.inv(b.leadCoefficient())));
}

inline Probe koszulExample() {
  Probe p{"P1", "Koszul example", "Ext^i(R/(x), N) = N^binom(n,i) for a regular sequence x with xN = 0", {"M", "N"}, {}, {}};
  p.premises.push_back({"M = R/(x) with x a regular sequence", [](ProbeContext& c) {
    auto xs = cyclicRelations(c["M"]);
    if (!xs) return Tri::False;
    for (auto& f : *xs)
      if (f.degree() <= 0) return Tri::False;
    if (xs->empty()) return Tri::True;
    return tri(homologyAt(koszulComplex(c.ring(), *xs), 1).isZero());
  }});
  p.premises.push_back({"x N = 0", [](ProbeContext& c) {
    const auto& N = c["N"];
    auto xs = cyclicRelations(c["M"]);
    for (auto& f : *xs)
      for (std::size_t g = 0; g < N.rank(); ++g)
        if (!N.isZeroElement(toVec(f, static_cast<std::uint32_t>(g)))) return Tri::False;
    return Tri::True;
  }});
  p.conclusions.push_back({"Koszul cochains give Ext^i(M,N) = N^binom(n,i) naturally", [](ProbeContext& c) {
    auto xs = *cyclicRelations(c["M"]);
    const int n = static_cast<int>(xs.size());
    BoundedComplex K = koszulComplex(c.ring(), xs);
    BoundedComplex H = homComplex(K, moduleComplex(c["N"]));
    nlohmann::json dims = nlohmann::json::array();
    for (int i = 0; i <= n; ++i) {
      GradedModule T = H.term(-i);
      if (T.rank() != HilbertSeries::binom(n, i) * c["N"].rank()) return Tri::False;
      Subquotient E = homologyOf(H, -i);
      std::vector<Vec> images;
      for (std::size_t g = 0; g < T.rank(); ++g) images.push_back(E.lift(vec::unit(c.ring()->nvars(), static_cast<std::uint32_t>(g))));
      if (!mapDiagnostics(ModuleMap(T, E.module, images)).isIsomorphism) return Tri::False;
      dims.push_back(E.module.rank());
    }
    c.notes["extGenerators"] = dims;
    return Tri::True;
  }});
  p.conclusions.push_back({"Ext by minimal resolution has the Koszul Hilbert series", [](ProbeContext& c) {
    auto xs = *cyclicRelations(c["M"]);
    BoundedComplex H = homComplex(koszulComplex(c.ring(), xs), moduleComplex(c["N"]));
    for (int i = 0; i <= static_cast<int>(xs.size()); ++i) {
      auto a = hilbertSeries(ext(c["M"], c["N"], i)), b = hilbertSeries(homologyAt(H, -i));
      if (a.numerator != b.numerator) return Tri::False;
    }
    return Tri::True;
  }});
  return p;
}

inline Probe periodicHypersurface() {
  Probe p{"P2", "Periodic hypersurface example",
          "R = S/(ab), M = R/(a) has the infinite 2-periodic resolution ... -> R -a-> R -b-> R -a-> R", {"M"}, {}, {}};
  p.premises.push_back({"ring is a hypersurface S/(f) and M = R/(a) with a a proper factor of f", [](ProbeContext& c) {
    const auto& I = c.ring()->idealBasis();
    if (I.size() != 1) return Tri::False;
    auto xs = cyclicRelations(c["M"]);
    if (!xs || xs->size() != 1) return Tri::False;
    const Polynomial& a = (*xs)[0];
    const Polynomial& f = I[0];
    if (a.degree() <= 0 || a.degree() >= f.degree()) return Tri::False;
    return tri(normalForm(f, buchberger(std::vector<Polynomial>{a})).isZero());
  }});
  p.conclusions.push_back({"beta_i(M) = 1 for i <= 10", [](ProbeContext& c) {
    auto b = bettiNumbers(c["M"], 10);
    c.notes["betti"] = b;
    for (int v : b)
      if (v != 1) return Tri::False;
    return Tri::True;
  }});
  p.conclusions.push_back({"pd(M) is infinite", [](ProbeContext& c) { return tri(projDim(c["M"]).isInfinite()); }});
  p.conclusions.push_back({"differentials alternate a, b with ab = f", [](ProbeContext& c) {
    FreeResolution F = minimalFreeResolution(c["M"], 10);
    const auto& S = c.ring()->cover();
    Polynomial a = toPolynomial(S, F.differential(1).column(0));
    Polynomial b = toPolynomial(S, F.differential(2).column(0));
    if (!scalarMultiple(a * b, c.ring()->idealBasis()[0])) return Tri::False;
    for (int i = 3; i <= 10; ++i)
      if (!scalarMultiple(toPolynomial(S, F.differential(i).column(0)), i % 2 ? a : b)) return Tri::False;
    return Tri::True;
  }});
  // The odd Ext claim is recorded, not asserted: the cochains give Ext^odd(M,M) = 0.
  p.conclusions.push_back({"odd self-extensions recorded", [](ProbeContext& c) {
    nlohmann::json rec = nlohmann::json::array();
    auto hM = hilbertSeries(c["M"]);
    for (int i = 0; i <= 2; ++i) {
      GradedModule E = ext(c["M"], c["M"], 2 * i + 1);
      rec.push_back({{"i", 2 * i + 1}, {"zero", zero(E)}, {"hilbertMatchesM", hilbertSeries(E).numerator == hM.numerator}});
    }
    c.notes["oddExt"] = rec;
    return Tri::True;
  }});
  return p;
}

inline Probe spherical() {
  Probe p{"P3", "Spherical construction", "N = coker(phi*) is n-spherical with Ext^n(N,R) = M", {"M"}, {}, {}};
  p.premises.push_back({"M nonzero", [](ProbeContext& c) { return nonzero(c, "M"); }});
  p.premises.push_back({"grade(M) > 0", [](ProbeContext& c) { return tri(grade(c["M"]) > 0); }});
  auto report = [](ProbeContext& c) {
    return *c.ring()->cached<SphericalReport>("spherical|" + c["M"].fingerprint(), [&] { return sphericalConstruction(c["M"]); });
  };
  p.conclusions.push_back({"dual complex is exact", [report](ProbeContext& c) {
    auto r = report(c);
    c.notes["report"] = r.toJson();
    return tri(r.dualExact);
  }});
  p.conclusions.push_back({"Ext^i(N,R) = 0 for 1 <= i <= n-1", [report](ProbeContext& c) { return tri(report(c).lowExtVanish); }});
  p.conclusions.push_back({"natural map M -> Ext^n(N,R) is an isomorphism", [report](ProbeContext& c) { return tri(report(c).topExtIsoM); }});
  p.conclusions.push_back({"pd N <= n when pd M is finite", [report](ProbeContext& c) { return tri(report(c).pdBoundHolds); }});
  return p;
}

inline Probe abFormula() {
  Probe p{"P4", "Auslander-Buchsbaum formula", "H-dim(M) + depth(M) = depth(R)", {"M"}, {}, {}};
  p.premises.push_back({"M nonzero", [](ProbeContext& c) { return nonzero(c, "M"); }});
  p.premises.push_back({"pd(M) finite", [](ProbeContext& c) { return finiteness(projDim(c["M"])); }});
  p.conclusions.push_back({"pd(M) + depth(M) = depth(R)", [](ProbeContext& c) {
    int pd = projDim(c["M"]).value;
    c.notes["pd"] = pd;
    return tri(pd + depthOf(c["M"]) == c.t());
  }});
  p.conclusions.push_back({"G-dim(M) = pd(M)", [](ProbeContext& c) {
    auto g = gDim(c["M"], c.bounds.gdimBound);
    return tri(g.isFinite() && g.value == projDim(c["M"]).value);
  }});
  return p;
}

inline Probe abFormulaG() {
  Probe p{"P4-g", "Auslander-Bridger formula", "G-dim(M) + depth(M) = depth(R)", {"M"}, {}, {}};
  p.premises.push_back({"M nonzero", [](ProbeContext& c) { return nonzero(c, "M"); }});
  p.premises.push_back({"G-dim(M) finite", [](ProbeContext& c) { return hdim(c, c["M"], Reading::G); }});
  p.conclusions.push_back({"G-dim(M) + depth(M) = depth(R)", [](ProbeContext& c) {
    return tri(gDim(c["M"], c.bounds.gdimBound).value + depthOf(c["M"]) == c.t());
  }});
  p.conclusions.push_back({"G-dim(M) <= pd(M)", [](ProbeContext& c) {
    auto pd = projDim(c["M"]);
    return tri(!pd.isFinite() || gDim(c["M"], c.bounds.gdimBound).value <= pd.value);
  }});
  return p;
}

inline Probe syzygyFormula(Reading r) {
  Probe p{r == Reading::G ? "P5" : "P5-pd", "Syzygy formula", "H-dim(Omega^n M) = max{H-dim(M) - n, 0}", {"M"}, {}, {}};
  p.premises.push_back({"M nonzero", [](ProbeContext& c) { return nonzero(c, "M"); }});
  p.premises.push_back({std::string(suffix(r)) + "(M) finite", [r](ProbeContext& c) { return hdim(c, c["M"], r); }});
  p.conclusions.push_back({"H-dim(Omega^n M) = max{H-dim(M) - n, 0} for n <= 3", [r](ProbeContext& c) {
    auto value = [&](const GradedModule& X) {
      return r == Reading::Pd ? projDim(X) : gDim(X, c.bounds.gdimBound);
    };
    const int h = value(c["M"]).value;
    return forAll(1, 3, [&](int n) {
      GradedModule O = syzygyModule(c["M"], n);
      if (zero(O)) return tri(n > h);
      auto v = value(O);
      if (v.isUnknown()) return Tri::Unknown;
      return tri(v.isFinite() && v.value == std::max(h - n, 0));
    });
  }});
  return p;
}

/// H-dim(Ext^i(M,N)) finite for all 0 <= i <= pd M implies H-dim(N) finite.
inline Probe extFinitenessFromPd(Reading r, bool gid) {
  std::string id = gid ? "P6-gid" : r == Reading::G ? "P6" : "P6-pd";
  std::string dim = gid ? "Gid" : suffix(r);
  Probe p{id, "Finite dimension of Ext with pd(M) finite",
          dim + "(Ext^i(M,N)) < inf for 0 <= i <= pd(M) implies " + dim + "(N) < inf", {"M", "N"}, {}, {}};
  p.premises.push_back({"M, N nonzero", [](ProbeContext& c) { return triAnd(nonzero(c, "M"), nonzero(c, "N")); }});
  p.premises.push_back({"pd(M) finite", [](ProbeContext& c) { return finiteness(projDim(c["M"])); }});
  p.premises.push_back({dim + "(Ext^i(M,N)) finite for 0 <= i <= pd(M)", [r, gid](ProbeContext& c) {
    return forAll(0, projDim(c["M"]).value, [&](int i) {
      GradedModule E = ext(c["M"], c["N"], i);
      return gid ? hid(c, E, Reading::G) : hdim(c, E, r);
    });
  }});
  p.conclusions.push_back({dim + "(N) finite", [r, gid](ProbeContext& c) {
    return gid ? hid(c, c["N"], Reading::G) : hdim(c, c["N"], r);
  }});
  return p;
}

/// id(N) finite and H-dim(Ext^i(M,N)) finite up to t - depth M give Hid(M) finite.
inline Probe extFinitenessFromId(Reading r, bool gidPremise) {
  std::string id = gidPremise ? "P7-gid" : r == Reading::G ? "P7" : "P7-pd";
  std::string pre = gidPremise ? "Gid" : suffix(r);
  std::string post = gidPremise ? "G-dim" : isuffix(r);
  Probe p{id, "Finite dimension of Ext with id(N) finite",
          pre + "(Ext^i(M,N)) < inf for 0 <= i <= t - depth(M) implies " + post + "(M) < inf", {"M", "N"}, {}, {}};
  p.premises.push_back({"R Cohen-Macaulay", ringCM});
  p.premises.push_back({"M, N nonzero", [](ProbeContext& c) { return triAnd(nonzero(c, "M"), nonzero(c, "N")); }});
  p.premises.push_back({"id(N) finite", [](ProbeContext& c) { return finiteness(injDim(c["N"])); }});
  p.premises.push_back({pre + "(Ext^i(M,N)) finite for 0 <= i <= t - depth(M)", [r, gidPremise](ProbeContext& c) {
    return forAll(0, c.t() - depthOf(c["M"]), [&](int i) {
      GradedModule E = ext(c["M"], c["N"], i);
      return gidPremise ? hid(c, E, Reading::G) : hdim(c, E, r);
    });
  }});
  p.conclusions.push_back({post + "(M) finite", [r, gidPremise](ProbeContext& c) {
    return gidPremise ? hdim(c, c["M"], Reading::G) : hid(c, c["M"], r);
  }});
  return p;
}

/// Finite dimension of all deficiency modules gives the dual finiteness of M.
inline Probe deficiencyFiniteness(Reading r, bool injectivePremise) {
  std::string id = std::string(r == Reading::Pd ? "P8" : "P8-g") + (injectivePremise ? "-2" : "");
  std::string pre = injectivePremise ? isuffix(r) : suffix(r), post = injectivePremise ? suffix(r) : isuffix(r);
  Probe p{id, "Deficiency modules of finite dimension",
          pre + "(K^i(M)) < inf for depth(M) <= i <= dim(M) implies " + post + "(M) < inf", {"M"}, {}, {}};
  p.premises.push_back({"M nonzero", [](ProbeContext& c) { return nonzero(c, "M"); }});
  p.premises.push_back({pre + "(K^i(M)) finite for depth M <= i <= dim M", [r, injectivePremise](ProbeContext& c) {
    auto dd = dimDepth(c["M"]);
    return forAll(dd.depth, dd.dim, [&](int i) {
      GradedModule K = deficiency(c["M"], i);
      return injectivePremise ? hid(c, K, r) : hdim(c, K, r);
    });
  }});
  p.conclusions.push_back({post + "(M) finite", [r, injectivePremise](ProbeContext& c) {
    return injectivePremise ? hdim(c, c["M"], r) : hid(c, c["M"], r);
  }});
  return p;
}

inline Probe canonicalOfModule(Reading r) {
  Probe p{r == Reading::Pd ? "P9" : "P9-g", "Canonical module of a Cohen-Macaulay module",
          "H-dim(K(M)) < inf iff Hid(M) < inf; H-dim(M) < inf iff Hid(K(M)) < inf", {"M"}, {}, {}};
  p.premises.push_back({"M nonzero", [](ProbeContext& c) { return nonzero(c, "M"); }});
  p.premises.push_back({"M Cohen-Macaulay", [](ProbeContext& c) { return tri(isCohenMacaulay(c["M"])); }});
  p.conclusions.push_back({"H-dim(K(M)) finite iff Hid(M) finite", [r](ProbeContext& c) {
    GradedModule K = deficiency(c["M"], dimDepth(c["M"]).dim);
    return triIff(hdim(c, K, r), hid(c, c["M"], r));
  }});
  p.conclusions.push_back({"H-dim(M) finite iff Hid(K(M)) finite", [r](ProbeContext& c) {
    GradedModule K = deficiency(c["M"], dimDepth(c["M"]).dim);
    return triIff(hdim(c, c["M"], r), hid(c, K, r));
  }});
  return p;
}

inline Probe omegaCorrespondence() {
  Probe p{"P10", "Foxby correspondence through the canonical module",
          "H-dim(Hom(omega, M)) < inf iff Hid(M) < inf; H-dim(M) < inf iff Hid(M (x) omega) < inf", {"M"}, {}, {}};
  p.premises.push_back({"R Cohen-Macaulay", ringCM});
  p.premises.push_back({"M nonzero", [](ProbeContext& c) { return nonzero(c, "M"); }});
  p.conclusions.push_back({"pd(Hom(omega, M)) finite iff id(M) finite", [](ProbeContext& c) {
    return triIff(hdim(c, hom(c.omega(), c["M"]), Reading::Pd), hid(c, c["M"], Reading::Pd));
  }});
  p.conclusions.push_back({"pd(M) finite iff id(M (x) omega) finite", [](ProbeContext& c) {
    return triIff(hdim(c, c["M"], Reading::Pd), hid(c, tensor(c["M"], c.omega()), Reading::Pd));
  }});
  p.conclusions.push_back({"G-dim(Hom(omega, M)) finite iff Gid(M) finite", [](ProbeContext& c) {
    return triIff(hdim(c, hom(c.omega(), c["M"]), Reading::G), hid(c, c["M"], Reading::G));
  }});
  return p;
}

inline Tri comparisonIsos(ProbeContext& c, const GradedModule& M, const GradedModule& N, const GradedModule& C, int n) {
  auto bundles = extComparison(M, N, C, n);
  nlohmann::json rec = nlohmann::json::array();
  Tri acc = Tri::True;
  for (auto& b : bundles) {
    rec.push_back(b.toJson());
    acc = triAnd(acc, tri(b.diagnostics.isIsomorphism && b.cochainIso));
  }
  c.notes["comparison"] = rec;
  return acc;
}

inline Probe extDuality(bool omega) {
  Probe p{omega ? "P11" : "P11-R", "Ext duality for a semidualizing module",
          "Ext^i(M,N) (x) C = Ext^i(M, N (x) C) naturally when N and Ext^i(M,N) lie in the Auslander class", {"M", "N"}, {}, {}};
  if (omega) {
    p.premises.push_back({"R Cohen-Macaulay (C = omega)", ringCM});
    p.premises.push_back({"G-dim(N) finite", [](ProbeContext& c) { return hdim(c, c["N"], Reading::G); }});
    p.premises.push_back({"G-dim(Ext^i(M,N)) finite for i <= n", [](ProbeContext& c) {
      return forAll(0, c.bounds.extMax, [&](int i) { return hdim(c, ext(c["M"], c["N"], i), Reading::G); });
    }});
  }
  p.conclusions.push_back({"natural comparison maps are isomorphisms for i <= n", [omega](ProbeContext& c) {
    return comparisonIsos(c, c["M"], c["N"], omega ? c.omega() : c.R(), c.bounds.extMax);
  }});
  return p;
}

/// (1) H-dim(Ext^i(M,N)) finite for i <= n  <=>  (2) Hid(Ext^i(M, N (x) omega)) finite for i <= n.
inline Probe sqmmProbe(Reading r, bool converse) {
  std::string id = std::string(r == Reading::G ? "P12" : "P12-pd") + (converse ? "-conv" : "");
  Probe p{id, "Duality of Ext over Cohen-Macaulay rings",
          "H-dim(Ext^i(M,N)) < inf for i <= n iff Hid(Ext^i(M, N (x) omega)) < inf for i <= n; "
          "Ext^i(M,N) (x) omega = Ext^i(M, N (x) omega)",
          {"M", "N"}, {}, {}};
  auto cond1 = [r](ProbeContext& c) {
    return forAll(0, c.bounds.extMax, [&](int i) { return hdim(c, ext(c["M"], c["N"], i), r); });
  };
  auto cond2 = [r](ProbeContext& c) {
    GradedModule T = tensor(c["N"], c.omega());
    return forAll(0, c.bounds.extMax, [&](int i) { return hid(c, ext(c["M"], T, i), r); });
  };
  p.premises.push_back({"R Cohen-Macaulay", ringCM});
  p.premises.push_back({std::string(suffix(r)) + "(N) finite", [r](ProbeContext& c) { return hdim(c, c["N"], r); }});
  if (!converse) {
    p.premises.push_back({"(1) H-dim(Ext^i(M,N)) finite for i <= n", cond1});
    p.conclusions.push_back({"(2) Hid(Ext^i(M, N (x) omega)) finite for i <= n", cond2});
    p.conclusions.push_back({"natural isomorphisms Ext^i(M,N) (x) omega = Ext^i(M, N (x) omega)", [](ProbeContext& c) {
      return comparisonIsos(c, c["M"], c["N"], c.omega(), c.bounds.extMax);
    }});
  } else {
    p.premises.push_back({"(2) Hid(Ext^i(M, N (x) omega)) finite for i <= n", cond2});
    p.conclusions.push_back({"(1) H-dim(Ext^i(M,N)) finite for i <= n", cond1});
  }
  return p;
}

inline Probe pdTransfer() {
  Probe p{"P13", "Transfer of finite projective dimension",
          "pd(Ext^i(M,N)) < inf for i <= t - depth(M) implies (pd(M) < inf iff pd(N) < inf)", {"M", "N"}, {}, {}};
  p.premises.push_back({"R Cohen-Macaulay", ringCM});
  p.premises.push_back({"M, N nonzero", [](ProbeContext& c) { return triAnd(nonzero(c, "M"), nonzero(c, "N")); }});
  p.premises.push_back({"pd(Ext^i(M,N)) finite for i <= t - depth(M)", [](ProbeContext& c) {
    return forAll(0, c.t() - depthOf(c["M"]), [&](int i) { return hdim(c, ext(c["M"], c["N"], i), Reading::Pd); });
  }});
  p.conclusions.push_back({"pd(M) finite iff pd(N) finite", [](ProbeContext& c) {
    return triIff(hdim(c, c["M"], Reading::Pd), hdim(c, c["N"], Reading::Pd));
  }});
  return p;
}

inline Probe vanishingGivesZero(Reading r) {
  Probe p{r == Reading::G ? "P14" : "P14-pd", "Vanishing of Ext forces dimension zero",
          "pd(N) < inf, H-dim(Hom(M,N)) < inf, Ext^i(M,N) = 0 for 1 <= i <= t - depth(M) imply H-dim(M) = 0",
          {"M", "N"}, {}, {}};
  p.premises.push_back({"R Cohen-Macaulay", ringCM});
  p.premises.push_back({"M, N nonzero", [](ProbeContext& c) { return triAnd(nonzero(c, "M"), nonzero(c, "N")); }});
  p.premises.push_back({"pd(N) finite", [](ProbeContext& c) { return finiteness(projDim(c["N"])); }});
  p.premises.push_back({"H-dim(Hom(M,N)) finite", [r](ProbeContext& c) { return hdim(c, ext(c["M"], c["N"], 0), r); }});
  p.premises.push_back({"Ext^i(M,N) = 0 for 1 <= i <= t - depth(M)", [](ProbeContext& c) {
    return forAll(1, c.t() - depthOf(c["M"]), [&](int i) { return tri(zero(ext(c["M"], c["N"], i))); });
  }});
  p.conclusions.push_back({"H-dim(M) = 0", [r](ProbeContext& c) {
    auto v = r == Reading::Pd ? projDim(c["M"]) : gDim(c["M"], c.bounds.gdimBound);
    if (v.isUnknown()) return Tri::Unknown;
    return tri(v.isFinite() && v.value == 0);
  }});
  return p;
}

inline Probe muTypeFormula() {
  Probe p{"P15", "Ext into the canonical module",
          "Ext^i(M,R) (x) omega = Ext^i(M,omega), Tor_1(Tr Omega^i M, omega) = 0, "
          "mu(Ext^i(M,omega)) = mu(Ext^i(M,R)) type(R)",
          {"M"}, {}, {}};
  p.premises.push_back({"R Cohen-Macaulay", ringCM});
  p.premises.push_back({"G-dim(Ext^i(M,R)) finite for i <= n", [](ProbeContext& c) {
    return forAll(0, c.bounds.extMax, [&](int i) { return hdim(c, ext(c["M"], c.R(), i), Reading::G); });
  }});
  p.conclusions.push_back({"natural isomorphisms Ext^i(M,R) (x) omega = Ext^i(M,omega)", [](ProbeContext& c) {
    return comparisonIsos(c, c["M"], c.R(), c.omega(), c.bounds.extMax);
  }});
  p.conclusions.push_back({"Tor_1(Tr Omega^i M, omega) = 0", [](ProbeContext& c) {
    return forAll(0, c.bounds.extMax, [&](int i) {
      GradedModule O = syzygyModule(c["M"], i);
      if (zero(O)) return Tri::True;
      GradedModule T = transpose(O);
      if (zero(T)) return Tri::True;
      return tri(zero(torModules(T, c.omega(), 1)[1]));
    });
  }});
  p.conclusions.push_back({"mu(Ext^i(M,omega)) = mu(Ext^i(M,R)) type(R)", [](ProbeContext& c) {
    return forAll(0, c.bounds.extMax, [&](int i) {
      return tri(mu(ext(c["M"], c.omega(), i)) == mu(ext(c["M"], c.R(), i)) * c.profile().typeR);
    });
  }});
  return p;
}

inline Probe typeFormulaCM() {
  Probe p{"P16", "Type formula over Cohen-Macaulay rings",
          "dim Ext^i(M,R) <= t - i (i != t - s), dim Ext^{t-s}(M,R) = s, type(M) = mu(Ext^{t-r}(M,R)) type(R)", {"M"}, {}, {}};
  p.premises.push_back({"R Cohen-Macaulay", ringCM});
  p.premises.push_back({"M nonzero", [](ProbeContext& c) { return nonzero(c, "M"); }});
  p.premises.push_back({"G-dim(Ext^i(M,R)) finite for t - s <= i <= t - r", [](ProbeContext& c) {
    auto dd = dimDepth(c["M"]);
    return forAll(c.t() - dd.dim, c.t() - dd.depth, [&](int i) { return hdim(c, ext(c["M"], c.R(), i), Reading::G); });
  }});
  p.conclusions.push_back({"(1) G-dim(M) finite", [](ProbeContext& c) { return hdim(c, c["M"], Reading::G); }});
  p.conclusions.push_back({"(2) dimension bounds on Ext^i(M,R)", [](ProbeContext& c) {
    const int s = dimDepth(c["M"]).dim, t = c.t();
    nlohmann::json dims = nlohmann::json::array();
    Tri acc = Tri::True;
    for (int i = 0; i <= t; ++i) {
      int d = dimOrNeg(ext(c["M"], c.R(), i));
      dims.push_back(d);
      acc = triAnd(acc, tri(i == t - s ? d == s : d <= t - i));
    }
    c.notes["extDims"] = dims;
    return acc;
  }});
  p.conclusions.push_back({"(3) type(M) = mu(Ext^{t-r}(M,R)) type(R)", [](ProbeContext& c) {
    int type = typeAndMu(c["M"]).type;
    int m = mu(ext(c["M"], c.R(), c.t() - depthOf(c["M"])));
    c.notes["type"] = type;
    return tri(type == m * c.profile().typeR);
  }});
  p.conclusions.push_back({"(4) type(M) = 1 implies R Gorenstein", [](ProbeContext& c) {
    return triImplies(tri(typeAndMu(c["M"]).type == 1), tri(c.profile().isGorenstein));
  }});
  return p;
}

inline Probe typeFormulaGorenstein() {
  Probe p{"P17", "Type formula over Gorenstein rings", "type(M) = mu(Ext^{G-dim M}(M,R))", {"M"}, {}, {}};
  p.premises.push_back({"R Gorenstein", [](ProbeContext& c) { return tri(c.profile().isGorenstein); }});
  p.premises.push_back({"M nonzero", [](ProbeContext& c) { return nonzero(c, "M"); }});
  p.conclusions.push_back({"type(M) = mu(Ext^{G-dim M}(M,R))", [](ProbeContext& c) {
    auto g = gDim(c["M"], c.bounds.gdimBound);
    if (!g.isFinite()) return Tri::False;
    int type = typeAndMu(c["M"]).type, m = mu(ext(c["M"], c.R(), g.value));
    c.notes["type"] = type;
    c.notes["mu"] = m;
    return tri(type == m);
  }});
  return p;
}

inline Probe perfection(Reading r) {
  Probe p{r == Reading::G ? "P18" : "P18-pd", "Cohen-Macaulay modules with Ext of finite dimension are perfect",
          "M Cohen-Macaulay of grade g with H-dim(Ext^g(M,R)) < inf is H-perfect", {"M"}, {}, {}};
  p.premises.push_back({"R Cohen-Macaulay", ringCM});
  p.premises.push_back({"M nonzero", [](ProbeContext& c) { return nonzero(c, "M"); }});
  p.premises.push_back({"M Cohen-Macaulay", [](ProbeContext& c) { return tri(isCohenMacaulay(c["M"])); }});
  p.premises.push_back({"H-dim(Ext^g(M,R)) finite", [r](ProbeContext& c) {
    return hdim(c, ext(c["M"], c.R(), grade(c["M"])), r);
  }});
  p.conclusions.push_back({"H-dim(M) = grade(M)", [r](ProbeContext& c) {
    auto v = r == Reading::Pd ? projDim(c["M"]) : gDim(c["M"], c.bounds.gdimBound);
    if (v.isUnknown()) return Tri::Unknown;
    return tri(v.isFinite() && v.value == grade(c["M"]));
  }});
  return p;
}

inline Probe gorensteinLadder() {
  Probe p{"P19", "Gorenstein characterizations",
          "R Gorenstein iff Gid(k) < inf iff Gid(R) < inf iff G-dim(omega) < inf iff G-dim(omega*) < inf", {}, {}, {}};
  p.premises.push_back({"R Cohen-Macaulay", ringCM});
  p.conclusions.push_back({"(1)-(5) agree", [](ProbeContext& c) {
    GradedModule w = c.omega();
    GradedModule ws = hom(w, c.R());
    std::vector<std::pair<std::string, Tri>> v{{"gorenstein", tri(c.profile().isGorenstein)},
                                               {"gidK", hid(c, c.k(), Reading::G)},
                                               {"gidR", hid(c, c.R(), Reading::G)},
                                               {"gdimOmega", hdim(c, w, Reading::G)},
                                               {"gdimOmegaDual", hdim(c, ws, Reading::G)}};
    Tri acc = Tri::True;
    for (auto& [name, t] : v) {
      c.notes[name] = triName(t);
      acc = triAnd(acc, triIff(t, v[0].second));
    }
    return acc;
  }});
  p.conclusions.push_back({"(6)-(8) under Ext^i(omega,R) = 0 for 1 <= i <= t", [](ProbeContext& c) {
    GradedModule w = c.omega(), R = c.R();
    bool vanish = true;
    for (int i = 1; i <= c.t(); ++i) vanish = vanish && zero(ext(w, R, i));
    c.notes["omegaExtVanishes"] = vanish;
    if (!vanish) return Tri::True;
    GradedModule ws = hom(w, R);
    GradedModule wsd = hom(ws, w);
    Tri g1 = tri(c.profile().isGorenstein), g6 = hid(c, wsd, Reading::G), g7 = hid(c, ws, Reading::G),
        g8 = hdim(c, wsd, Reading::G);
    c.notes["six"] = triName(g6);
    c.notes["seven"] = triName(g7);
    c.notes["eight"] = triName(g8);
    return triAnd(triAnd(triIff(g1, g6), triImplies(g6, g7)), triIff(g7, g8));
  }});
  return p;
}

inline Probe dualFiniteness(Reading r) {
  Probe p{r == Reading::G ? "P20" : "P20-pd", "Finite dimension from Ext into R",
          "H-dim(Ext^i(M,R)) < inf for 0 <= i <= t implies H-dim(M) < inf", {"M"}, {}, {}};
  p.premises.push_back({"M nonzero", [](ProbeContext& c) { return nonzero(c, "M"); }});
  p.premises.push_back({"H-dim(Ext^i(M,R)) finite for i <= t", [r](ProbeContext& c) {
    return forAll(0, c.t(), [&](int i) { return hdim(c, ext(c["M"], c.R(), i), r); });
  }});
  p.conclusions.push_back({"H-dim(M) finite", [r](ProbeContext& c) { return hdim(c, c["M"], r); }});
  return p;
}

inline Probe singleExt(Reading r) {
  Probe p{r == Reading::G ? "P21" : "P21-pd", "A single nonvanishing Ext",
          "H-dim(Ext^h(M,R)) < inf and Ext^i(M,R) = 0 for i in {0..t} - {h} imply H-dim(M) = h", {"M"}, {}, {}};
  auto findH = [](ProbeContext& c) {
    int h = -1, count = 0;
    for (int i = 0; i <= c.t(); ++i)
      if (!zero(ext(c["M"], c.R(), i))) {
        h = i;
        ++count;
      }
    return count == 1 ? h : -1;
  };
  p.premises.push_back({"M nonzero", [](ProbeContext& c) { return nonzero(c, "M"); }});
  p.premises.push_back({"exactly one h <= t with Ext^h(M,R) != 0", [findH](ProbeContext& c) { return tri(findH(c) >= 0); }});
  p.premises.push_back({"H-dim(Ext^h(M,R)) finite", [r, findH](ProbeContext& c) {
    return hdim(c, ext(c["M"], c.R(), findH(c)), r);
  }});
  p.conclusions.push_back({"H-dim(M) = h", [r, findH](ProbeContext& c) {
    auto v = r == Reading::Pd ? projDim(c["M"]) : gDim(c["M"], c.bounds.gdimBound);
    if (v.isUnknown()) return Tri::Unknown;
    c.notes["h"] = findH(c);
    return tri(v.isFinite() && v.value == findH(c));
  }});
  return p;
}

inline Probe serreBound() {
  Probe p{"P22", "Dimension bound under a Serre-type condition",
          "M satisfying (S_n) with H-dim(Ext^i(M,R)) < inf for 0 <= i <= t - n has H-dim(M) <= t - n", {"M"}, {}, {}};
  // n = t when R is CM and M maximal Cohen-Macaulay (then (S_n) holds at every prime), else n = 0.
  auto level = [](ProbeContext& c) {
    if (c.profile().isCM && depthOf(c["M"]) == c.profile().dimR) return c.t();
    return 0;
  };
  p.premises.push_back({"M nonzero", [](ProbeContext& c) { return nonzero(c, "M"); }});
  p.premises.push_back({"H-dim(Ext^i(M,R)) finite for i <= t - n", [level](ProbeContext& c) {
    c.notes["n"] = level(c);
    return forAll(0, c.t() - level(c), [&](int i) { return hdim(c, ext(c["M"], c.R(), i), Reading::G); });
  }});
  p.conclusions.push_back({"G-dim(M) <= t - n", [level](ProbeContext& c) {
    auto v = gDim(c["M"], c.bounds.gdimBound);
    if (v.isUnknown()) return Tri::Unknown;
    return tri(v.isFinite() && v.value <= c.t() - level(c));
  }});
  return p;
}

inline Probe pdEquivalence(bool gorensteinCase) {
  Probe p{gorensteinCase ? "P23-b" : "P23", "Projective dimension equivalence without Cohen-Macaulayness",
          gorensteinCase ? "G-dim(M) < inf, pd(Ext^i(M,N)) < inf for i <= t - depth(M) imply (pd M < inf iff pd N < inf)"
                         : "pd(Ext^i(M,N)) < inf for i <= t, Ext^i(M,R) = 0 for t+1 <= i <= 2t+1 imply (pd M < inf iff pd N < inf)",
          {"M", "N"}, {}, {}};
  p.premises.push_back({"M, N nonzero", [](ProbeContext& c) { return triAnd(nonzero(c, "M"), nonzero(c, "N")); }});
  if (gorensteinCase) {
    p.premises.push_back({"G-dim(M) finite", [](ProbeContext& c) { return hdim(c, c["M"], Reading::G); }});
    p.premises.push_back({"pd(Ext^i(M,N)) finite for i <= t - depth(M)", [](ProbeContext& c) {
      return forAll(0, c.t() - depthOf(c["M"]), [&](int i) { return hdim(c, ext(c["M"], c["N"], i), Reading::Pd); });
    }});
  } else {
    p.premises.push_back({"Ext^i(M,R) = 0 for t+1 <= i <= 2t+1", [](ProbeContext& c) {
      return forAll(c.t() + 1, 2 * c.t() + 1, [&](int i) { return tri(zero(ext(c["M"], c.R(), i))); });
    }});
    p.premises.push_back({"pd(Ext^i(M,N)) finite for i <= t", [](ProbeContext& c) {
      return forAll(0, c.t(), [&](int i) { return hdim(c, ext(c["M"], c["N"], i), Reading::Pd); });
    }});
  }
  p.conclusions.push_back({"pd(M) finite iff pd(N) finite", [](ProbeContext& c) {
    return triIff(hdim(c, c["M"], Reading::Pd), hdim(c, c["N"], Reading::Pd));
  }});
  return p;
}

inline Probe openQuestion() {
  Probe p{"P24", "Open question beyond Cohen-Macaulay rings",
          "pd(N) < inf: does H-dim(Ext^i(M,N)) < inf for i <= t give H-dim(M) < inf, and does vanishing give H-dim(M) = 0?",
          {"M", "N"}, {}, {}};
  p.exploratory = true;
  p.conclusions.push_back({"record", [](ProbeContext& c) {
    if (zero(c["M"]) || zero(c["N"])) {
      c.notes["skipped"] = "zero module";
      return Tri::True;
    }
    Tri pdN = hdim(c, c["N"], Reading::Pd);
    Tri q1 = forAll(0, c.t(), [&](int i) { return hdim(c, ext(c["M"], c["N"], i), Reading::G); });
    Tri van = forAll(1, c.t(), [&](int i) { return tri(zero(ext(c["M"], c["N"], i))); });
    Tri homFin = hdim(c, ext(c["M"], c["N"], 0), Reading::G);
    auto g = gDim(c["M"], c.bounds.gdimBound);
    c.notes["cohenMacaulay"] = c.profile().isCM;
    c.notes["pdN"] = triName(pdN);
    c.notes["extFinite"] = triName(q1);
    c.notes["extVanish"] = triName(van);
    c.notes["homFinite"] = triName(homFin);
    c.notes["gdimM"] = g.toJson();
    return Tri::True;
  }});
  return p;
}

inline Probe gorensteinFromModule(bool pdCase) {
  Probe p{pdCase ? "P25" : "P26", "Gorenstein criterion from a module",
          pdCase ? "pd(M) < inf and Gid(Ext^i(M,M)) < inf for i <= t - depth(M) imply R Gorenstein"
                 : "id(M) < inf and Gid(Ext^i(M,M)) < inf for i <= t - depth(M) imply R Gorenstein",
          {"M"}, {}, {}};
  p.premises.push_back({"M nonzero", [](ProbeContext& c) { return nonzero(c, "M"); }});
  if (!pdCase) p.premises.push_back({"R Cohen-Macaulay", ringCM});
  p.premises.push_back({pdCase ? "pd(M) finite" : "id(M) finite", [pdCase](ProbeContext& c) {
    return finiteness(pdCase ? projDim(c["M"]) : injDim(c["M"]));
  }});
  p.premises.push_back({"Gid(Ext^i(M,M)) finite for i <= t - depth(M)", [](ProbeContext& c) {
    return forAll(0, c.t() - depthOf(c["M"]), [&](int i) { return hid(c, ext(c["M"], c["M"], i), Reading::G); });
  }});
  p.conclusions.push_back({"R Gorenstein", [](ProbeContext& c) { return tri(c.profile().isGorenstein); }});
  return p;
}

inline Probe gorensteinFromOmegaHom(bool pdN) {
  Probe p{pdN ? "P27" : "P28", "Gorenstein criterion through Hom(omega, N)",
          pdN ? "pd(N) < inf and G-dim(Hom(omega,N)) < inf imply R Gorenstein"
              : "G-dim(N) < inf and pd(Hom(omega,N)) < inf imply R Gorenstein",
          {"N"}, {}, {}};
  p.premises.push_back({"R Cohen-Macaulay", ringCM});
  p.premises.push_back({"N nonzero", [](ProbeContext& c) { return nonzero(c, "N"); }});
  p.premises.push_back({pdN ? "pd(N) finite" : "G-dim(N) finite", [pdN](ProbeContext& c) {
    return hdim(c, c["N"], pdN ? Reading::Pd : Reading::G);
  }});
  p.premises.push_back({pdN ? "G-dim(Hom(omega,N)) finite" : "pd(Hom(omega,N)) finite", [pdN](ProbeContext& c) {
    return hdim(c, hom(c.omega(), c["N"]), pdN ? Reading::G : Reading::Pd);
  }});
  p.conclusions.push_back({"R Gorenstein", [](ProbeContext& c) { return tri(c.profile().isGorenstein); }});
  return p;
}

inline Probe phiProbe() {
  Probe p{"P29", "Hom and the canonical module",
          "G-dim(N) < inf: H-dim(Hom(M,N)) < inf iff Hid(Hom(M, N (x) omega)) < inf, and then Phi is an isomorphism",
          {"M", "N"}, {}, {}};
  p.premises.push_back({"R Cohen-Macaulay", ringCM});
  p.premises.push_back({"pd(N) finite", [](ProbeContext& c) { return hdim(c, c["N"], Reading::Pd); }});
  p.conclusions.push_back({"pd(Hom(M,N)) finite iff id(Hom(M, N (x) omega)) finite", [](ProbeContext& c) {
    GradedModule T = tensor(c["N"], c.omega());
    return triIff(hdim(c, hom(c["M"], c["N"]), Reading::Pd), hid(c, hom(c["M"], T), Reading::Pd));
  }});
  p.conclusions.push_back({"Phi(M,N) is an isomorphism when pd(Hom(M,N)) is finite", [](ProbeContext& c) {
    Tri fin = hdim(c, hom(c["M"], c["N"]), Reading::Pd);
    if (fin != Tri::True) return Tri::True;
    auto d = mapDiagnostics(phiMap(c["M"], c["N"], c.omega()));
    c.notes["phi"] = {{"injective", d.isInjective}, {"surjective", d.isSurjective}};
    return tri(d.isIsomorphism);
  }});
  return p;
}

}  // namespace probes

/// Every probe, in a fixed order.
inline const std::vector<Probe>& probeCatalog() {
  using namespace probes;
  static const std::vector<Probe> catalog = [] {
    std::vector<Probe> v;
    v.push_back(koszulExample());
    v.push_back(periodicHypersurface());
    v.push_back(spherical());
    v.push_back(abFormula());
    v.push_back(syzygyFormula(Reading::G));
    v.push_back(extFinitenessFromPd(Reading::G, false));
    v.push_back(extFinitenessFromId(Reading::G, false));
    v.push_back(deficiencyFiniteness(Reading::Pd, false));
    v.push_back(canonicalOfModule(Reading::Pd));
    v.push_back(omegaCorrespondence());
    v.push_back(extDuality(true));
    v.push_back(sqmmProbe(Reading::G, false));
    v.push_back(pdTransfer());
    v.push_back(vanishingGivesZero(Reading::G));
    v.push_back(muTypeFormula());
    v.push_back(typeFormulaCM());
    v.push_back(typeFormulaGorenstein());
    v.push_back(perfection(Reading::G));
    v.push_back(gorensteinLadder());
    v.push_back(dualFiniteness(Reading::G));
    v.push_back(singleExt(Reading::G));
    v.push_back(serreBound());
    v.push_back(pdEquivalence(false));
    v.push_back(openQuestion());
    v.push_back(abFormulaG());
    v.push_back(syzygyFormula(Reading::Pd));
    v.push_back(extFinitenessFromPd(Reading::Pd, false));
    v.push_back(extFinitenessFromPd(Reading::G, true));
    v.push_back(extFinitenessFromId(Reading::Pd, false));
    v.push_back(extFinitenessFromId(Reading::G, true));
    v.push_back(deficiencyFiniteness(Reading::Pd, true));
    v.push_back(deficiencyFiniteness(Reading::G, false));
    v.push_back(deficiencyFiniteness(Reading::G, true));
    v.push_back(canonicalOfModule(Reading::G));
    v.push_back(extDuality(false));
    v.push_back(sqmmProbe(Reading::G, true));
    v.push_back(sqmmProbe(Reading::Pd, false));
    v.push_back(sqmmProbe(Reading::Pd, true));
    v.push_back(vanishingGivesZero(Reading::Pd));
    v.push_back(perfection(Reading::Pd));
    v.push_back(dualFiniteness(Reading::Pd));
    v.push_back(singleExt(Reading::Pd));
    v.push_back(pdEquivalence(true));
    v.push_back(gorensteinFromModule(true));
    v.push_back(gorensteinFromModule(false));
    v.push_back(gorensteinFromOmegaHom(true));
    v.push_back(gorensteinFromOmegaHom(false));
    v.push_back(phiProbe());
    return v;
  }();
  return catalog;
}

inline const Probe& findProbe(const std::string& id) {
  for (auto& p : probeCatalog())
    if (p.id == id) return p;
  throw StructuralError("unknown probe " + id);
}

namespace detail {

struct BindingResult {
  ProbeOutcome::Kind kind;
  std::string which, reason;
  nlohmann::json record;
};

inline BindingResult evaluateBinding(const Probe& p, ProbeContext& c) {
  BindingResult r{ProbeOutcome::Kind::Verified, "", "", nlohmann::json::object()};
  nlohmann::json pre = nlohmann::json::object(), con = nlohmann::json::object();
  auto run = [&](const Clause& cl) {
    try {
      return cl.eval(c);
    } catch (const UnsupportedError& e) {
      c.notes[cl.name] = std::string("unsupported: ") + e.what();
      return Tri::Unknown;
    } catch (const ZeroModuleError& e) {
      c.notes[cl.name] = std::string("zero module: ") + e.what();
      return Tri::Unknown;
    }
  };
  for (auto& cl : p.premises) {
    Tri t = run(cl);
    pre[cl.name] = triName(t);
    if (t == Tri::False) {
      r.kind = ProbeOutcome::Kind::PremiseFailed;
      r.which = cl.name;
      break;
    }
    if (t == Tri::Unknown) {
      r.kind = ProbeOutcome::Kind::Inconclusive;
      r.reason = "premise undecided: " + cl.name;
      break;
    }
  }
  if (r.kind == ProbeOutcome::Kind::Verified) {
    for (auto& cl : p.conclusions) {
      Tri t = run(cl);
      con[cl.name] = triName(t);
      if (t == Tri::False && r.kind != ProbeOutcome::Kind::Refuted) {
        r.kind = ProbeOutcome::Kind::Refuted;
        r.which = cl.name;
      } else if (t == Tri::Unknown && r.kind == ProbeOutcome::Kind::Verified) {
        r.kind = ProbeOutcome::Kind::Inconclusive;
        r.reason = "conclusion undecided: " + cl.name;
      }
    }
  }
  if (p.exploratory) {
    r.kind = ProbeOutcome::Kind::Inconclusive;
    r.reason = "recorded";
    r.which.clear();
  }
  r.record = {{"binding", c.names}, {"premises", pre}, {"conclusions", con}, {"notes", c.notes}};
  return r;
}

}  // namespace detail

/// Evaluate a probe on every binding of its roles to the instance's modules.
/// Roles matching module names bind directly; otherwise all assignments are tried.
inline ProbeOutcome runProbe(const Probe& p, const Instance& inst, const Bounds& bounds = {}) {
  std::vector<std::map<std::string, std::string>> bindings;
  bool direct = true;
  for (auto& role : p.roles) direct = direct && inst.modules.count(role);
  if (p.roles.empty() || direct) {
    std::map<std::string, std::string> b;
    for (auto& role : p.roles) b[role] = role;
    bindings.push_back(b);
  } else {
    if (inst.modules.empty()) throw StructuralError("instance " + inst.id + " provides no modules for probe " + p.id);
    bindings.push_back({});
    for (auto& role : p.roles) {
      std::vector<std::map<std::string, std::string>> next;
      for (auto& b : bindings)
        for (auto& [name, M] : inst.modules) {
          auto e = b;
          e[role] = name;
          next.push_back(e);
        }
      bindings = std::move(next);
    }
  }

  ProbeOutcome out;
  nlohmann::json records = nlohmann::json::array();
  std::map<std::string, int> counts;
  const detail::BindingResult* refuted = nullptr;
  std::vector<detail::BindingResult> results;
  results.reserve(bindings.size());
  for (auto& b : bindings) {
    ProbeContext c{inst, bounds, b, {}};
    for (auto& [role, name] : b) c.bind.emplace(role, inst.module(name));
    results.push_back(detail::evaluateBinding(p, c));
    records.push_back(results.back().record);
  }
  bool anyVerified = false, anyInconclusive = false;
  for (auto& r : results) {
    ProbeOutcome tmp;
    tmp.kind = r.kind;
    counts[tmp.name()]++;
    if (r.kind == ProbeOutcome::Kind::Refuted && !refuted) refuted = &r;
    anyVerified = anyVerified || r.kind == ProbeOutcome::Kind::Verified;
    anyInconclusive = anyInconclusive || r.kind == ProbeOutcome::Kind::Inconclusive;
  }
  if (refuted) {
    out.kind = ProbeOutcome::Kind::Refuted;
    out.which = refuted->which;
    std::string bind;
    for (auto& [role, name] : refuted->record["binding"].items()) bind += " " + role + "=" + name.get<std::string>();
    out.witness = serializeInstance(inst) + "# probe " + p.id + ", binding" + bind + "\n# failing: " + refuted->which + "\n";
  } else if (anyVerified) {
    out.kind = ProbeOutcome::Kind::Verified;
  } else if (anyInconclusive) {
    out.kind = ProbeOutcome::Kind::Inconclusive;
    for (auto& r : results)
      if (r.kind == ProbeOutcome::Kind::Inconclusive) {
        out.reason = r.reason;
        break;
      }
  } else {
    out.kind = ProbeOutcome::Kind::PremiseFailed;
    out.which = results.empty() ? "" : results.front().which;
  }
  out.detail = {{"statement", p.statement}, {"quote", p.quote}, {"counts", counts}, {"bindings", records}};
  return out;
}

struct SuiteCell {
  std::string probe, instance;
  ProbeOutcome outcome;
  std::int64_t millis = 0;
};

struct Report {
  std::string suite;
  std::vector<SuiteCell> cells;

  int count(ProbeOutcome::Kind k) const {
    int n = 0;
    for (auto& c : cells) n += c.outcome.kind == k;
    return n;
  }
  nlohmann::json toJson() const {
    nlohmann::json cs = nlohmann::json::array();
    for (auto& c : cells) {
      nlohmann::json d = c.outcome.detail;
      if (!c.outcome.which.empty()) d["which"] = c.outcome.which;
      if (!c.outcome.reason.empty()) d["reason"] = c.outcome.reason;
      if (!c.outcome.witness.empty()) d["witness"] = c.outcome.witness;
      cs.push_back({{"probe", c.probe}, {"instance", c.instance}, {"outcome", c.outcome.name()}, {"detail", d}, {"millis", c.millis}});
    }
    return {{"suite", suite},
            {"cells", cs},
            {"totals",
             {{"cells", cells.size()},
              {"verified", count(ProbeOutcome::Kind::Verified)},
              {"premiseFailed", count(ProbeOutcome::Kind::PremiseFailed)},
              {"inconclusive", count(ProbeOutcome::Kind::Inconclusive)},
              {"refuted", count(ProbeOutcome::Kind::Refuted)}}},
            {"engineVersion", kEngineVersion}};
  }
};

inline unsigned defaultThreads() {
  if (const char* e = std::getenv("HOMOLAB_THREADS")) {
    int n = std::atoi(e);
    if (n > 0) return static_cast<unsigned>(n);
  }
  unsigned h = std::thread::hardware_concurrency();
  return h ? h : 1;
}

/// Probe x instance cross product; cells run concurrently, each under its own deadline.
inline Report runSuite(const std::vector<Probe>& probes, const std::vector<Instance>& instances, const Bounds& bounds = {},
                       const std::string& name = "suite", unsigned threads = 0) {
  Report rep;
  rep.suite = name;
  for (auto& p : probes)
    for (auto& i : instances) rep.cells.push_back({p.id, i.id, {}, 0});
  if (rep.cells.empty()) return rep;
  if (threads == 0) threads = defaultThreads();
  threads = std::min<unsigned>(threads, static_cast<unsigned>(rep.cells.size()));
  std::atomic<std::size_t> next{0};
  const std::size_t ni = instances.size();
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < rep.cells.size();) {
      const Probe& p = probes[k / ni];
      const Instance& inst = instances[k % ni];
      auto t0 = std::chrono::steady_clock::now();
      ProbeOutcome o;
      try {
        DeadlineScope scope(bounds.timeout);
        o = runProbe(p, inst, bounds);
      } catch (const TimeoutError&) {
        o.kind = ProbeOutcome::Kind::Inconclusive;
        o.reason = "timeout";
      } catch (const Error& e) {
        o.kind = ProbeOutcome::Kind::Inconclusive;
        o.reason = std::string("error: ") + e.what();
      }
      rep.cells[k].outcome = std::move(o);
      rep.cells[k].millis =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rep;
}

namespace detail {

struct CatalogRing {
  std::string name;
  QRingPtr ring;
  Polynomial linear;
};

inline const std::vector<CatalogRing>& catalogRings() {
  static const std::vector<CatalogRing> rings = [] {
    std::vector<CatalogRing> v;
    auto S2 = PolyRing::create(7, {"x", "y"});
    auto S3 = PolyRing::create(7, {"x", "y", "z"});
    auto x = Polynomial::variable(S2, 0), y = Polynomial::variable(S2, 1);
    auto a = Polynomial::variable(S3, 0), b = Polynomial::variable(S3, 1), c = Polynomial::variable(S3, 2);
    v.push_back({"S2", QuotientRing::create(S2), x});
    v.push_back({"S3", QuotientRing::create(S3), a});
    v.push_back({"xy", QuotientRing::create(S2, {x * y}), x});
    v.push_back({"x2", QuotientRing::create(S2, {x * x}), y});
    v.push_back({"ci", QuotientRing::create(S2, {x * x, y * y}), x});
    v.push_back({"m2", QuotientRing::create(S2, {x * x, x * y, y * y}), x});
    v.push_back({"axes", QuotientRing::create(S3, {a * b, a * c, b * c}), a + b + c});
    v.push_back({"nonCM", QuotientRing::create(S2, {x * x, x * y}), y});
    return v;
  }();
  return rings;
}

}  // namespace detail

/// Named modules of a catalog ring: R, k, m, R/(l), omega (CM only), Omega^1(k), Tr(k).
inline std::map<std::string, GradedModule> catalogModules(const QRingPtr& ring, const Polynomial& linear) {
  std::map<std::string, GradedModule> m;
  GradedModule R = GradedModule::free(ring, {0}), k = GradedModule::residueField(ring);
  m.emplace("R", R);
  m.emplace("k", k);
  m.emplace("m", minimalize(kernelModule(ModuleMap(R, k, {vec::unit(ring->nvars(), 0)}))));
  m.emplace("lin", GradedModule::cyclic(ring, {linear}));
  if (ringProfile(ring).isCM) m.emplace("omega", canonicalModule(ring));
  m.emplace("syz1k", syzygyModule(k, 1));
  m.emplace("trk", transpose(k));
  return m;
}

/// The built-in instances: four module groupings per catalog ring plus the worked examples.
inline const std::vector<Instance>& builtinInstances() {
  static const std::vector<Instance> all = [] {
    std::vector<Instance> v;
    for (auto& cr : detail::catalogRings()) {
      auto mods = catalogModules(cr.ring, cr.linear);
      auto make = [&](const std::string& suffix, std::vector<std::string> names) {
        Instance inst;
        inst.id = cr.name + "/" + suffix;
        inst.ring = cr.ring;
        inst.provenance.kind = Provenance::Kind::Catalog;
        for (auto& n : names)
          if (mods.count(n)) inst.add(n, mods.at(n));
        v.push_back(std::move(inst));
      };
      make("R-k", {"R", "k"});
      make("m-lin", {"m", "lin"});
      if (mods.count("omega")) make("omega-k", {"omega", "k"});
      else make("lin-k", {"lin", "k"});
      make("syz-tr", {"syz1k", "trk"});
    }
    const auto& rings = detail::catalogRings();
    auto special = [&](const std::string& id, const QRingPtr& ring, std::map<std::string, GradedModule> mods) {
      Instance inst;
      inst.id = id;
      inst.ring = ring;
      inst.provenance.kind = Provenance::Kind::Catalog;
      for (auto& [n, M] : mods) inst.add(n, M);
      v.push_back(std::move(inst));
    };
    {
      const auto& S3 = rings[1].ring;
      special("koszul", S3, {{"M", GradedModule::residueField(S3)}, {"N", GradedModule::residueField(S3)}});
      const auto& H = rings[2].ring;
      special("hypersurface", H, {{"M", GradedModule::cyclic(H, {Polynomial::variable(H->cover(), 0)})}});
      const auto& S2 = rings[0].ring;
      special("spherical", S2, {{"M", GradedModule::cyclic(S2, {Polynomial::variable(S2->cover(), 0)})}});
      const auto& C = rings[4].ring;
      special("ci-cyclic", C, {{"M", GradedModule::cyclic(C, {Polynomial::variable(C->cover(), 0)})}});
    }
    return v;
  }();
  return all;
}

inline const Instance& findInstance(const std::string& id) {
  for (auto& i : builtinInstances())
    if (i.id == id) return i;
  throw StructuralError("unknown instance " + id);
}

struct RandomParams {
  int vars = 3;
  int maxIdealDeg = 3;
  int maxModuleGens = 3;
  int maxRelDeg = 3;
};

namespace detail {

inline Monomial randomMonomial(std::mt19937_64& rng, int n, int degree) {
  std::vector<int> e(n, 0);
  for (int d = 0; d < degree; ++d) e[rng() % n]++;
  return Monomial(e);
}

inline Polynomial randomForm(std::mt19937_64& rng, const RingPtr& S, int degree, int terms) {
  std::vector<Polynomial::TermType> ts;
  for (int k = 0; k < terms; ++k)
    ts.emplace_back(randomMonomial(rng, S->nvars(), degree),
                    static_cast<std::uint32_t>(1 + rng() % (S->field().characteristic() - 1)));
  return Polynomial::fromTerms(S, ts);
}

inline GradedModule randomModule(std::mt19937_64& rng, const QRingPtr& ring, const RandomParams& prm) {
  const auto& S = ring->cover();
  for (;;) {
    int g = 1 + static_cast<int>(rng() % prm.maxModuleGens);
    std::vector<int> deg(g);
    for (auto& d : deg) d = static_cast<int>(rng() % 2);
    int r = static_cast<int>(rng() % (g + 1));
    std::vector<int> cd;
    std::vector<Vec> cols;
    for (int j = 0; j < r; ++j) {
      int D = 1 + static_cast<int>(rng() % prm.maxRelDeg) + *std::max_element(deg.begin(), deg.end());
      Vec v;
      for (int i = 0; i < g; ++i) {
        if (rng() % 3 == 0 || D - deg[i] < 1) continue;
        Polynomial f = randomForm(rng, S, D - deg[i], 1 + static_cast<int>(rng() % 2));
        for (auto& [m, c] : f.terms()) v.push_back({m, static_cast<std::uint32_t>(i), c});
      }
      vec::sortCombine(v, S->order(), S->field());
      if (v.empty()) continue;
      cd.push_back(D);
      cols.push_back(std::move(v));
    }
    GradedModule M(ring, deg, PolyMatrix(S, deg, cd, cols));
    if (!M.isZero()) return M;
  }
}

}  // namespace detail

/// Deterministic random instance: a monomial or binomial quotient with two random modules.
inline Instance randomInstance(std::uint64_t seed, const RandomParams& prm = {}) {
  if (prm.vars < 1 || prm.vars > 3 || prm.maxIdealDeg < 2 || prm.maxIdealDeg > 3 || prm.maxModuleGens < 1 ||
      prm.maxModuleGens > 3 || prm.maxRelDeg < 1 || prm.maxRelDeg > 3)
    throw StructuralError("randomInstance: parameters outside the documented caps");
  std::mt19937_64 rng(seed);
  static const char* names[] = {"x", "y", "z"};
  int n = 1 + static_cast<int>(rng() % prm.vars);
  auto S = PolyRing::create(7, std::vector<std::string>(names, names + n));
  int ng = 1 + static_cast<int>(rng() % 2);
  std::vector<Polynomial> ideal;
  for (int i = 0; i < ng || ideal.empty(); ++i) {
    int d = 2 + static_cast<int>(rng() % (prm.maxIdealDeg - 1));
    Polynomial f = Polynomial::monomial(S, detail::randomMonomial(rng, n, d));
    if (rng() % 2) f = f - Polynomial::monomial(S, detail::randomMonomial(rng, n, d));
    if (!f.isZero()) ideal.push_back(f);
  }
  Instance inst;
  inst.id = "random-" + std::to_string(seed);
  inst.ring = QuotientRing::create(S, ideal);
  inst.provenance = {Provenance::Kind::Random, seed};
  inst.add("A", detail::randomModule(rng, inst.ring, prm));
  inst.add("B", detail::randomModule(rng, inst.ring, prm));
  return inst;
}

/// Nonzero module over a polynomial ring presented by monomial multiples of its generators.
inline GradedModule randomMonomialModule(std::uint64_t seed, const QRingPtr& ring) {
  std::mt19937_64 rng(seed);
  const auto& S = ring->cover();
  const int n = ring->nvars();
  int g = 1 + static_cast<int>(rng() % 2);
  std::vector<int> deg(g);
  for (auto& d : deg) d = static_cast<int>(rng() % 2);
  std::vector<int> cd;
  std::vector<Vec> cols;
  for (int i = 0; i < g; ++i) {
    int r = static_cast<int>(rng() % 4);
    for (int j = 0; j < r; ++j) {
      Monomial m = detail::randomMonomial(rng, n, 1 + static_cast<int>(rng() % 3));
      cols.push_back(Vec{Term{m, static_cast<std::uint32_t>(i), 1}});
      cd.push_back(deg[i] + m.degree());
    }
  }
  return GradedModule(ring, deg, PolyMatrix(S, deg, cd, cols));
}

}  // namespace homolab
