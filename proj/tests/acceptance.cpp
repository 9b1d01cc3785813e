#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include <homolab/cli.hpp>

#include "support.hpp"

using namespace homolab;
using namespace support;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

struct Criterion {
  int id;
  std::string name;
  double limitSeconds;
  std::function<Verdict()> run;
};

std::int64_t totalDim(const GradedModule& M, int lo, int hi) {
  if (M.isZero()) return 0;
  std::int64_t s = 0;
  for (auto v : engineHilbert(M, lo, hi)) s += v;
  return s;
}

std::uint64_t binom(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int muOf(const GradedModule& X) { return X.isZero() ? 0 : static_cast<int>(minimalize(X).rank()); }

// Hilbert function of X equals that of M(s) for some shift s in [-span, span]
bool hilbertMatchesShift(const GradedModule& X, const GradedModule& M, int span, int lo, int hi) {
  if (X.isZero() || M.isZero()) return X.isZero() == M.isZero();
  auto hx = engineHilbert(X, lo, hi);
  for (int s = -span; s <= span; ++s)
    if (hx == engineHilbert(M.twist(s), lo, hi)) return true;
  return false;
}

struct CatalogEntry {
  std::string ring;
  std::string name;
  GradedModule M;
};

std::vector<CatalogEntry> catalogEntries() {
  std::vector<CatalogEntry> out;
  std::set<std::string> seen;
  for (auto& inst : builtinInstances())
    for (auto& [name, M] : inst.modules) {
      auto ringName = inst.id.substr(0, inst.id.find('/'));
      auto key = std::to_string(reinterpret_cast<std::uintptr_t>(inst.ring.get())) + "|" + M.fingerprint();
      if (seen.insert(key).second && !M.isZero()) out.push_back({ringName, name, M});
    }
  return out;
}

Verdict koszulExample() {
  Verdict v;
  auto S = poly3();
  auto R = quotient(S);
  auto M = cyclic(R, {var(S, 0), var(S, 1), var(S, 2)});
  auto ext = extModules(M, k(R), 3);
  std::string dims;
  for (int i = 0; i <= 3; ++i) {
    auto d = totalDim(ext[i], -6, 6);
    dims += (i ? "," : "") + std::to_string(d);
    v.require(d == static_cast<std::int64_t>(binom(3, i)), "dim Ext^" + std::to_string(i) + " = " + std::to_string(d));
  }
  if (v.ok) v.detail = "dims " + dims;
  return v;
}

Verdict hypersurfacePeriodicity() {
  Verdict v;
  auto S = poly2();
  auto R = quotient(S, {var(S, 0) * var(S, 1)});
  auto M = cyclic(R, {var(S, 0)});
  auto F = minimalFreeResolution(M, 10);
  for (int i = 0; i <= 10; ++i) v.require(F.betti(i) == 1, "beta_" + std::to_string(i) + " = " + std::to_string(F.betti(i)));
  v.require(projDim(M).isInfinite(), "projDim not Infinite");
  auto ext = extModules(M, M, 5);
  std::string dims;
  for (int i = 0; i <= 2; ++i) dims += (i ? "," : "") + std::to_string(totalDim(ext[2 * i + 1], -12, 6));
  for (int i = 0; i <= 2; ++i)
    v.require(hilbertMatchesShift(ext[2 * i + 1], M, 12, -12, 12),
              "Ext^" + std::to_string(2 * i + 1) + "(M,M) matches no twist of M; total dims of Ext^1,3,5: " + dims);
  if (v.ok) v.detail = "betti 1 through index 10, odd Ext dims " + dims;
  return v;
}

Verdict auslanderBuchsbaum() {
  Verdict v;
  auto R = quotient(PolyRing::create(101, {"x", "y", "z"}));
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto M = randomMonomialModule(seed, R);
    v.require(!M.isZero(), "seed " + std::to_string(seed) + " gave the zero module");
    if (M.isZero()) continue;
    auto pd = projDim(M);
    v.require(pd.isFinite(), "seed " + std::to_string(seed) + ": pd not finite");
    if (!pd.isFinite()) continue;
    int depth = depthOf(M);
    v.require(pd.value + depth == 3, "seed " + std::to_string(seed) + ": pd " + std::to_string(pd.value) + " + depth " +
                                         std::to_string(depth) + " != 3");
    ++checked;
  }
  if (v.ok) v.detail = std::to_string(checked) + " modules";
  return v;
}

Verdict sqmmDuality() {
  Verdict v;
  Bounds b;
  int pairs = 0, certified = 0;
  for (auto& cr : detail::catalogRings()) {
    const auto& prof = ringProfile(cr.ring);
    if (!prof.isCM || !prof.omega) continue;
    auto mods = catalogModules(cr.ring, cr.linear);
    const GradedModule& w = *prof.omega;
    for (auto& [mn, M] : mods)
      for (auto& [nn, N] : mods) {
        ++pairs;
        bool finite = gDim(N, b.gdimBound).isFinite();
        auto ext = extModules(M, N, b.extMax);
        for (int i = 0; finite && i <= b.extMax; ++i) finite = ext[i].isZero() || gDim(ext[i], b.gdimBound).isFinite();
        if (!finite) continue;
        ++certified;
        for (auto& bd : extComparison(M, N, w, b.extMax))
          v.require(bd.diagnostics.isIsomorphism && bd.cochainIso,
                    cr.name + " (" + mn + "," + nn + ") i=" + std::to_string(bd.i) + " not an isomorphism");
      }
  }
  std::vector<Probe> probes{findProbe("P11"), findProbe("P12")};
  auto rep = runSuite(probes, builtinInstances(), b, "sqmm");
  int refuted = rep.count(ProbeOutcome::Kind::Refuted);
  v.require(refuted == 0, std::to_string(refuted) + " refuted cells");
  v.require(certified > 0, "no pair had certified premises");
  if (v.ok) v.detail = std::to_string(certified) + " of " + std::to_string(pairs) + " pairs certified, 0 refuted";
  return v;
}

Verdict typeFormula() {
  Verdict v;
  auto S = poly2();
  auto R = quotient(S, {var(S, 0) * var(S, 0), var(S, 1) * var(S, 1)});
  std::vector<GradedModule> mods;
  for (auto& e : catalogEntries())
    if (e.ring == "ci") mods.push_back(e.M);
  std::mt19937_64 rng(5);
  while (mods.size() < 10) {
    auto M = minimalize(randomModule(rng, R));
    if (!M.isZero()) mods.push_back(M);
  }
  mods.resize(10);
  for (std::size_t q = 0; q < mods.size(); ++q) {
    const auto& M = mods[q];
    auto g = gDim(M, 4);
    v.require(g.isFinite(), "module " + std::to_string(q) + ": gdim " + g.statusName());
    if (!g.isFinite()) continue;
    int type = typeAndMu(M).type, m = muOf(extModule(M, support::R(R), g.value));
    v.require(type == m, "module " + std::to_string(q) + ": type " + std::to_string(type) + " mu " + std::to_string(m));
  }
  if (v.ok) v.detail = "10 modules";
  return v;
}

Verdict deficiencySupport() {
  Verdict v;
  auto entries = catalogEntries();
  for (auto& e : entries) {
    auto dd = dimDepth(e.M);
    for (int i = 0; i <= e.M.ring()->nvars(); ++i) {
      bool nonzero = !deficiency(e.M, i).isZero();
      std::string where = e.ring + "/" + e.name + " K^" + std::to_string(i);
      if (i < dd.depth || i > dd.dim) v.require(!nonzero, where + " nonzero outside the window");
      if (i == dd.depth || i == dd.dim) v.require(nonzero, where + " zero at an endpoint");
    }
  }
  if (v.ok) v.detail = std::to_string(entries.size()) + " modules";
  return v;
}

Verdict gorensteinLadder() {
  Verdict v;
  int rings = 0;
  for (auto& cr : detail::catalogRings()) {
    const auto& prof = ringProfile(cr.ring);
    if (!prof.isCM) continue;
    ++rings;
    auto R = support::R(cr.ring);
    const GradedModule& w = *prof.omega;
    auto ws = homModule(w, R);
    std::vector<std::pair<std::string, FinitenessVerdict>> c{{"Gid(k)", gInjDim(k(cr.ring), 4)},
                                                             {"Gid(R)", gInjDim(R, 4)},
                                                             {"G-dim(omega)", gDim(w, 4)},
                                                             {"G-dim(omega*)", gDim(ws, 4)}};
    for (auto& [name, f] : c) {
      v.require(!f.isUnknown(), cr.name + ": " + name + " unknown");
      v.require(f.isFinite() == prof.isGorenstein, cr.name + ": " + name + " disagrees with Gorenstein = " +
                                                        (prof.isGorenstein ? "true" : "false"));
    }
  }
  auto rep = runSuite({findProbe("P19")}, builtinInstances(), {}, "P19");
  v.require(rep.count(ProbeOutcome::Kind::Refuted) == 0, "P19 refuted");
  if (v.ok) v.detail = std::to_string(rings) + " Cohen-Macaulay rings";
  return v;
}

Verdict fullSuite() {
  Verdict v;
  const char* argv[] = {"homolab", "verify", "--suite", "all", "--json", "-"};
  std::ostringstream out, err;
  int code = runCli(6, argv, out, err);
  auto text = out.str();
  auto pos = text.rfind("probes x");
  v.require(pos != std::string::npos, "no summary line");
  if (!v.ok) return v;
  auto j = nlohmann::json::parse(text.substr(0, text.rfind('\n', pos)));
  int refuted = j["totals"]["refuted"].get<int>();
  std::set<std::string> probes, instances;
  for (auto& c : j["cells"]) {
    probes.insert(c["probe"].get<std::string>());
    instances.insert(c["instance"].get<std::string>());
  }
  v.require(code == 0, "exit code " + std::to_string(code));
  v.require(refuted == 0, std::to_string(refuted) + " refuted");
  v.require(probes.size() >= 24, std::to_string(probes.size()) + " probes");
  v.require(instances.size() >= 30, std::to_string(instances.size()) + " instances");
  if (v.ok)
    v.detail = std::to_string(probes.size()) + " probes x " + std::to_string(instances.size()) + " instances, " +
               std::to_string(j["totals"]["cells"].get<int>()) + " cells, 0 refuted";
  return v;
}

Verdict kernelOracles() {
  Verdict v;
  std::mt19937_64 rng(909);
  auto S3 = poly3();
  int membership = 0;
  for (int t = 0; t < 20; ++t) {
    auto gens = randomIdeal(rng, S3, 1 + static_cast<int>(rng() % 3), 3);
    auto gb = buchberger(gens);
    std::vector<oracle::SparsePoly> og;
    for (auto& g : gens) og.push_back(oracle::fromPolynomial(g));
    for (int d = 1; d <= 8; ++d)
      for (int s = 0; s < 2; ++s) {
        Polynomial f = randomForm(rng, S3, d, 1 + static_cast<int>(rng() % 4));
        if (s == 0) {
          Polynomial acc(S3);
          for (auto& g : gens)
            if (g.degree() <= d) acc = acc + g * randomForm(rng, S3, d - g.degree(), 2);
          f = acc;
        }
        bool engine = normalForm(f, gb).isZero();
        v.require(engine == oracle::inIdeal(oracle::fromPolynomial(f), og, 3, 7),
                  "membership disagrees for ideal " + std::to_string(t) + " degree " + std::to_string(d));
        ++membership;
      }
  }

  auto S2 = poly2();
  auto x = var(S2, 0), y = var(S2, 1);
  std::vector<QRingPtr> rings{quotient(S2), quotient(S2, {x * y}), quotient(S2, {x * x, y * y}), quotient(S2, {x * x, x * y})};
  int complexes = 0;
  auto checkComplex = [&](const BoundedComplex& X, const QRingPtr& ring, const std::string& what) {
    for (int i = X.low() + 2; i <= X.high(); ++i)
      v.require(oracle::productVanishes(X.differential(i - 1), X.differential(i), ring), what + ": d^2 != 0 at " + std::to_string(i));
    ++complexes;
  };
  int pairs = 0;
  for (int t = 0; t < 20; ++t) {
    auto ring = rings[t % rings.size()];
    auto M = randomModule(rng, ring), N = randomModule(rng, ring);
    auto FM = minimalFreeResolution(M, 3).toComplex(), FN = minimalFreeResolution(N, 3).toComplex();
    checkComplex(FM, ring, "resolution");
    checkComplex(tensorComplex(FM, FN), ring, "tensor complex");
    checkComplex(homComplex(FM, FN), ring, "hom complex");
    checkComplex(koszulComplex(ring, {x, y}), ring, "Koszul complex");
    auto ext = extModules(M, N, 3);
    for (int i = 0; i <= 3; ++i)
      for (int d = -8; d <= 8; ++d) {
        auto a = ext[i].isZero() ? 0 : engineHilbert(ext[i], d, d)[0];
        auto b = oracle::extDim(M, N, i, d);
        v.require(a == b, "Ext^" + std::to_string(i) + " degree " + std::to_string(d) + " pair " + std::to_string(t) + ": " +
                              std::to_string(a) + " vs " + std::to_string(b));
      }
    ++pairs;
  }
  if (v.ok)
    v.detail = std::to_string(membership) + " membership samples, " + std::to_string(complexes) + " complexes, " +
               std::to_string(pairs) + " Ext pairs";
  return v;
}

Verdict verdictConsistency() {
  Verdict v;
  int finiteChecks = 0;
  for (auto& e : catalogEntries()) {
    const auto& prof = ringProfile(e.M.ring());
    std::string where = e.ring + "/" + e.name;
    if (prof.isGorenstein) {
      auto id = injDim(e.M);
      v.require(id.isFinite(), where + ": injDim " + id.statusName());
      v.require(!gDim(e.M, 4).isUnknown(), where + ": gDim unknown");
      ++finiteChecks;
    }
  }
  for (auto& cr : detail::catalogRings()) {
    const auto& prof = ringProfile(cr.ring);
    if (prof.isGorenstein) continue;
    auto id = injDim(support::R(cr.ring));
    v.require(id.isInfinite(), cr.name + ": injDim(R) " + id.statusName());
  }
  if (v.ok) v.detail = std::to_string(finiteChecks) + " modules over Gorenstein rings";
  return v;
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "Koszul Ext dimensions", 5, koszulExample},
      {2, "hypersurface periodicity", 30, hypersurfacePeriodicity},
      {3, "Auslander-Buchsbaum on monomial modules", 120, auslanderBuchsbaum},
      {4, "Ext duality over Cohen-Macaulay rings", 300, sqmmDuality},
      {5, "type formula over a Gorenstein ring", 60, typeFormula},
      {6, "deficiency support window", 120, deficiencySupport},
      {7, "Gorenstein ladder", 120, gorensteinLadder},
      {8, "full suite soundness", 600, fullSuite},
      {9, "kernel oracles", 600, kernelOracles},
      {10, "verdict consistency", 600, verdictConsistency},
  };
  return all;
}

bool runOne(const Criterion& c) {
  auto t0 = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = c.run();
  } catch (const std::exception& e) {
    v.ok = false;
    v.detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool inTime = secs < c.limitSeconds;
  bool pass = v.ok && inTime;
  char timing[64];
  std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, c.limitSeconds);
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.name << " (" << timing << ")";
  if (!v.detail.empty()) std::cout << " " << v.detail;
  if (!inTime) std::cout << " over time";
  std::cout << std::endl;
  return pass;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int a = 1; a < argc; ++a) {
    std::string s = argv[a];
    if (s == "--criterion" && a + 1 < argc) only = std::stoi(argv[++a]);
    else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 1;
    }
  }
  bool all = true;
  bool found = false;
  for (auto& c : criteria()) {
    if (only && c.id != only) continue;
    found = true;
    all = runOne(c) && all;
  }
  if (!found) {
    std::cerr << "no criterion " << only << "\n";
    return 1;
  }
  return all ? 0 : 1;
}
