#include <set>
#include <thread>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace homolab;
using namespace support;

namespace {

using Kind = ProbeOutcome::Kind;

Instance makeInstance(const std::string& id, const QRingPtr& ring, std::map<std::string, GradedModule> mods) {
  Instance inst;
  inst.id = id;
  inst.ring = ring;
  inst.provenance.kind = Provenance::Kind::User;
  for (auto& [n, M] : mods) inst.add(n, M);
  return inst;
}

Probe constantProbe(const std::string& id, Tri premise, Tri conclusion) {
  Probe p{id, "test statement", "test quote", {"M"}, {}, {}};
  p.premises.push_back({"premise", [premise](ProbeContext&) { return premise; }});
  p.conclusions.push_back({"conclusion", [conclusion](ProbeContext&) { return conclusion; }});
  return p;
}

std::string ringKey(const Instance& inst) {
  std::string s = std::to_string(inst.ring->nvars());
  for (auto& g : inst.ring->idealGenerators()) s += "|" + g.toString();
  return s;
}

}  // namespace

TEST(ThreeValued, Connectives) {
  const Tri T = Tri::True, F = Tri::False, U = Tri::Unknown;
  EXPECT_EQ(triAnd(T, U), U);
  EXPECT_EQ(triAnd(F, U), F);
  EXPECT_EQ(triOr(T, U), T);
  EXPECT_EQ(triOr(F, U), U);
  EXPECT_EQ(triNot(U), U);
  EXPECT_EQ(triNot(F), T);
  EXPECT_EQ(triImplies(F, U), T);
  EXPECT_EQ(triImplies(T, F), F);
  EXPECT_EQ(triIff(T, T), T);
  EXPECT_EQ(triIff(T, U), U);
  EXPECT_EQ(triIff(F, T), F);
}

TEST(ProbeCatalog, Contents) {
  const auto& cat = probeCatalog();
  EXPECT_GE(cat.size(), 24u);
  std::set<std::string> ids;
  for (auto& p : cat) {
    EXPECT_TRUE(ids.insert(p.id).second) << "duplicate " << p.id;
    EXPECT_FALSE(p.statement.empty()) << p.id;
    EXPECT_FALSE(p.quote.empty()) << p.id;
    EXPECT_FALSE(p.conclusions.empty() && !p.exploratory) << p.id;
  }
  for (int i = 1; i <= 24; ++i) EXPECT_TRUE(ids.count("P" + std::to_string(i))) << "P" << i;
  EXPECT_TRUE(findProbe("P24").exploratory);
  EXPECT_THROW(findProbe("P999"), StructuralError);
}

TEST(RunProbe, KoszulExample) {
  auto o = runProbe(findProbe("P1"), findInstance("koszul"));
  EXPECT_EQ(o.kind, Kind::Verified) << o.toJson().dump();
  auto notes = o.detail["bindings"][0]["notes"]["extGenerators"];
  ASSERT_TRUE(notes.is_array());
  EXPECT_EQ(notes, nlohmann::json::parse("[1, 3, 3, 1]"));
}

TEST(RunProbe, PeriodicHypersurface) {
  auto o = runProbe(findProbe("P2"), findInstance("hypersurface"));
  EXPECT_EQ(o.kind, Kind::Verified) << o.toJson().dump();
}

TEST(RunProbe, AuslanderBuchsbaumOverPolynomialRing) {
  Three r;
  auto S = quotient(r.S);
  auto o = runProbe(findProbe("P4"), makeInstance("ab", S, {{"M", cyclic(S, {r.x, r.y * r.y})}}));
  EXPECT_EQ(o.kind, Kind::Verified);
}

TEST(RunProbe, GorensteinTypeFormula) {
  Two r;
  auto R = quotient(r.S, {r.x * r.x, r.y * r.y});
  auto o = runProbe(findProbe("P17"), makeInstance("ci", R, {{"M", cyclic(R, {r.x})}}));
  EXPECT_EQ(o.kind, Kind::Verified) << o.toJson().dump();
}

TEST(RunProbe, ExploratoryNeverAdjudicates) {
  for (auto& inst : builtinInstances()) {
    auto o = runProbe(findProbe("P24"), inst);
    EXPECT_EQ(o.kind, Kind::Inconclusive) << inst.id;
    EXPECT_EQ(o.reason, "recorded") << inst.id;
  }
}

TEST(RunProbe, UnknownPremiseIsInconclusive) {
  Two r;
  auto R = quotient(r.S);
  auto inst = makeInstance("u", R, {{"M", k(R)}});
  auto o = runProbe(constantProbe("T-unknown", Tri::Unknown, Tri::False), inst);
  EXPECT_EQ(o.kind, Kind::Inconclusive);
  auto f = runProbe(constantProbe("T-false", Tri::False, Tri::False), inst);
  EXPECT_EQ(f.kind, Kind::PremiseFailed);
  EXPECT_EQ(f.which, "premise");
  auto v = runProbe(constantProbe("T-true", Tri::True, Tri::True), inst);
  EXPECT_EQ(v.kind, Kind::Verified);
}

TEST(RunProbe, RefutationCarriesReplayableWitness) {
  Two r;
  auto R = quotient(r.S, {r.x * r.y});
  auto inst = makeInstance("w", R, {{"M", cyclic(R, {r.x})}});
  // deliberately false claim: every module over this ring is free
  Probe p{"T-false-claim", "test statement", "test quote", {"M"}, {}, {}};
  p.conclusions.push_back({"M is free", [](ProbeContext& c) { return tri(projDim(c["M"]).isFinite() && projDim(c["M"]).value == 0); }});
  auto o = runProbe(p, inst);
  ASSERT_EQ(o.kind, Kind::Refuted);
  EXPECT_EQ(o.which, "M is free");
  EXPECT_NE(o.witness.find("# probe T-false-claim"), std::string::npos);
  EXPECT_NE(o.witness.find("# failing: M is free"), std::string::npos);
  auto replay = parseInstanceFile(o.witness, "replay");
  EXPECT_TRUE(sameInstance(replay, inst));
  auto again = runProbe(p, replay);
  EXPECT_EQ(again.kind, Kind::Refuted);
  EXPECT_EQ(again.which, o.which);
}

TEST(RunProbe, AggregationPrefersRefutation) {
  Two r;
  auto R = quotient(r.S);
  auto inst = makeInstance("agg", R, {{"A", k(R)}, {"B", support::R(R)}});
  Probe p{"T-mixed", "test statement", "test quote", {"X"}, {}, {}};
  p.premises.push_back({"X nonzero", [](ProbeContext& c) { return tri(!c["X"].isZero()); }});
  p.conclusions.push_back({"X is free", [](ProbeContext& c) { return tri(projDim(c["X"]).value == 0); }});
  EXPECT_EQ(runProbe(p, inst).kind, Kind::Refuted);
  p.conclusions[0] = {"X nonzero again", [](ProbeContext& c) { return tri(!c["X"].isZero()); }};
  auto o = runProbe(p, inst);
  EXPECT_EQ(o.kind, Kind::Verified);
  EXPECT_EQ(o.detail["bindings"].size(), 2u);
}

TEST(RunProbe, MissingBindingsThrow) {
  Two r;
  auto R = quotient(r.S);
  auto inst = makeInstance("empty", R, {});
  EXPECT_THROW(runProbe(findProbe("P4"), inst), StructuralError);
}

TEST(RandomInstance, Deterministic) {
  for (std::uint64_t seed : {0ull, 7ull, 12345ull}) {
    auto a = randomInstance(seed), b = randomInstance(seed);
    EXPECT_EQ(serializeInstance(a), serializeInstance(b));
    EXPECT_TRUE(sameInstance(a, b));
    for (auto& [n, M] : a.modules) EXPECT_FALSE(M.isZero()) << "seed " << seed << " module " << n;
  }
}

TEST(RandomInstance, RingDiversity) {
  std::set<std::string> rings;
  for (std::uint64_t seed = 0; seed < 100; ++seed) rings.insert(ringKey(randomInstance(seed)));
  EXPECT_GE(rings.size(), 30u);
}

TEST(RandomInstance, OneVariableGivesTruncatedPolynomialRings) {
  RandomParams prm;
  prm.vars = 1;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = randomInstance(seed, prm);
    ASSERT_EQ(inst.ring->nvars(), 1);
    auto gb = inst.ring->idealBasis();
    ASSERT_EQ(gb.size(), 1u);
    EXPECT_EQ(gb[0].terms().size(), 1u);
  }
}

TEST(RandomInstance, CapsAreEnforced) {
  RandomParams prm;
  prm.vars = 4;
  EXPECT_THROW(randomInstance(1, prm), StructuralError);
  prm = {};
  prm.maxRelDeg = 5;
  EXPECT_THROW(randomInstance(1, prm), StructuralError);
}

TEST(RunSuite, EmptySelections) {
  auto rep = runSuite({}, {});
  EXPECT_TRUE(rep.cells.empty());
  auto j = rep.toJson();
  EXPECT_EQ(j["totals"]["cells"], 0);
  EXPECT_EQ(j["totals"]["refuted"], 0);
  EXPECT_EQ(j["engineVersion"], kEngineVersion);
}

TEST(RunSuite, OrderingIndependentOfThreads) {
  std::vector<Probe> probes{findProbe("P4"), findProbe("P5"), findProbe("P19")};
  std::vector<Instance> insts{findInstance("S2/R-k"), findInstance("xy/m-lin"), randomInstance(3)};
  auto a = runSuite(probes, insts, {}, "one", 1), b = runSuite(probes, insts, {}, "three", 3);
  ASSERT_EQ(a.cells.size(), 9u);
  ASSERT_EQ(a.cells.size(), b.cells.size());
  for (std::size_t q = 0; q < a.cells.size(); ++q) {
    EXPECT_EQ(a.cells[q].probe, b.cells[q].probe);
    EXPECT_EQ(a.cells[q].instance, b.cells[q].instance);
    EXPECT_EQ(a.cells[q].outcome.kind, b.cells[q].outcome.kind);
  }
  EXPECT_EQ(a.count(Kind::Refuted), 0);
}

TEST(RunSuite, TimeoutIsInconclusive) {
  Bounds b;
  b.timeout = std::chrono::milliseconds(1);
  Probe slow{"T-slow", "test statement", "test quote", {"M"}, {}, {}};
  slow.conclusions.push_back({"slow", [](ProbeContext&) {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    for (int i = 0; i < 1024; ++i) checkDeadline();
    return Tri::True;
  }});
  auto rep = runSuite({slow}, {findInstance("S2/R-k")}, b, "t", 1);
  ASSERT_EQ(rep.cells.size(), 1u);
  EXPECT_EQ(rep.cells[0].outcome.kind, Kind::Inconclusive);
  EXPECT_EQ(rep.cells[0].outcome.reason, "timeout");
}

TEST(RunSuite, RandomInstancesNeverRefute) {
  std::vector<Instance> insts;
  for (std::uint64_t seed = 100; seed < 106; ++seed) insts.push_back(randomInstance(seed));
  auto rep = runSuite(probeCatalog(), insts, {}, "random", 1);
  for (auto& c : rep.cells) EXPECT_NE(c.outcome.kind, Kind::Refuted) << c.probe << " on " << c.instance << "\n" << c.outcome.witness;
}
