#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "verify.hpp"

namespace homolab {

namespace cli {

inline std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Instance loadInstance(const std::string& path) {
  std::string id = std::filesystem::path(path).stem().string();
  return parseInstanceFile(readFile(path), id);
}

inline std::vector<std::string> splitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

inline nlohmann::json hilbertJson(const GradedModule& M) {
  if (M.isZero()) return nullptr;
  auto h = hilbertSeries(M);
  return {{"series", h.toString()}, {"numerator", h.numerator}};
}

inline nlohmann::json moduleJson(const GradedModule& M) {
  auto P = minimalize(M);
  nlohmann::json rels = nlohmann::json::array();
  for (auto& col : P.relations().columns()) {
    std::string s;
    for (std::size_t g = 0; g < P.rank(); ++g) {
      Vec part;
      for (auto& t : col)
        if (t.comp == g) part.push_back({t.m, 0, t.coef});
      if (part.empty()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + toPolynomial(M.ring()->cover(), part).toString() + ")*e" + std::to_string(g);
    }
    rels.push_back(s);
  }
  return {{"zero", P.isZero()}, {"generatorDegrees", P.degrees()}, {"relations", rels}, {"hilbert", hilbertJson(P)}};
}

struct Common {
  std::string file, module;
  bool json = false;
};

inline void emit(std::ostream& out, const nlohmann::json& j) { out << j.dump(2) << "\n"; }

inline int cmdInvariant(const Common& c, const std::string& which, int bound, std::ostream& out) {
  Instance inst = loadInstance(c.file);
  const GradedModule& M = inst.module(c.module);
  nlohmann::json j = nlohmann::json::object();
  std::ostringstream text;
  for (auto& w : splitList(which)) {
    if (w == "pd" || w == "id" || w == "gdim" || w == "gid") {
      FinitenessVerdict v = w == "pd" ? projDim(M) : w == "id" ? injDim(M) : w == "gdim" ? gDim(M, bound) : gInjDim(M, bound);
      j[w] = v.toJson();
      text << w << ": " << v.toString() << "\n";
    } else if (w == "depth" || w == "dim") {
      auto dd = dimDepth(M);
      j[w] = w == "depth" ? dd.depth : dd.dim;
      text << w << ": " << j[w] << "\n";
    } else if (w == "grade") {
      j[w] = grade(M);
      text << "grade: " << j[w] << "\n";
    } else if (w == "type") {
      auto tm = typeAndMu(M);
      j[w] = tm.type;
      text << "type: " << tm.type << "\n";
    } else if (w == "betti") {
      auto t = minimalFreeResolution(M, bound).bettiTable();
      j[w] = t.toJson();
      text << "betti:\n" << t.toString();
    } else {
      throw StructuralError("unknown invariant '" + w + "' (expected pd,id,gdim,gid,depth,dim,grade,type,betti)");
    }
  }
  if (c.json) emit(out, j);
  else out << text.str();
  return 0;
}

inline int cmdExt(const Common& c, const std::string& mName, const std::string& nName, int maxI, std::ostream& out) {
  Instance inst = loadInstance(c.file);
  auto exts = extModules(inst.module(mName), inst.module(nName), maxI);
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i <= maxI; ++i) {
    auto mj = moduleJson(exts[i]);
    mj["i"] = i;
    arr.push_back(mj);
    if (!c.json) {
      out << "Ext^" << i << "(" << mName << "," << nName << "): ";
      if (exts[i].isZero()) out << "0\n";
      else out << "generators in degrees " << mj["generatorDegrees"].dump() << ", Hilbert series " << mj["hilbert"]["series"].get<std::string>() << "\n";
    }
  }
  if (c.json) emit(out, {{"M", mName}, {"N", nName}, {"ext", arr}});
  return 0;
}

inline int cmdResolve(const Common& c, int length, std::ostream& out) {
  Instance inst = loadInstance(c.file);
  FreeResolution F = minimalFreeResolution(inst.module(c.module), length);
  auto t = F.bettiTable();
  if (c.json) {
    nlohmann::json maps = nlohmann::json::array();
    for (auto& m : F.maps) maps.push_back(m.toString());
    emit(out, {{"betti", t.toJson()}, {"length", F.length()}, {"differentials", maps}});
  } else {
    out << t.toString();
    for (int i = 1; i <= F.length(); ++i) out << "d" << i << ":\n" << F.differential(i).toString() << "\n";
  }
  return 0;
}

inline int cmdDeficiency(const Common& c, std::ostream& out) {
  Instance inst = loadInstance(c.file);
  const GradedModule& M = inst.module(c.module);
  auto dd = dimDepth(M);
  nlohmann::json arr = nlohmann::json::array();
  for (int i = 0; i <= inst.ring->nvars(); ++i) {
    GradedModule K = deficiency(M, i);
    auto kj = moduleJson(K);
    kj["i"] = i;
    arr.push_back(kj);
    if (!c.json) {
      out << "K^" << i << ": ";
      if (K.isZero()) out << "0\n";
      else out << "generators in degrees " << kj["generatorDegrees"].dump() << ", Hilbert series " << kj["hilbert"]["series"].get<std::string>() << "\n";
    }
  }
  if (c.json) emit(out, {{"depth", dd.depth}, {"dim", dd.dim}, {"deficiency", arr}});
  else out << "depth " << dd.depth << ", dim " << dd.dim << "\n";
  return 0;
}

inline int cmdSpherical(const Common& c, std::ostream& out) {
  Instance inst = loadInstance(c.file);
  SphericalReport r = sphericalConstruction(inst.module(c.module));
  nlohmann::json j = r.toJson();
  j["N"] = moduleJson(r.N);
  if (c.json) emit(out, j);
  else {
    out << "n = " << r.n << "\nN: " << r.N.toString() << "\n";
    out << "dual complex exact: " << (r.dualExact ? "yes" : "no") << "\n";
    out << "Ext^i(N,R) = 0 for 0 < i < n: " << (r.lowExtVanish ? "yes" : "no") << "\n";
    out << "M -> Ext^n(N,R) isomorphism: " << (r.topExtIsoM ? "yes" : "no") << "\n";
    if (r.pdN) out << "pd N: " << r.pdN->toString() << "\n";
  }
  return 0;
}

struct VerifyOptions {
  std::string suite = "all";
  std::string instancesDir;
  int random = 0;
  std::uint64_t seed = 0;
  std::string jsonOut;
  int extMax = 3;
  int bound = 4;
  int timeoutMs = 60000;
};

/// JSON and summary for a finished suite; exit code 2 when anything was refuted.
inline int writeReport(const Report& rep, const std::string& jsonOut, std::size_t nprobes, std::size_t ninstances,
                       std::ostream& out) {
  nlohmann::json j = rep.toJson();
  if (!jsonOut.empty()) {
    if (jsonOut == "-") emit(out, j);
    else {
      std::ofstream f(jsonOut);
      if (!f) throw StructuralError("cannot write " + jsonOut);
      f << j.dump(2) << "\n";
    }
  }
  for (auto& cell : rep.cells)
    if (cell.outcome.kind == ProbeOutcome::Kind::Refuted)
      out << "REFUTED " << cell.probe << " on " << cell.instance << ": " << cell.outcome.which << "\n" << cell.outcome.witness;
  out << nprobes << " probes x " << ninstances << " instances: " << j["totals"]["verified"] << " verified, "
      << j["totals"]["premiseFailed"] << " premise-failed, " << j["totals"]["inconclusive"] << " inconclusive, "
      << j["totals"]["refuted"] << " refuted\n";
  return rep.count(ProbeOutcome::Kind::Refuted) ? 2 : 0;
}

inline int cmdVerify(const VerifyOptions& o, std::ostream& out) {
  std::vector<Probe> probes;
  if (o.suite == "all") probes = probeCatalog();
  else
    for (auto& id : splitList(o.suite)) probes.push_back(findProbe(id));

  std::vector<Instance> instances;
  if (!o.instancesDir.empty()) {
    std::vector<std::filesystem::path> files;
    for (auto& e : std::filesystem::directory_iterator(o.instancesDir))
      if (e.path().extension() == ".inst") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (auto& f : files) instances.push_back(loadInstance(f.string()));
  }
  for (int k = 0; k < o.random; ++k) instances.push_back(randomInstance(o.seed + static_cast<std::uint64_t>(k)));
  if (o.instancesDir.empty() && o.random == 0) instances = builtinInstances();

  Bounds b;
  b.extMax = o.extMax;
  b.gdimBound = o.bound;
  b.timeout = std::chrono::milliseconds(o.timeoutMs);
  return writeReport(runSuite(probes, instances, b, o.suite), o.jsonOut, probes.size(), instances.size(), out);
}

}  // namespace cli

/// Command-line entry point. Returns the process exit code.
inline int runCli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"homolab: homological invariants of graded modules over quotients of polynomial rings", "homolab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kEngineVersion);

  cli::Common inv, ext, res, def, sph;
  std::string which = "pd,id,gdim,gid,depth,dim";
  int bound = 6, maxI = 3, length = 5;
  std::string mName, nName;
  cli::VerifyOptions vo;

  auto* cInv = app.add_subcommand("invariant", "homological invariants of one module");
  cInv->add_option("file", inv.file, "instance file")->required();
  cInv->add_option("--module", inv.module, "module name")->required();
  cInv->add_option("--which", which, "comma list of pd,id,gdim,gid,depth,dim,grade,type,betti");
  cInv->add_option("--bound", bound, "search bound for gdim, gid and betti")->check(CLI::PositiveNumber);
  cInv->add_flag("--json", inv.json, "JSON output");

  auto* cExt = app.add_subcommand("ext", "Ext modules of a pair");
  cExt->add_option("file", ext.file, "instance file")->required();
  cExt->add_option("-M", mName, "first module")->required();
  cExt->add_option("-N", nName, "second module")->required();
  cExt->add_option("--max-i", maxI, "largest index")->check(CLI::NonNegativeNumber);
  cExt->add_flag("--json", ext.json, "JSON output");

  auto* cRes = app.add_subcommand("resolve", "minimal free resolution");
  cRes->add_option("file", res.file, "instance file")->required();
  cRes->add_option("--module", res.module, "module name")->required();
  cRes->add_option("--length", length, "number of steps")->check(CLI::NonNegativeNumber);
  cRes->add_flag("--json", res.json, "JSON output");

  auto* cDef = app.add_subcommand("deficiency", "deficiency modules K^i(M)");
  cDef->add_option("file", def.file, "instance file")->required();
  cDef->add_option("--module", def.module, "module name")->required();
  cDef->add_flag("--json", def.json, "JSON output");

  auto* cSph = app.add_subcommand("construct-spherical", "spherical module from a module of positive grade");
  cSph->add_option("file", sph.file, "instance file")->required();
  cSph->add_option("--module", sph.module, "module name")->required();
  cSph->add_flag("--json", sph.json, "JSON output");

  auto* cVer = app.add_subcommand("verify", "run theorem probes");
  cVer->add_option("--suite", vo.suite, "all or a comma list of probe ids");
  cVer->add_option("--instances", vo.instancesDir, "directory of .inst files")->check(CLI::ExistingDirectory);
  cVer->add_option("--random", vo.random, "number of random instances")->check(CLI::NonNegativeNumber);
  cVer->add_option("--seed", vo.seed, "first random seed");
  cVer->add_option("--json", vo.jsonOut, "write the report to this path ('-' for stdout)");
  cVer->add_option("--ext-max", vo.extMax, "Ext range of the probes")->check(CLI::NonNegativeNumber);
  cVer->add_option("--bound", vo.bound, "gdim search bound")->check(CLI::PositiveNumber);
  cVer->add_option("--timeout-ms", vo.timeoutMs, "per cell timeout")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    if (code != 0) err << app.help();
    return code == 0 ? 0 : 1;
  }

  try {
    if (*cInv) return cli::cmdInvariant(inv, which, bound, out);
    if (*cExt) return cli::cmdExt(ext, mName, nName, maxI, out);
    if (*cRes) return cli::cmdResolve(res, length, out);
    if (*cDef) return cli::cmdDeficiency(def, out);
    if (*cSph) return cli::cmdSpherical(sph, out);
    if (*cVer) return cli::cmdVerify(vo, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace homolab
