#pragma once

#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "quotient_ring.hpp"

namespace homolab {

/// M = coker(A: F1 -> F0) over R = S/I. Generator i of F0 has degree degrees()[i].
class GradedModule {
public:
  GradedModule() = default;
  GradedModule(QRingPtr ring, std::vector<int> degrees, const PolyMatrix& relations)
      : ring_(std::move(ring)), degrees_(std::move(degrees)), cache_(std::make_shared<Cache>()) {
    if (relations.rows() != degrees_.size()) throw StructuralError("presentation rows do not match generators");
    if (!relations.ring()->sameAs(*ring_->cover())) throw StructuralError("presentation over a different ring");
    std::vector<int> rd;
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < relations.cols(); ++j) {
      const Vec& c = relations.column(j);
      for (auto& t : c)
        if (t.m.degree() + degrees_[t.comp] != relations.colDegrees()[j])
          throw StructuralError("presentation matrix is not homogeneous");
      Vec r = ring_->reduce(c);
      if (r.empty()) continue;
      rd.push_back(relations.colDegrees()[j]);
      cols.push_back(std::move(r));
    }
    rel_ = PolyMatrix(ring_->cover(), degrees_, rd, std::move(cols));
  }

  static GradedModule free(const QRingPtr& ring, std::vector<int> degrees) {
    auto d = degrees;
    return GradedModule(ring, std::move(degrees), PolyMatrix(ring->cover(), d, {}));
  }
  static GradedModule fromMatrix(const QRingPtr& ring, const PolyMatrix& A) {
    return GradedModule(ring, A.rowDegrees(), A);
  }
  /// R/(gens) with its generator in the given degree.
  static GradedModule cyclic(const QRingPtr& ring, const std::vector<Polynomial>& gens, int degree = 0) {
    std::vector<int> cd;
    std::vector<Vec> cols;
    for (auto& g : gens) {
      if (g.isZero()) continue;
      if (!g.isHomogeneous()) throw StructuralError("cyclic module: inhomogeneous relation");
      cd.push_back(g.degree() + degree);
      cols.push_back(toVec(g));
    }
    return GradedModule(ring, {degree}, PolyMatrix(ring->cover(), {degree}, cd, cols));
  }
  static GradedModule residueField(const QRingPtr& ring) {
    std::vector<Polynomial> v;
    for (int i = 0; i < ring->nvars(); ++i) v.push_back(Polynomial::variable(ring->cover(), i));
    return cyclic(ring, v);
  }
  static GradedModule zero(const QRingPtr& ring) { return free(ring, {}); }

  const QRingPtr& ring() const { return ring_; }
  const std::vector<int>& degrees() const { return degrees_; }
  std::size_t rank() const { return degrees_.size(); }
  const PolyMatrix& relations() const { return rel_; }
  bool hasRelations() const { return rel_.cols() > 0; }

  /// Groebner basis of the relation submodule (relations + I*F0), cached.
  std::shared_ptr<const TrackedGroebner> relationBasis() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->gb) {
      std::vector<GbInput> in;
      for (std::size_t j = 0; j < rel_.cols(); ++j) in.push_back({rel_.column(j), rel_.colDegrees()[j], InputRole::Background});
      cache_->gb = std::make_shared<const TrackedGroebner>(
          ring_->cover(), ModuleOrder::termOverPosition(ring_->cover()->order(), degrees_),
          ring_->idealTimesFree(rank()), std::move(in));
    }
    return cache_->gb;
  }
  void seedRelationBasis(std::shared_ptr<const TrackedGroebner> gb) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (!cache_->gb) cache_->gb = std::move(gb);
  }

  Vec normalForm(const Vec& v) const { return relationBasis()->normalForm(v); }
  bool isZeroElement(const Vec& v) const { return v.empty() || normalForm(v).empty(); }

  bool isZero() const {
    for (std::size_t i = 0; i < rank(); ++i)
      if (!isZeroElement(vec::unit(ring_->nvars(), static_cast<std::uint32_t>(i)))) return false;
    return true;
  }

  /// M(d): the degree-e part of M(d) is the degree-(d+e) part of M.
  GradedModule twist(int d) const {
    std::vector<int> deg = degrees_;
    for (auto& x : deg) x -= d;
    return GradedModule(ring_, deg, rel_.twisted(-d));
  }

  /// The same presentation read over the polynomial cover: coker([A | I*F0]).
  GradedModule overCover() const {
    auto S = ring_->coverRing();
    PolyMatrix A = rel_;
    std::vector<int> cd;
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < rank(); ++j)
      for (auto& f : ring_->idealGenerators()) {
        cd.push_back(f.degree() + degrees_[j]);
        cols.push_back(toVec(f, static_cast<std::uint32_t>(j)));
      }
    A = concatColumns(A, PolyMatrix(ring_->cover(), degrees_, cd, cols));
    return GradedModule(S, degrees_, A);
  }

  /// The same presentation read over a quotient of the same cover (used to view
  /// S-modules annihilated by I as R-modules).
  GradedModule overRing(const QRingPtr& ring) const {
    if (!ring->cover()->sameAs(*ring_->cover())) throw StructuralError("overRing: covers differ");
    return GradedModule(ring, degrees_, rel_.withRing(ring->cover()));
  }

  std::string fingerprint() const {
    std::ostringstream os;
    os << ring_->toString() << "|";
    for (int d : degrees_) os << d << ",";
    os << "|";
    for (std::size_t j = 0; j < rel_.cols(); ++j) {
      os << rel_.colDegrees()[j] << ":";
      for (auto& t : rel_.column(j)) {
        os << t.coef << "*" << t.comp << "[";
        for (int e : t.m.exponents()) os << e << ".";
        os << "]";
      }
      os << ";";
    }
    return os.str();
  }

  std::string toString() const {
    std::ostringstream os;
    os << "coker over " << ring_->toString() << ", generator degrees (";
    for (std::size_t i = 0; i < degrees_.size(); ++i) os << (i ? "," : "") << degrees_[i];
    os << ")";
    if (rel_.cols()) os << ", relations\n" << rel_.toString();
    return os.str();
  }

private:
  struct Cache {
    std::mutex mu;
    std::shared_ptr<const TrackedGroebner> gb;
  };

  QRingPtr ring_;
  std::vector<int> degrees_;
  PolyMatrix rel_;
  std::shared_ptr<Cache> cache_;
};

inline void requireSameRing(const GradedModule& a, const GradedModule& b) {
  if (!a.ring() || !b.ring() || !a.ring()->sameAs(*b.ring())) throw StructuralError("modules over different rings");
}

/// Homogeneous map of the given degree; column j is the image of source generator j.
struct ModuleMap {
  GradedModule source;
  GradedModule target;
  PolyMatrix matrix;
  int degree = 0;

  ModuleMap() = default;
  ModuleMap(GradedModule s, GradedModule t, const std::vector<Vec>& images, int deg = 0)
      : source(std::move(s)), target(std::move(t)), degree(deg) {
    requireSameRing(source, target);
    if (images.size() != source.rank()) throw StructuralError("map needs one image per source generator");
    std::vector<int> cd = source.degrees();
    for (auto& d : cd) d += deg;
    std::vector<Vec> cols;
    for (auto& v : images) cols.push_back(target.ring()->reduce(v));
    matrix = PolyMatrix(target.ring()->cover(), target.degrees(), cd, cols);
    if (!matrix.isHomogeneous()) throw StructuralError("module map is not homogeneous of the declared degree");
  }

  Vec apply(const Vec& v) const { return target.ring()->reduce(matrix.apply(v)); }

  bool isWellDefined() const {
    const auto& A = source.relations();
    for (std::size_t k = 0; k < A.cols(); ++k)
      if (!target.isZeroElement(apply(A.column(k)))) return false;
    return true;
  }
};

inline ModuleMap identityMap(const GradedModule& M) {
  std::vector<Vec> im;
  for (std::size_t i = 0; i < M.rank(); ++i) im.push_back(vec::unit(M.ring()->nvars(), static_cast<std::uint32_t>(i)));
  return ModuleMap(M, M, im);
}
inline ModuleMap zeroMap(const GradedModule& M, const GradedModule& N, int degree = 0) {
  return ModuleMap(M, N, std::vector<Vec>(M.rank()), degree);
}
/// g o f
inline ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  std::vector<Vec> im;
  for (std::size_t j = 0; j < f.source.rank(); ++j) im.push_back(g.apply(f.matrix.column(j)));
  return ModuleMap(f.source, g.target, im, f.degree + g.degree);
}

/// (span(gens) + span(rels)) / span(rels) inside a free module over R, with a
/// minimal presentation and the data to express ambient elements over the new
/// generators.
struct Subquotient {
  GradedModule module;
  std::vector<Vec> generators;  // ambient vector of each module generator
  std::vector<std::size_t> keptInputs;
  std::shared_ptr<const TrackedGroebner> lifter;

  /// Coefficients over the module generators of an ambient element in the span.
  Vec lift(const Vec& v) const {
    auto [r, a] = lifter->divide(v);
    if (!r.empty()) throw StructuralError("element is not in the submodule");
    return lifter->toKept(a);
  }
  /// Expression of candidate generator i over the module generators.
  Vec express(std::size_t i) const {
    if (lifter->kept(i)) {
      auto pos = lifter->keptPosition();
      return vec::unit(module.ring()->nvars(), static_cast<std::uint32_t>(pos[lifter->trackedIndex(i)]));
    }
    return lifter->toKept(lifter->expression(i));
  }
};

namespace detail {

inline std::vector<GbInput> backgroundInputs(const std::vector<Vec>& rels, const std::vector<int>& degrees) {
  std::vector<GbInput> in;
  for (auto& r : rels)
    if (!r.empty()) in.push_back({r, *vec::degreeOf(r, degrees), InputRole::Background});
  return in;
}

}  // namespace detail

/// gens[i] has degree genDegrees[i] (needed when gens[i] is zero). When
/// preferred is nonempty, those relation candidates (over the candidate index
/// space) are tried before the computed syzygies.
inline Subquotient subquotient(const QRingPtr& ring, const std::vector<int>& ambientDegrees, const std::vector<Vec>& gens,
                               const std::vector<int>& genDegrees, const std::vector<Vec>& rels,
                               const std::vector<Vec>& preferred = {}) {
  const auto& S = ring->cover();
  const auto& F = ring->field();
  std::vector<GbInput> in = detail::backgroundInputs(rels, ambientDegrees);
  std::size_t nbg = in.size();
  for (std::size_t i = 0; i < gens.size(); ++i) in.push_back({ring->reduce(gens[i]), genDegrees[i], InputRole::Optional});
  auto tg = std::make_shared<const TrackedGroebner>(S, ModuleOrder::termOverPosition(S->order(), ambientDegrees),
                                                    ring->idealTimesFree(ambientDegrees.size()), std::move(in));
  Subquotient out;
  std::vector<int> degs;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (tg->kept(nbg + i)) {
      out.keptInputs.push_back(i);
      out.generators.push_back(ring->reduce(gens[i]));
      degs.push_back(genDegrees[i]);
    }

  // relation candidates over the kept generators
  std::vector<GbInput> rin;
  auto pos = tg->keptPosition();
  for (auto& p : preferred) {
    Vec acc;
    for (auto& t : p) {
      std::size_t input = nbg + t.comp;
      Vec e = tg->kept(input) ? vec::unit(S->nvars(), static_cast<std::uint32_t>(pos[tg->trackedIndex(input)]))
                              : tg->toKept(tg->expression(input));
      acc = vec::axpy(acc, t.coef, t.m, e, S->order(), F);
    }
    acc = ring->reduce(acc);
    if (!acc.empty()) rin.push_back({acc, *vec::degreeOf(acc, degs), InputRole::Optional});
  }
  for (std::size_t s = 0; s < tg->syzygies().size(); ++s) {
    Vec z = ring->reduce(tg->toKept(tg->syzygies()[s]));
    if (!z.empty()) rin.push_back({z, tg->syzygyDegrees()[s], InputRole::Optional});
  }
  auto rg = std::make_shared<const TrackedGroebner>(S, ModuleOrder::termOverPosition(S->order(), degs),
                                                    ring->idealTimesFree(degs.size()), rin);
  std::vector<int> rd;
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < rin.size(); ++i)
    if (rg->kept(i)) {
      rd.push_back(rin[i].degree);
      cols.push_back(rin[i].v);
    }
  out.module = GradedModule(ring, degs, PolyMatrix(S, degs, rd, cols));
  out.module.seedRelationBasis(rg);
  out.lifter = tg;
  return out;
}

/// Minimal presentation of M; generators are vectors over M's generators.
inline Subquotient minimalPresentation(const GradedModule& M) {
  std::vector<Vec> units;
  for (std::size_t i = 0; i < M.rank(); ++i) units.push_back(vec::unit(M.ring()->nvars(), static_cast<std::uint32_t>(i)));
  auto cols = M.relations().columns();
  return subquotient(M.ring(), M.degrees(), units, M.degrees(), cols, cols);
}

inline GradedModule minimalize(const GradedModule& M) { return minimalPresentation(M).module; }

/// The isomorphism M -> minimalize(M) given by a minimal presentation.
inline ModuleMap toMinimal(const GradedModule& M, const Subquotient& mp) {
  std::vector<Vec> im;
  for (std::size_t i = 0; i < M.rank(); ++i) im.push_back(mp.express(i));
  return ModuleMap(M, mp.module, im);
}

inline GradedModule directSum(const GradedModule& M, const GradedModule& N) {
  requireSameRing(M, N);
  std::vector<int> d = M.degrees();
  d.insert(d.end(), N.degrees().begin(), N.degrees().end());
  return GradedModule(M.ring(), d, directSum(M.relations(), N.relations()));
}

inline GradedModule directSum(const std::vector<GradedModule>& ms, const QRingPtr& ring) {
  GradedModule out = GradedModule::zero(ring);
  for (auto& m : ms) out = directSum(out, m);
  return out;
}

namespace detail {

/// Generators of { x in F0(M) : f(x) = 0 in N } (without M's relations).
inline std::pair<std::vector<Vec>, std::vector<int>> kernelVectors(const ModuleMap& f) {
  const auto& ring = f.target.ring();
  const auto& S = ring->cover();
  auto in = backgroundInputs(f.target.relations().columns(), f.target.degrees());
  for (std::size_t j = 0; j < f.source.rank(); ++j)
    in.push_back({f.matrix.column(j), f.source.degrees()[j] + f.degree, InputRole::Required});
  TrackedGroebner tg(S, ModuleOrder::termOverPosition(S->order(), f.target.degrees()), ring->idealTimesFree(f.target.rank()),
                     std::move(in));
  std::vector<Vec> out;
  std::vector<int> deg;
  for (std::size_t s = 0; s < tg.syzygies().size(); ++s) {
    Vec z = ring->reduce(tg.syzygies()[s]);
    if (z.empty()) continue;
    out.push_back(std::move(z));
    deg.push_back(tg.syzygyDegrees()[s] - f.degree);
  }
  return {out, deg};
}

}  // namespace detail

/// Kernel of f as a subquotient of the source; generators give the inclusion.
inline Subquotient kernelOf(const ModuleMap& f) {
  auto [vs, ds] = detail::kernelVectors(f);
  return subquotient(f.source.ring(), f.source.degrees(), vs, ds, f.source.relations().columns());
}

inline GradedModule kernelModule(const ModuleMap& f) { return kernelOf(f).module; }

inline ModuleMap kernelInclusion(const ModuleMap& f, const Subquotient& k) {
  return ModuleMap(k.module, f.source, k.generators);
}

inline Subquotient imageOf(const ModuleMap& f) {
  std::vector<int> d = f.source.degrees();
  for (auto& x : d) x += f.degree;
  return subquotient(f.target.ring(), f.target.degrees(), f.matrix.columns(), d, f.target.relations().columns());
}

/// Cokernel of f; the returned Subquotient presents coker over the target's
/// generators (express(i) maps target generator i into it).
inline Subquotient cokernelOf(const ModuleMap& f) {
  std::vector<Vec> rels = f.target.relations().columns();
  for (auto& c : f.matrix.columns()) rels.push_back(c);
  std::vector<Vec> units;
  for (std::size_t i = 0; i < f.target.rank(); ++i)
    units.push_back(vec::unit(f.target.ring()->nvars(), static_cast<std::uint32_t>(i)));
  return subquotient(f.target.ring(), f.target.degrees(), units, f.target.degrees(), rels, rels);
}

inline GradedModule cokernelModule(const ModuleMap& f) { return cokernelOf(f).module; }

struct MapDiagnostics {
  bool isZero = false;
  bool isInjective = false;
  bool isSurjective = false;
  bool isIsomorphism = false;
};

inline MapDiagnostics mapDiagnostics(const ModuleMap& f) {
  if (!f.isWellDefined()) throw StructuralError("mapDiagnostics: map is not well defined");
  MapDiagnostics d;
  d.isZero = true;
  for (auto& c : f.matrix.columns())
    if (!f.target.isZeroElement(c)) {
      d.isZero = false;
      break;
    }
  auto [vs, ds] = detail::kernelVectors(f);
  d.isInjective = true;
  for (auto& v : vs)
    if (!f.source.isZeroElement(v)) {
      d.isInjective = false;
      break;
    }
  const auto& ring = f.target.ring();
  const auto& S = ring->cover();
  auto in = detail::backgroundInputs(f.target.relations().columns(), f.target.degrees());
  auto extra = detail::backgroundInputs(f.matrix.columns(), f.target.degrees());
  in.insert(in.end(), extra.begin(), extra.end());
  TrackedGroebner tg(S, ModuleOrder::termOverPosition(S->order(), f.target.degrees()), ring->idealTimesFree(f.target.rank()),
                     std::move(in));
  d.isSurjective = true;
  for (std::size_t i = 0; i < f.target.rank(); ++i)
    if (!tg.normalForm(vec::unit(S->nvars(), static_cast<std::uint32_t>(i))).empty()) {
      d.isSurjective = false;
      break;
    }
  d.isIsomorphism = d.isInjective && d.isSurjective;
  return d;
}

/// Hom(M, N) with the data to turn its elements into maps.
struct HomModule {
  GradedModule M, N;
  Subquotient sq;  // inside the free module on pairs (j,i), index j*rank(N)+i

  const GradedModule& module() const { return sq.module; }

  /// The map M -> N (of degree deg h) represented by h, given over Hom's generators.
  ModuleMap eval(const Vec& h, int degree) const {
    const auto& S = M.ring()->cover();
    const auto& F = M.ring()->field();
    Vec flat;
    for (auto& t : h) flat = vec::axpy(flat, t.coef, t.m, sq.generators[t.comp], S->order(), F);
    std::vector<Vec> cols(M.rank());
    for (auto& t : flat) cols[t.comp / N.rank()].push_back({t.m, static_cast<std::uint32_t>(t.comp % N.rank()), t.coef});
    for (auto& c : cols) vec::sortCombine(c, S->order(), F);
    return ModuleMap(M, N, cols, degree);
  }
  ModuleMap evalGenerator(std::size_t g) const {
    return eval(vec::unit(M.ring()->nvars(), static_cast<std::uint32_t>(g)), sq.module.degrees()[g]);
  }
  /// Element of Hom (over its generators) representing a given map.
  Vec represent(const ModuleMap& f) const {
    Vec flat;
    for (std::size_t j = 0; j < M.rank(); ++j)
      for (auto& t : f.matrix.column(j))
        flat.push_back({t.m, static_cast<std::uint32_t>(j * N.rank() + t.comp), t.coef});
    vec::sortCombine(flat, M.ring()->cover()->order(), M.ring()->field());
    return sq.lift(flat);
  }
};

namespace detail {

/// Relations of Hom(F, N) = N^{rank F} on the pair basis (j,i) -> j*rank(N)+i.
inline std::vector<Vec> slotRelations(std::size_t slots, const GradedModule& N) {
  std::vector<Vec> out;
  for (std::size_t j = 0; j < slots; ++j)
    for (auto& c : N.relations().columns()) {
      Vec v = c;
      for (auto& t : v) t.comp += static_cast<std::uint32_t>(j * N.rank());
      out.push_back(std::move(v));
    }
  return out;
}

}  // namespace detail

inline HomModule homModuleWithMaps(const GradedModule& M, const GradedModule& N) {
  requireSameRing(M, N);
  const auto& ring = M.ring();
  const auto& S = ring->cover();
  const std::size_t m0 = M.rank(), n0 = N.rank(), m1 = M.relations().cols();
  std::vector<int> srcDeg(m0 * n0), tgtDeg(m1 * n0);
  for (std::size_t j = 0; j < m0; ++j)
    for (std::size_t i = 0; i < n0; ++i) srcDeg[j * n0 + i] = N.degrees()[i] - M.degrees()[j];
  for (std::size_t k = 0; k < m1; ++k)
    for (std::size_t i = 0; i < n0; ++i) tgtDeg[k * n0 + i] = N.degrees()[i] - M.relations().colDegrees()[k];

  // psi -> psi o A, on generators (j,i) -> sum_k A_jk e_(k,i)
  std::vector<Vec> phi(m0 * n0);
  const auto& A = M.relations();
  for (std::size_t k = 0; k < m1; ++k)
    for (auto& t : A.column(k))
      for (std::size_t i = 0; i < n0; ++i)
        phi[t.comp * n0 + i].push_back({t.m, static_cast<std::uint32_t>(k * n0 + i), t.coef});
  for (auto& c : phi) vec::sortCombine(c, S->order(), ring->field());

  GradedModule src(ring, srcDeg, PolyMatrix(S, srcDeg, {}));
  auto srcRels = detail::slotRelations(m0, N);
  std::vector<Vec> gens;
  std::vector<int> gdeg;
  if (m1 == 0) {
    for (std::size_t g = 0; g < m0 * n0; ++g) {
      gens.push_back(vec::unit(S->nvars(), static_cast<std::uint32_t>(g)));
      gdeg.push_back(srcDeg[g]);
    }
  } else {
    auto tgtRels = detail::slotRelations(m1, N);
    std::vector<int> rd;
    for (auto& r : tgtRels) rd.push_back(*vec::degreeOf(r, tgtDeg));
    GradedModule tgt(ring, tgtDeg, PolyMatrix(S, tgtDeg, rd, tgtRels));
    ModuleMap f(src, tgt, phi);
    auto kv = detail::kernelVectors(f);
    gens = std::move(kv.first);
    gdeg = std::move(kv.second);
  }
  HomModule h{M, N, subquotient(ring, srcDeg, gens, gdeg, srcRels)};
  return h;
}

inline GradedModule homModule(const GradedModule& M, const GradedModule& N) { return homModuleWithMaps(M, N).module(); }

/// M (x) N presented on pairs (j,i) -> j*rank(N)+i, not minimalized.
inline GradedModule rawTensor(const GradedModule& M, const GradedModule& N) {
  requireSameRing(M, N);
  const auto& S = M.ring()->cover();
  PolyMatrix IM = PolyMatrix::identity(S, M.degrees()), IN = PolyMatrix::identity(S, N.degrees());
  PolyMatrix rel = concatColumns(kronecker(M.relations(), IN), kronecker(IM, N.relations()));
  return GradedModule::fromMatrix(M.ring(), rel);
}

inline GradedModule tensorModule(const GradedModule& M, const GradedModule& N) { return minimalize(rawTensor(M, N)); }

/// Lifted syzygies over R = S/I: generators of { a : sum a_t gens_t = 0 in R^m }.
inline std::vector<Vec> quotientSyzygies(const QRingPtr& ring, const std::vector<int>& ambientDegrees,
                                         const std::vector<Vec>& gens, const std::vector<int>& genDegrees) {
  GradedModule F = GradedModule::free(ring, ambientDegrees);
  GradedModule src = GradedModule::free(ring, genDegrees);
  ModuleMap f(src, F, gens);
  auto [vs, ds] = detail::kernelVectors(f);
  // minimal generators modulo I
  auto sq = subquotient(ring, genDegrees, vs, ds, {});
  return sq.generators;
}

}  // namespace homolab
