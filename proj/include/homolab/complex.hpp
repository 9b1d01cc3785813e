#pragma once

#include <vector>

#include "module.hpp"

namespace homolab {

/// Bounded complex X_lo .. X_hi with generator-level differentials
/// d_i: X_i -> X_{i-1}. Terms without relations are free modules.
class BoundedComplex {
public:
  BoundedComplex() = default;
  /// diffs[k] is d_{lo+k+1}: X_{lo+k+1} -> X_{lo+k}; one fewer than terms.
  BoundedComplex(QRingPtr ring, int lo, std::vector<GradedModule> terms, std::vector<PolyMatrix> diffs)
      : ring_(std::move(ring)), lo_(lo), terms_(std::move(terms)), diffs_(std::move(diffs)) {
    if (terms_.empty()) {
      diffs_.clear();
      return;
    }
    if (diffs_.size() + 1 != terms_.size()) throw StructuralError("complex needs one differential between adjacent terms");
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
      const auto& d = diffs_[k];
      if (d.rows() != terms_[k].rank() || d.cols() != terms_[k + 1].rank())
        throw StructuralError("differential shape does not match its terms");
      if (d.rowDegrees() != terms_[k].degrees() || d.colDegrees() != terms_[k + 1].degrees() || !d.isHomogeneous())
        throw StructuralError("differential is not homogeneous of degree 0");
    }
  }

  const QRingPtr& ring() const { return ring_; }
  int low() const { return lo_; }
  int high() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  bool empty() const { return terms_.empty(); }

  GradedModule term(int i) const {
    if (i < lo_ || i > high()) return GradedModule::zero(ring_);
    return terms_[i - lo_];
  }
  PolyMatrix differential(int i) const {
    if (i <= lo_ || i > high())
      return PolyMatrix(ring_->cover(), term(i - 1).degrees(), term(i).degrees());
    return diffs_[i - lo_ - 1];
  }
  ModuleMap differentialMap(int i) const {
    return ModuleMap(term(i), term(i - 1), differential(i).columns());
  }

  bool isFree() const {
    for (auto& t : terms_)
      if (t.hasRelations()) return false;
    return true;
  }

  /// d_{i-1} o d_i = 0 for all i (modulo the relations of the terms).
  bool isComplex() const {
    for (int i = lo_ + 2; i <= high(); ++i) {
      PolyMatrix dd = differential(i - 1) * differential(i);
      GradedModule T = term(i - 2);
      for (auto& c : dd.columns())
        if (!T.isZeroElement(ring_->reduce(c))) return false;
    }
    return true;
  }

private:
  QRingPtr ring_;
  int lo_ = 0;
  std::vector<GradedModule> terms_;
  std::vector<PolyMatrix> diffs_;
};

/// M concentrated in homological degree n.
inline BoundedComplex moduleComplex(const GradedModule& M, int n = 0) {
  return BoundedComplex(M.ring(), n, {M}, {});
}

/// Levelwise maps f_i: X_i -> Y_i.
struct ComplexMap {
  BoundedComplex source, target;
  std::vector<ModuleMap> maps;  // index i - lo over the union window
  int lo = 0;

  /// d^Y o f_i = f_{i-1} o d^X for every i.
  bool isChainMap() const {
    for (std::size_t k = 0; k < maps.size(); ++k) {
      int i = lo + static_cast<int>(k);
      if (k == 0) continue;
      const ModuleMap& fi = maps[k];
      const ModuleMap& fp = maps[k - 1];
      ModuleMap dy = target.differentialMap(i), dx = source.differentialMap(i);
      for (std::size_t g = 0; g < fi.source.rank(); ++g) {
        Vec a = dy.apply(fi.matrix.column(g));
        Vec b = fp.apply(dx.matrix.column(g));
        auto& F = source.ring()->field();
        Vec diff = vec::axpy(a, F.neg(1), Monomial(source.ring()->nvars()), b, source.ring()->cover()->order(), F);
        if (!target.term(i - 1).isZeroElement(diff)) return false;
      }
    }
    return true;
  }
};

/// (Sigma^n X)_i = X_{i-n}, differentials multiplied by (-1)^n.
inline BoundedComplex shiftComplex(const BoundedComplex& X, int n) {
  if (X.empty()) return X;
  std::vector<GradedModule> terms;
  std::vector<PolyMatrix> diffs;
  const std::uint32_t sign = (n % 2 == 0) ? 1u : X.ring()->field().neg(1);
  for (int i = X.low(); i <= X.high(); ++i) {
    terms.push_back(X.term(i));
    if (i > X.low()) diffs.push_back(X.differential(i).scaled(sign));
  }
  return BoundedComplex(X.ring(), X.low() + n, terms, diffs);
}

namespace detail {

struct Block {
  int j;            // index in the first complex
  std::size_t off;  // offset of the block
  std::size_t a, b; // ranks of the two factors
};

inline const Block* findBlock(const std::vector<Block>& bs, int j) {
  for (auto& b : bs)
    if (b.j == j) return &b;
  return nullptr;
}

}  // namespace detail

/// Hom(X, Y) for X with free terms: Hom(X,Y)_p = sum_j Hom(X_j, Y_{p+j}),
/// d(psi) = d^Y o psi - (-1)^p psi o d^X.
inline BoundedComplex homComplex(const BoundedComplex& X, const BoundedComplex& Y) {
  if (!X.ring()->sameAs(*Y.ring())) throw StructuralError("homComplex: complexes over different rings");
  if (!X.isFree())
    throw UnsupportedError("homComplex: the first complex must have free terms (resolve it first)");
  const auto& ring = X.ring();
  const auto& S = ring->cover();
  const auto& F = ring->field();
  if (X.empty() || Y.empty()) return BoundedComplex(ring, 0, {}, {});
  int lo = Y.low() - X.high(), hi = Y.high() - X.low();

  std::vector<std::vector<detail::Block>> blocks;
  std::vector<GradedModule> terms;
  for (int p = lo; p <= hi; ++p) {
    std::vector<detail::Block> bs;
    std::vector<int> deg;
    std::vector<Vec> rels;
    std::size_t off = 0;
    for (int j = X.low(); j <= X.high(); ++j) {
      int q = p + j;
      if (q < Y.low() || q > Y.high()) continue;
      GradedModule Xj = X.term(j), Yq = Y.term(q);
      bs.push_back({j, off, Xj.rank(), Yq.rank()});
      for (std::size_t l = 0; l < Xj.rank(); ++l)
        for (std::size_t i = 0; i < Yq.rank(); ++i) deg.push_back(Yq.degrees()[i] - Xj.degrees()[l]);
      for (auto& r : detail::slotRelations(Xj.rank(), Yq)) {
        for (auto& t : r) t.comp += static_cast<std::uint32_t>(off);
        rels.push_back(std::move(r));
      }
      off += Xj.rank() * Yq.rank();
    }
    std::vector<int> rd;
    for (auto& r : rels) rd.push_back(*vec::degreeOf(r, deg));
    terms.emplace_back(ring, deg, PolyMatrix(S, deg, rd, rels));
    blocks.push_back(std::move(bs));
  }

  std::vector<PolyMatrix> diffs;
  for (int p = lo + 1; p <= hi; ++p) {
    const auto& src = blocks[p - lo];
    const auto& tgt = blocks[p - 1 - lo];
    const GradedModule& T = terms[p - lo];
    std::vector<Vec> cols(T.rank());
    const std::uint32_t sgn = (p % 2 == 0) ? F.neg(1) : 1u;  // -(-1)^p
    for (auto& b : src) {
      int q = p + b.j;
      // d^Y o psi : Hom(X_j, Y_q) -> Hom(X_j, Y_{q-1})
      if (const auto* tb = detail::findBlock(tgt, b.j)) {
        PolyMatrix DY = Y.differential(q);
        for (std::size_t l = 0; l < b.a; ++l)
          for (std::size_t i = 0; i < b.b; ++i)
            for (auto& t : DY.column(i))
              cols[b.off + l * b.b + i].push_back({t.m, static_cast<std::uint32_t>(tb->off + l * tb->b + t.comp), t.coef});
      }
      // psi o d^X : Hom(X_j, Y_q) -> Hom(X_{j+1}, Y_q)
      if (const auto* tb = detail::findBlock(tgt, b.j + 1)) {
        PolyMatrix DX = X.differential(b.j + 1);
        for (std::size_t lp = 0; lp < DX.cols(); ++lp)
          for (auto& t : DX.column(lp))
            for (std::size_t i = 0; i < b.b; ++i)
              cols[b.off + t.comp * b.b + i].push_back(
                  {t.m, static_cast<std::uint32_t>(tb->off + lp * tb->b + i), F.mul(t.coef, sgn)});
      }
    }
    for (auto& c : cols) vec::sortCombine(c, S->order(), F);
    diffs.emplace_back(S, terms[p - 1 - lo].degrees(), T.degrees(), cols);
  }
  return BoundedComplex(ring, lo, terms, diffs);
}

/// (X (x) Y)_p = sum_j X_j (x) Y_{p-j}, d(x (x) y) = dx (x) y + (-1)^j x (x) dy.
inline BoundedComplex tensorComplex(const BoundedComplex& X, const BoundedComplex& Y) {
  if (!X.ring()->sameAs(*Y.ring())) throw StructuralError("tensorComplex: complexes over different rings");
  const auto& ring = X.ring();
  const auto& S = ring->cover();
  const auto& F = ring->field();
  if (X.empty() || Y.empty()) return BoundedComplex(ring, 0, {}, {});
  int lo = X.low() + Y.low(), hi = X.high() + Y.high();

  std::vector<std::vector<detail::Block>> blocks;
  std::vector<GradedModule> terms;
  for (int p = lo; p <= hi; ++p) {
    std::vector<detail::Block> bs;
    std::vector<int> deg;
    std::vector<Vec> rels;
    std::size_t off = 0;
    for (int j = X.low(); j <= X.high(); ++j) {
      int q = p - j;
      if (q < Y.low() || q > Y.high()) continue;
      GradedModule Xj = X.term(j), Yq = Y.term(q);
      bs.push_back({j, off, Xj.rank(), Yq.rank()});
      GradedModule T = rawTensor(Xj, Yq);
      deg.insert(deg.end(), T.degrees().begin(), T.degrees().end());
      for (auto r : T.relations().columns()) {
        for (auto& t : r) t.comp += static_cast<std::uint32_t>(off);
        rels.push_back(std::move(r));
      }
      off += Xj.rank() * Yq.rank();
    }
    std::vector<int> rd;
    for (auto& r : rels) rd.push_back(*vec::degreeOf(r, deg));
    terms.emplace_back(ring, deg, PolyMatrix(S, deg, rd, rels));
    blocks.push_back(std::move(bs));
  }

  std::vector<PolyMatrix> diffs;
  for (int p = lo + 1; p <= hi; ++p) {
    const auto& src = blocks[p - lo];
    const auto& tgt = blocks[p - 1 - lo];
    std::vector<Vec> cols(terms[p - lo].rank());
    for (auto& b : src) {
      int q = p - b.j;
      if (const auto* tb = detail::findBlock(tgt, b.j - 1)) {
        PolyMatrix DX = X.differential(b.j);
        for (std::size_t l = 0; l < b.a; ++l)
          for (auto& t : DX.column(l))
            for (std::size_t i = 0; i < b.b; ++i)
              cols[b.off + l * b.b + i].push_back({t.m, static_cast<std::uint32_t>(tb->off + t.comp * tb->b + i), t.coef});
      }
      if (const auto* tb = detail::findBlock(tgt, b.j)) {
        PolyMatrix DY = Y.differential(q);
        const std::uint32_t sgn = (b.j % 2 == 0) ? 1u : F.neg(1);
        for (std::size_t l = 0; l < b.a; ++l)
          for (std::size_t i = 0; i < b.b; ++i)
            for (auto& t : DY.column(i))
              cols[b.off + l * b.b + i].push_back(
                  {t.m, static_cast<std::uint32_t>(tb->off + l * tb->b + t.comp), F.mul(t.coef, sgn)});
      }
    }
    for (auto& c : cols) vec::sortCombine(c, S->order(), F);
    diffs.emplace_back(S, terms[p - 1 - lo].degrees(), terms[p - lo].degrees(), cols);
  }
  return BoundedComplex(ring, lo, terms, diffs);
}

/// Koszul complex of homogeneous elements of positive degree.
inline BoundedComplex koszulComplex(const QRingPtr& ring, const std::vector<Polynomial>& seq) {
  const auto& S = ring->cover();
  const auto& F = ring->field();
  const int n = static_cast<int>(seq.size());
  for (auto& f : seq)
    if (!f.isHomogeneous() || f.degree() <= 0) throw StructuralError("koszulComplex: elements must be homogeneous of positive degree");
  // subsets of size p as bitmasks, in increasing order
  std::vector<std::vector<unsigned>> subsets(n + 1);
  for (unsigned m = 0; m < (1u << n); ++m) subsets[__builtin_popcount(m)].push_back(m);
  auto degreeOf = [&](unsigned m) {
    int d = 0;
    for (int k = 0; k < n; ++k)
      if (m >> k & 1) d += seq[k].degree();
    return d;
  };
  std::vector<GradedModule> terms;
  for (int p = 0; p <= n; ++p) {
    std::vector<int> deg;
    for (unsigned m : subsets[p]) deg.push_back(degreeOf(m));
    terms.push_back(GradedModule::free(ring, deg));
  }
  std::vector<PolyMatrix> diffs;
  for (int p = 1; p <= n; ++p) {
    std::vector<Vec> cols;
    for (unsigned m : subsets[p]) {
      Vec c;
      int pos = 0;
      for (int k = 0; k < n; ++k) {
        if (!(m >> k & 1)) continue;
        unsigned rest = m & ~(1u << k);
        auto it = std::find(subsets[p - 1].begin(), subsets[p - 1].end(), rest);
        auto row = static_cast<std::uint32_t>(it - subsets[p - 1].begin());
        std::uint32_t sgn = pos % 2 == 0 ? 1u : F.neg(1);
        for (auto& [mono, coef] : seq[k].terms()) c.push_back({mono, row, F.mul(coef, sgn)});
        ++pos;
      }
      vec::sortCombine(c, S->order(), F);
      cols.push_back(ring->reduce(c));
    }
    diffs.emplace_back(S, terms[p - 1].degrees(), terms[p].degrees(), cols);
  }
  return BoundedComplex(ring, 0, terms, diffs);
}

/// H_i(X) = ker d_i / im d_{i+1}; generators are cycles in X_i.
inline Subquotient homologyOf(const BoundedComplex& X, int i) {
  GradedModule Xi = X.term(i);
  auto [vs, ds] = detail::kernelVectors(X.differentialMap(i));
  std::vector<Vec> rels = Xi.relations().columns();
  PolyMatrix next = X.differential(i + 1);
  for (auto& c : next.columns()) rels.push_back(c);
  return subquotient(X.ring(), Xi.degrees(), vs, ds, rels);
}

inline GradedModule homologyAt(const BoundedComplex& X, int i) { return homologyOf(X, i).module; }

}  // namespace homolab
