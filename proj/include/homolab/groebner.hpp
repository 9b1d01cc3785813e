#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "budget.hpp"
#include "matrix.hpp"

namespace homolab {

/// Order on module monomials m*e_i.
struct ModuleOrder {
  enum class Rule { PositionOverTerm, TermOverPosition, Schreyer };

  MonomialOrder base;
  Rule rule = Rule::TermOverPosition;
  std::vector<int> degrees;  // component degrees, used by term-over-position
  // Schreyer data: e_i is compared as schreyerMonomials[i] * e_{schreyerComps[i]} in parent.
  std::vector<Monomial> schreyerMonomials;
  std::vector<std::uint32_t> schreyerComps;
  std::shared_ptr<const ModuleOrder> parent;

  static ModuleOrder termOverPosition(const MonomialOrder& base, std::vector<int> degrees) {
    return ModuleOrder{base, Rule::TermOverPosition, std::move(degrees), {}, {}, nullptr};
  }
  static ModuleOrder positionOverTerm(const MonomialOrder& base, std::vector<int> degrees) {
    return ModuleOrder{base, Rule::PositionOverTerm, std::move(degrees), {}, {}, nullptr};
  }
  /// Order induced by the leading terms of the given elements of the parent module.
  static ModuleOrder schreyer(std::shared_ptr<const ModuleOrder> parent, const std::vector<Vec>& leads,
                              std::vector<int> degrees) {
    ModuleOrder o{parent->base, Rule::Schreyer, std::move(degrees), {}, {}, parent};
    for (auto& v : leads) {
      if (v.empty()) throw StructuralError("Schreyer order needs nonzero elements");
      const Term* best = &v.front();
      for (auto& t : v)
        if (parent->cmp(t.m, t.comp, best->m, best->comp) > 0) best = &t;
      o.schreyerMonomials.push_back(best->m);
      o.schreyerComps.push_back(best->comp);
    }
    return o;
  }

  int cmp(const Monomial& a, std::uint32_t ca, const Monomial& b, std::uint32_t cb) const {
    switch (rule) {
      case Rule::TermOverPosition: {
        int da = a.degree() + degrees[ca], db = b.degree() + degrees[cb];
        if (da != db) return da < db ? -1 : 1;
        int c = base.cmp(a, b);
        if (c) return c;
        return ca == cb ? 0 : (ca < cb ? 1 : -1);
      }
      case Rule::PositionOverTerm:
        if (ca != cb) return ca < cb ? 1 : -1;
        return base.cmp(a, b);
      case Rule::Schreyer: {
        int c = parent->cmp(a * schreyerMonomials[ca], schreyerComps[ca], b * schreyerMonomials[cb], schreyerComps[cb]);
        if (c) return c;
        return ca == cb ? 0 : (ca < cb ? 1 : -1);
      }
    }
    return 0;
  }
  int cmp(const Term& a, const Term& b) const { return cmp(a.m, a.comp, b.m, b.comp); }
};

enum class InputRole { Background, Required, Optional };

struct GbInput {
  Vec v;  // storage order
  int degree = 0;
  InputRole role = InputRole::Background;
};

namespace detail {

struct GbElement {
  Vec v;    // module order, monic
  Vec rep;  // storage order, over the tracked index space
  int degree = 0;
  bool preset = false;
};

/// Reduction machinery shared by plain and tracked bases.
class Reducer {
public:
  Reducer(RingPtr ring, ModuleOrder ord) : ring_(std::move(ring)), ord_(std::move(ord)) {}

  const RingPtr& ring() const { return ring_; }
  const ModuleOrder& order() const { return ord_; }
  const std::vector<GbElement>& elements() const { return elems_; }

  Vec toModuleOrder(Vec v) const {
    std::sort(v.begin(), v.end(), [&](const Term& a, const Term& b) { return ord_.cmp(a, b) > 0; });
    return v;
  }
  Vec toStorageOrder(Vec v) const {
    std::sort(v.begin(), v.end(),
              [&](const Term& a, const Term& b) { return vec::storageCmp(a, b, ring_->order()) > 0; });
    return v;
  }

  // a + c*mono*b, both in module order; b is read from offset bStart.
  Vec axpy(const Vec& a, std::size_t aStart, std::uint32_t c, const Monomial& mono, const Vec& b,
           std::size_t bStart) const {
    const auto& F = ring_->field();
    Vec r;
    r.reserve(a.size() - aStart + b.size() - bStart);
    std::size_t i = aStart, j = bStart;
    while (i < a.size() || j < b.size()) {
      Term bt;
      if (j < b.size()) {
        bt = b[j];
        bt.m = bt.m * mono;
      }
      int s = i == a.size() ? -1 : j == b.size() ? 1 : ord_.cmp(a[i], bt);
      if (s > 0) {
        r.push_back(a[i++]);
      } else if (s < 0) {
        bt.coef = F.mul(bt.coef, c);
        r.push_back(bt);
        ++j;
      } else {
        auto v = F.add(a[i].coef, F.mul(bt.coef, c));
        if (v) {
          bt.coef = v;
          r.push_back(bt);
        }
        ++i;
        ++j;
      }
    }
    return r;
  }

  int findReducer(const Term& t) const {
    if (t.comp >= byComp_.size()) return -1;
    for (int idx : byComp_[t.comp]) {
      const Term& lt = elems_[idx].v.front();
      if (lt.m.divides(t.m)) return idx;
    }
    return -1;
  }

  /// Reduces w (module order) starting at position start; updates rep when given.
  void reduce(Vec& w, std::size_t start, Vec* rep) const {
    const auto& F = ring_->field();
    std::size_t pos = start;
    while (pos < w.size()) {
      checkDeadline();
      int r = findReducer(w[pos]);
      if (r < 0) {
        ++pos;
        continue;
      }
      const GbElement& g = elems_[r];
      Monomial q = w[pos].m / g.v.front().m;
      std::uint32_t c = F.neg(w[pos].coef);
      Vec tail = axpy(w, pos + 1, c, q, g.v, 1);
      w.resize(pos);
      w.insert(w.end(), tail.begin(), tail.end());
      if (rep && !g.rep.empty()) *rep = vec::axpy(*rep, c, q, g.rep, ring_->order(), F);
    }
  }

  void makeMonic(Vec& v, Vec* rep) const {
    const auto& F = ring_->field();
    auto inv = F.inv(v.front().coef);
    if (inv == 1) return;
    v = vec::scale(std::move(v), inv, F);
    if (rep) *rep = vec::scale(std::move(*rep), inv, F);
  }

  int insert(GbElement e) {
    auto comp = e.v.front().comp;
    if (byComp_.size() <= comp) byComp_.resize(comp + 1);
    elems_.push_back(std::move(e));
    int idx = static_cast<int>(elems_.size()) - 1;
    byComp_[comp].push_back(idx);
    return idx;
  }

  GbElement& element(int i) { return elems_[i]; }

private:
  RingPtr ring_;
  ModuleOrder ord_;
  std::vector<GbElement> elems_;
  std::vector<std::vector<int>> byComp_;
};

}  // namespace detail

/// Buchberger run over S with representation tracking. Background inputs are
/// untracked; Required inputs are always tracked; Optional inputs are tracked
/// only when they are not already in the span of what came before them
/// (processed degree by degree: S-pairs, then background, then the rest in
/// input order), so the kept Optional inputs form a minimal generating set
/// modulo the background. Syzygies generate
///   { a over kept tracked inputs : sum a_t v_t lies in the background span }.
class TrackedGroebner {
public:
  TrackedGroebner(RingPtr ring, ModuleOrder ord, const std::vector<Vec>& preset, std::vector<GbInput> inputs,
                  bool criteria = true)
      : red_(ring, std::move(ord)), inputs_(std::move(inputs)), criteria_(criteria) {
    for (auto& p : preset) {
      if (p.empty()) continue;
      detail::GbElement e;
      e.v = red_.toModuleOrder(p);
      e.degree = *vec::degreeOf(p, red_.order().degrees);
      e.preset = true;
      red_.makeMonic(e.v, nullptr);
      red_.insert(std::move(e));
    }
    run();
  }

  const RingPtr& ring() const { return red_.ring(); }
  const ModuleOrder& order() const { return red_.order(); }

  std::size_t inputCount() const { return inputs_.size(); }
  /// Index in the tracked space, or -1 for background inputs.
  int trackedIndex(std::size_t input) const { return trackedIdx_[input]; }
  bool kept(std::size_t input) const { return kept_[input]; }
  std::vector<std::size_t> keptInputs() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < inputs_.size(); ++i)
      if (kept_[i]) out.push_back(i);
    return out;
  }
  /// For a non-kept Optional input: its expression over tracked inputs modulo background.
  const Vec& expression(std::size_t input) const { return expr_[input]; }

  /// Syzygies over the tracked index space (storage order) with their degrees.
  const std::vector<Vec>& syzygies() const { return syz_; }
  const std::vector<int>& syzygyDegrees() const { return syzDeg_; }
  std::vector<int> trackedDegrees() const {
    std::vector<int> d;
    for (std::size_t i = 0; i < inputs_.size(); ++i)
      if (trackedIdx_[i] >= 0) d.push_back(inputs_[i].degree);
    return d;
  }

  /// Map from tracked index to position among kept inputs (-1 if not kept).
  std::vector<int> keptPosition() const {
    std::vector<int> pos;
    int k = 0;
    for (std::size_t i = 0; i < inputs_.size(); ++i)
      if (trackedIdx_[i] >= 0) pos.push_back(kept_[i] ? k++ : -1);
    return pos;
  }

  /// Rewrites a tracked-space vector over kept inputs only.
  Vec toKept(const Vec& v) const {
    auto pos = keptPosition();
    Vec out;
    for (auto& t : v) {
      if (pos[t.comp] < 0) throw StructuralError("internal: non-kept input in representation");
      out.push_back({t.m, static_cast<std::uint32_t>(pos[t.comp]), t.coef});
    }
    vec::sortCombine(out, ring()->order(), ring()->field());
    return out;
  }

  /// Writes v = r + sum a_t input_t (mod background); returns (r, a) with a
  /// over the tracked space.
  std::pair<Vec, Vec> divide(const Vec& v) const {
    Vec w = red_.toModuleOrder(v);
    Vec rep;
    red_.reduce(w, 0, &rep);
    rep = vec::scale(std::move(rep), ring()->field().neg(1), ring()->field());
    return {red_.toStorageOrder(std::move(w)), std::move(rep)};
  }

  Vec normalForm(const Vec& v) const {
    Vec w = red_.toModuleOrder(v);
    red_.reduce(w, 0, nullptr);
    return red_.toStorageOrder(std::move(w));
  }

  /// Reduced Groebner basis elements (storage order).
  std::vector<Vec> basis() const {
    std::vector<Vec> out;
    for (auto& e : red_.elements()) out.push_back(red_.toStorageOrder(e.v));
    return out;
  }
  const std::vector<detail::GbElement>& elements() const { return red_.elements(); }

private:
  struct Pair {
    int i, j;
    Monomial lcm;
    std::uint32_t comp;
    int degree;
  };

  void run() {
    const auto& F = ring()->field();
    const int nv = ring()->nvars();
    trackedIdx_.assign(inputs_.size(), -1);
    kept_.assign(inputs_.size(), false);
    expr_.assign(inputs_.size(), Vec{});
    int nt = 0;
    for (std::size_t i = 0; i < inputs_.size(); ++i) {
      auto& in = inputs_[i];
      if (!in.v.empty()) {
        if (!vec::isHomogeneous(in.v, order().degrees) || *vec::degreeOf(in.v, order().degrees) != in.degree)
          throw StructuralError("inhomogeneous input to Groebner computation");
      }
      if (in.role != InputRole::Background) trackedIdx_[i] = nt++;
    }
    std::vector<std::size_t> order(inputs_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (inputs_[a].degree != inputs_[b].degree) return inputs_[a].degree < inputs_[b].degree;
      bool ba = inputs_[a].role == InputRole::Background, bb = inputs_[b].role == InputRole::Background;
      return ba && !bb;
    });
    std::size_t next = 0;

    while (next < order.size() || !pairs_.empty()) {
      int d = next < order.size() ? inputs_[order[next]].degree : pairs_.front().degree;
      for (auto& p : pairs_) d = std::min(d, p.degree);
      std::size_t firstNew = red_.elements().size();

      // S-pairs of degree d
      std::vector<Pair> now;
      std::vector<Pair> later;
      for (auto& p : pairs_) (p.degree == d ? now : later).push_back(p);
      pairs_ = std::move(later);
      std::sort(now.begin(), now.end(), [&](const Pair& a, const Pair& b) {
        int c = this->order().cmp(a.lcm, a.comp, b.lcm, b.comp);
        if (c) return c < 0;
        return a.j != b.j ? a.j < b.j : a.i < b.i;
      });
      for (auto& p : now) {
        const auto& gi = red_.elements()[p.i];
        const auto& gj = red_.elements()[p.j];
        Monomial qi = p.lcm / gi.v.front().m, qj = p.lcm / gj.v.front().m;
        Vec w = red_.axpy(Vec{}, 0, 1, qi, gi.v, 0);
        w = red_.axpy(w, 0, F.neg(1), qj, gj.v, 0);
        Vec rep;
        if (!gi.rep.empty()) rep = vec::axpy(rep, 1, qi, gi.rep, ring()->order(), F);
        if (!gj.rep.empty()) rep = vec::axpy(rep, F.neg(1), qj, gj.rep, ring()->order(), F);
        red_.reduce(w, 0, &rep);
        if (w.empty()) {
          if (!rep.empty()) addSyzygy(std::move(rep), d);
        } else {
          addElement(std::move(w), std::move(rep), d);
        }
      }

      // inputs of degree d: background first (already ordered)
      while (next < order.size() && inputs_[order[next]].degree == d) {
        std::size_t idx = order[next++];
        auto& in = inputs_[idx];
        Vec w = red_.toModuleOrder(in.v);
        Vec rep;
        if (trackedIdx_[idx] >= 0) rep = Vec{Term{Monomial(nv), static_cast<std::uint32_t>(trackedIdx_[idx]), 1}};
        red_.reduce(w, 0, &rep);
        switch (in.role) {
          case InputRole::Background:
            if (w.empty()) {
              if (!rep.empty()) addSyzygy(std::move(rep), d);
            } else {
              addElement(std::move(w), std::move(rep), d);
            }
            break;
          case InputRole::Required:
            kept_[idx] = true;
            if (w.empty()) addSyzygy(std::move(rep), d);
            else addElement(std::move(w), std::move(rep), d);
            break;
          case InputRole::Optional:
            if (w.empty()) {
              // rep = e_t - X where v_t = X mod background
              Vec e{Term{Monomial(nv), static_cast<std::uint32_t>(trackedIdx_[idx]), 1}};
              expr_[idx] = vec::axpy(e, F.neg(1), Monomial(nv), rep, ring()->order(), F);
            } else {
              kept_[idx] = true;
              addElement(std::move(w), std::move(rep), d);
            }
            break;
        }
      }

      // inter-reduce the tails of this degree's new elements
      for (std::size_t k = firstNew; k < red_.elements().size(); ++k) {
        auto& e = red_.element(static_cast<int>(k));
        Vec w = e.v;
        Vec rep = e.rep;
        red_.reduce(w, 1, &rep);
        e.v = std::move(w);
        e.rep = std::move(rep);
      }
    }
  }

  void addSyzygy(Vec rep, int degree) {
    syz_.push_back(std::move(rep));
    syzDeg_.push_back(degree);
  }

  void addElement(Vec w, Vec rep, int degree) {
    red_.makeMonic(w, &rep);
    detail::GbElement e;
    e.v = std::move(w);
    e.rep = std::move(rep);
    e.degree = degree;
    int k = red_.insert(std::move(e));
    updatePairs(k);
  }

  void updatePairs(int k) {
    const auto& hk = red_.elements()[k].v.front();
    std::vector<Pair> fresh;
    for (int i = 0; i < k; ++i) {
      const auto& li = red_.elements()[i].v.front();
      if (li.comp != hk.comp) continue;
      Monomial l = lcm(li.m, hk.m);
      fresh.push_back({i, k, l, hk.comp, l.degree() + order().degrees[hk.comp]});
    }
    if (!criteria_) {
      pairs_.insert(pairs_.end(), fresh.begin(), fresh.end());
      return;
    }
    // B: drop old pairs whose lcm is a proper multiple of LT(h) in a strict chain
    std::vector<Pair> keep;
    for (auto& p : pairs_) {
      if (p.comp == hk.comp && hk.m.divides(p.lcm)) {
        Monomial li = lcm(red_.elements()[p.i].v.front().m, hk.m);
        Monomial lj = lcm(red_.elements()[p.j].v.front().m, hk.m);
        if (!(li == p.lcm) && !(lj == p.lcm)) continue;
      }
      keep.push_back(p);
    }
    pairs_ = std::move(keep);
    // M: drop (i,k) when some (j,k) has lcm properly dividing it
    std::vector<Pair> m;
    for (auto& p : fresh) {
      bool drop = false;
      for (auto& q : fresh)
        if (q.i != p.i && q.lcm.divides(p.lcm) && !(q.lcm == p.lcm)) {
          drop = true;
          break;
        }
      if (!drop) m.push_back(p);
    }
    // F: keep one pair per lcm
    for (std::size_t a = 0; a < m.size(); ++a) {
      bool dup = false;
      for (std::size_t b = 0; b < a; ++b)
        if (m[b].lcm == m[a].lcm) {
          dup = true;
          break;
        }
      if (!dup) pairs_.push_back(m[a]);
    }
  }

  detail::Reducer red_;
  std::vector<GbInput> inputs_;
  bool criteria_;
  std::vector<Pair> pairs_;
  std::vector<int> trackedIdx_;
  std::vector<bool> kept_;
  std::vector<Vec> expr_;
  std::vector<Vec> syz_;
  std::vector<int> syzDeg_;
};

/// Reduced Groebner basis of a submodule of a graded free S-module.
class GroebnerBasis {
public:
  GroebnerBasis(RingPtr ring, GradedFreeModule ambient, ModuleOrder ord, const std::vector<Vec>& gens,
                bool criteria = true)
      : ambient_(std::move(ambient)), engine_(makeEngine(ring, ord, gens, criteria)) {}

  const RingPtr& ring() const { return engine_->ring(); }
  const GradedFreeModule& ambient() const { return ambient_; }
  const ModuleOrder& order() const { return engine_->order(); }
  std::vector<Vec> generators() const { return engine_->basis(); }
  std::size_t size() const { return engine_->elements().size(); }

  /// Leading terms in the module order.
  std::vector<Term> leadingTerms() const {
    std::vector<Term> out;
    for (auto& e : engine_->elements()) out.push_back(e.v.front());
    return out;
  }

  Vec normalForm(const Vec& v) const {
    for (auto& t : v)
      if (t.comp >= static_cast<std::uint32_t>(ambient_.rank()) || t.m.nvars() != ring()->nvars())
        throw StructuralError("normalForm: element outside the ambient module");
    return engine_->normalForm(v);
  }
  bool contains(const Vec& v) const { return normalForm(v).empty(); }

private:
  static std::shared_ptr<const TrackedGroebner> makeEngine(const RingPtr& ring, const ModuleOrder& ord,
                                                           const std::vector<Vec>& gens, bool criteria) {
    std::vector<GbInput> in;
    for (auto& g : gens) {
      if (g.empty()) continue;
      if (!vec::isHomogeneous(g, ord.degrees)) throw StructuralError("buchberger: inhomogeneous generator");
      in.push_back({g, *vec::degreeOf(g, ord.degrees), InputRole::Background});
    }
    return std::make_shared<const TrackedGroebner>(ring, ord, std::vector<Vec>{}, std::move(in), criteria);
  }

  GradedFreeModule ambient_;
  std::shared_ptr<const TrackedGroebner> engine_;
};

inline GroebnerBasis buchberger(const RingPtr& ring, const GradedFreeModule& ambient, const std::vector<Vec>& gens,
                                std::optional<ModuleOrder> ord = std::nullopt, bool criteria = true) {
  for (auto& g : gens)
    for (auto& t : g)
      if (t.comp >= static_cast<std::uint32_t>(ambient.rank())) throw StructuralError("buchberger: generator outside ambient");
  ModuleOrder o = ord ? *ord : ModuleOrder::termOverPosition(ring->order(), ambient.degrees);
  o.degrees = ambient.degrees;
  return GroebnerBasis(ring, ambient, o, gens, criteria);
}

/// Ideal version: generators are polynomials, ambient S^1.
inline GroebnerBasis buchberger(const std::vector<Polynomial>& gens) {
  if (gens.empty()) throw StructuralError("buchberger: need the ring of at least one generator");
  std::vector<Vec> v;
  for (auto& f : gens) {
    if (!f.isHomogeneous()) throw StructuralError("buchberger: inhomogeneous generator");
    Vec x;
    for (auto& [m, c] : f.terms()) x.push_back({m, 0, c});
    v.push_back(std::move(x));
  }
  return buchberger(gens.front().ring(), GradedFreeModule({0}), v);
}

inline Vec normalForm(const Vec& v, const GroebnerBasis& gb) { return gb.normalForm(v); }

inline Vec toVec(const Polynomial& f, std::uint32_t comp = 0) {
  Vec x;
  for (auto& [m, c] : f.terms()) x.push_back({m, comp, c});
  return x;
}
inline Polynomial toPolynomial(const RingPtr& ring, const Vec& v) {
  std::vector<Polynomial::TermType> ts;
  for (auto& t : v) {
    if (t.comp != 0) throw StructuralError("toPolynomial: vector has several components");
    ts.emplace_back(t.m, t.coef);
  }
  return Polynomial::fromTerms(ring, std::move(ts));
}

inline Polynomial normalForm(const Polynomial& f, const GroebnerBasis& gb) {
  return toPolynomial(gb.ring(), gb.normalForm(toVec(f)));
}

/// Generators of ker(S^k -> F, e_i -> gens[i]) over the polynomial ring S.
inline std::vector<Vec> syzygyBasis(const RingPtr& ring, const GradedFreeModule& ambient, const std::vector<Vec>& gens,
                                    const std::vector<int>& genDegrees) {
  if (gens.size() != genDegrees.size()) throw StructuralError("syzygyBasis: degree list size mismatch");
  std::vector<GbInput> in;
  for (std::size_t i = 0; i < gens.size(); ++i) in.push_back({gens[i], genDegrees[i], InputRole::Required});
  TrackedGroebner tg(ring, ModuleOrder::termOverPosition(ring->order(), ambient.degrees), {}, std::move(in));
  return tg.syzygies();
}

inline std::vector<Vec> syzygyBasis(const RingPtr& ring, const GradedFreeModule& ambient, const std::vector<Vec>& gens) {
  std::vector<int> d;
  for (auto& g : gens) {
    if (g.empty()) throw StructuralError("syzygyBasis: zero generator needs an explicit degree");
    d.push_back(*vec::degreeOf(g, ambient.degrees));
  }
  return syzygyBasis(ring, ambient, gens, d);
}

}  // namespace homolab
