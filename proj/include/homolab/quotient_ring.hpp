#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <type_traits>
#include <vector>

#include "groebner.hpp"

namespace homolab {

/// R = S/I for a homogeneous ideal I != (1). The polynomial ring itself is the
/// case I = 0.
class QuotientRing {
public:
  static std::shared_ptr<const QuotientRing> create(RingPtr cover, std::vector<Polynomial> idealGens = {}) {
    return std::shared_ptr<const QuotientRing>(new QuotientRing(std::move(cover), std::move(idealGens)));
  }
  static std::shared_ptr<const QuotientRing> create(std::uint64_t p, std::vector<std::string> names,
                                                    const std::vector<std::vector<std::pair<std::vector<int>, std::int64_t>>>& ideal = {}) {
    auto S = PolyRing::create(p, std::move(names));
    std::vector<Polynomial> gens;
    for (auto& f : ideal) {
      std::vector<Polynomial::TermType> ts;
      for (auto& [e, c] : f) ts.emplace_back(Monomial(e), S->field().fromInt(c));
      gens.push_back(Polynomial::fromTerms(S, ts));
    }
    return create(S, gens);
  }

  const RingPtr& cover() const { return cover_; }
  const PrimeField& field() const { return cover_->field(); }
  int nvars() const { return cover_->nvars(); }
  const std::vector<Polynomial>& idealGenerators() const { return gens_; }
  bool isPolynomialRing() const { return gb_.empty(); }

  /// Reduced Groebner basis of I (as polynomials).
  const std::vector<Polynomial>& idealBasis() const { return gb_; }

  Polynomial reduce(const Polynomial& f) const {
    if (gb_.empty()) return f;
    return normalForm(f, *basis_);
  }

  /// Normal form of every component modulo I.
  Vec reduce(const Vec& v) const {
    if (gb_.empty() || v.empty()) return v;
    Vec out;
    std::size_t i = 0;
    while (i < v.size()) {
      std::size_t j = i;
      Vec part;
      while (j < v.size() && v[j].comp == v[i].comp) {
        part.push_back({v[j].m, 0, v[j].coef});
        ++j;
      }
      Vec r = basis_->normalForm(part);
      for (auto& t : r) out.push_back({t.m, v[i].comp, t.coef});
      i = j;
    }
    vec::sortCombine(out, cover_->order(), field());
    return out;
  }

  /// The Groebner basis of I placed in every component of a free module of the
  /// given rank; used as preset background for Groebner runs over R.
  std::vector<Vec> idealTimesFree(std::size_t rank) const {
    std::vector<Vec> out;
    for (std::size_t c = 0; c < rank; ++c)
      for (auto& g : gb_) out.push_back(toVec(g, static_cast<std::uint32_t>(c)));
    return out;
  }

  /// The polynomial ring S viewed as a quotient ring with I = 0.
  std::shared_ptr<const QuotientRing> coverRing() const {
    std::lock_guard<std::mutex> lock(mu_);
    if (!coverRing_) coverRing_ = create(cover_);
    return coverRing_;
  }

  bool sameAs(const QuotientRing& o) const {
    if (this == &o) return true;
    if (!cover_->sameAs(*o.cover_) || gb_.size() != o.gb_.size()) return false;
    for (std::size_t i = 0; i < gb_.size(); ++i)
      if (!(gb_[i] == o.gb_[i])) return false;
    return true;
  }

  /// Lazily computed, race-safe per-ring cache; the value is computed at most
  /// once per key (concurrent callers for the same key block on it).
  template <class T, class Fn>
  std::shared_ptr<const T> cached(const std::string& key, Fn&& compute) const {
    std::shared_ptr<Slot> slot;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto& s = cache_[key];
      if (!s) s = std::make_shared<Slot>();
      slot = s;
    }
    std::lock_guard<std::mutex> lock(slot->mu);
    if (!slot->value) {
      if constexpr (std::is_same_v<std::invoke_result_t<Fn>, std::shared_ptr<const T>>) slot->value = compute();
      else slot->value = std::make_shared<const T>(compute());
    }
    return std::static_pointer_cast<const T>(slot->value);
  }

  std::string toString() const {
    std::string s = "F_" + std::to_string(field().characteristic()) + "[";
    for (int i = 0; i < nvars(); ++i) s += (i ? "," : "") + cover_->names()[i];
    s += "]";
    if (!gens_.empty()) {
      s += "/(";
      for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].toString();
      s += ")";
    }
    return s;
  }

private:
  struct Slot {
    std::mutex mu;
    std::shared_ptr<const void> value;
  };

  QuotientRing(RingPtr cover, std::vector<Polynomial> gens) : cover_(std::move(cover)) {
    for (auto& g : gens) {
      if (!g.ring() || !g.ring()->sameAs(*cover_)) throw StructuralError("ideal generator over a different ring");
      if (!g.isHomogeneous()) throw StructuralError("ideal generators must be homogeneous");
      if (!g.isZero()) gens_.push_back(g);
    }
    if (!gens_.empty()) {
      basis_ = std::make_shared<GroebnerBasis>(buchberger(gens_));
      for (auto& v : basis_->generators()) gb_.push_back(toPolynomial(cover_, v));
      for (auto& g : gb_)
        if (g.degree() == 0) throw StructuralError("the ideal is the unit ideal; the quotient ring is zero");
    }
  }

  RingPtr cover_;
  std::vector<Polynomial> gens_;
  std::vector<Polynomial> gb_;
  std::shared_ptr<const GroebnerBasis> basis_;
  mutable std::mutex mu_;
  mutable std::shared_ptr<const QuotientRing> coverRing_;
  mutable std::map<std::string, std::shared_ptr<Slot>> cache_;
};

using QRingPtr = std::shared_ptr<const QuotientRing>;

}  // namespace homolab
