#pragma once

#include <algorithm>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "monomial.hpp"

namespace homolab {

/// Polynomial ring S = F_p[x_1..x_n] with a fixed monomial order.
class PolyRing {
public:
  static std::shared_ptr<const PolyRing> create(std::uint64_t p, std::vector<std::string> names,
                                                OrderKind order = OrderKind::Grevlex) {
    return std::shared_ptr<const PolyRing>(new PolyRing(PrimeField(p), std::move(names), order));
  }

  const PrimeField& field() const { return field_; }
  int nvars() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const MonomialOrder& order() const { return order_; }
  Monomial one() const { return Monomial(nvars()); }

  bool sameAs(const PolyRing& o) const {
    return this == &o || (field_ == o.field_ && names_ == o.names_ && order_ == o.order_);
  }

private:
  PolyRing(PrimeField f, std::vector<std::string> names, OrderKind order)
      : field_(f), names_(std::move(names)), order_{order, static_cast<int>(names_.size())} {
    if (names_.size() > static_cast<std::size_t>(kMaxVars))
      throw StructuralError("at most " + std::to_string(kMaxVars) + " variables are supported");
  }

  PrimeField field_;
  std::vector<std::string> names_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

/// Element of S in canonical form: terms sorted strictly descending in the
/// ring order, no zero coefficients.
class Polynomial {
public:
  using TermType = std::pair<Monomial, std::uint32_t>;

  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(const RingPtr& ring, std::int64_t c) {
    Polynomial p(ring);
    auto v = ring->field().fromInt(c);
    if (v) p.terms_.emplace_back(ring->one(), v);
    return p;
  }
  static Polynomial variable(const RingPtr& ring, int i) {
    if (i < 0 || i >= ring->nvars()) throw StructuralError("variable index out of range");
    Polynomial p(ring);
    p.terms_.emplace_back(Monomial::variable(ring->nvars(), i), 1u);
    return p;
  }
  static Polynomial monomial(const RingPtr& ring, const Monomial& m, std::uint32_t c = 1) {
    Polynomial p(ring);
    if (c % ring->field().characteristic()) p.terms_.emplace_back(m, c % ring->field().characteristic());
    return p;
  }
  /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
  static Polynomial fromTerms(const RingPtr& ring, std::vector<TermType> terms) {
    Polynomial p(ring);
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<TermType>& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Monomial& leadMonomial() const { return terms_.front().first; }
  std::uint32_t leadCoefficient() const { return terms_.front().second; }

  /// Total degree of the leading term; -1 for zero.
  int degree() const {
    int d = -1;
    for (auto& t : terms_) d = std::max(d, t.first.degree());
    return d;
  }
  bool isHomogeneous() const {
    for (auto& t : terms_)
      if (t.first.degree() != terms_.front().first.degree()) return false;
    return true;
  }
  bool isConstant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.isOne()); }

  std::uint32_t coefficientOf(const Monomial& m) const {
    for (auto& t : terms_)
      if (t.first == m) return t.second;
    return 0;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_.size() == b.terms_.size() && std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin());
  }

  Polynomial operator-() const {
    Polynomial r(*this);
    for (auto& t : r.terms_) t.second = ring_->field().neg(t.second);
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return combine(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return combine(a, b, true); }

  friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    const RingPtr& ring = requireSame(f, g);
    const auto& F = ring->field();
    std::vector<TermType> out;
    out.reserve(f.terms_.size() * g.terms_.size());
    for (auto& a : f.terms_)
      for (auto& b : g.terms_) out.emplace_back(a.first * b.first, F.mul(a.second, b.second));
    return fromTerms(ring, std::move(out));
  }

  Polynomial scaled(std::uint32_t c) const {
    Polynomial r(ring_);
    c %= ring_->field().characteristic();
    if (c == 0) return r;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.second = ring_->field().mul(t.second, c);
    return r;
  }
  Polynomial timesMonomial(const Monomial& m) const {
    Polynomial r(ring_);
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.first = t.first * m;
    return r;
  }
  Polynomial pow(unsigned e) const {
    Polynomial r = constant(ring_, 1);
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  std::string toString() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
      std::int64_t s = ring_->field().toSigned(c);
      if (!first) os << (s < 0 ? " - " : " + ");
      else if (s < 0) os << "-";
      std::int64_t a = s < 0 ? -s : s;
      if (m.isOne()) os << a;
      else {
        if (a != 1) os << a << "*";
        os << m.toString(ring_->names());
      }
      first = false;
    }
    return os.str();
  }

private:
  static const RingPtr& requireSame(const Polynomial& a, const Polynomial& b) {
    if (!a.ring_ || !b.ring_) throw StructuralError("polynomial without a ring");
    if (!a.ring_->sameAs(*b.ring_)) throw StructuralError("polynomials over different rings");
    return a.ring_;
  }

  static Polynomial combine(const Polynomial& a, const Polynomial& b, bool subtract) {
    const RingPtr& ring = requireSame(a, b);
    const auto& F = ring->field();
    const auto& ord = ring->order();
    Polynomial r(ring);
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c = i == a.terms_.size() ? -1 : j == b.terms_.size() ? 1 : ord.cmp(a.terms_[i].first, b.terms_[j].first);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        auto v = subtract ? F.neg(b.terms_[j].second) : b.terms_[j].second;
        r.terms_.emplace_back(b.terms_[j++].first, v);
      } else {
        auto v = subtract ? F.sub(a.terms_[i].second, b.terms_[j].second) : F.add(a.terms_[i].second, b.terms_[j].second);
        if (v) r.terms_.emplace_back(a.terms_[i].first, v);
        ++i;
        ++j;
      }
    }
    return r;
  }

  void normalize() {
    const auto& ord = ring_->order();
    const auto& F = ring_->field();
    for (auto& t : terms_) {
      if (t.first.nvars() != ring_->nvars()) throw StructuralError("monomial variable count does not match ring");
      t.second %= F.characteristic();
    }
    std::sort(terms_.begin(), terms_.end(), [&](const TermType& a, const TermType& b) { return ord.cmp(a.first, b.first) > 0; });
    std::vector<TermType> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first) out.back().second = F.add(out.back().second, t.second);
      else out.push_back(t);
      if (out.back().second == 0) out.pop_back();
    }
    terms_ = std::move(out);
  }

  RingPtr ring_;
  std::vector<TermType> terms_;
};

/// Multiplies two polynomials; throws StructuralError if the rings differ.
inline Polynomial polynomialProduct(const Polynomial& f, const Polynomial& g) { return f * g; }

}  // namespace homolab
