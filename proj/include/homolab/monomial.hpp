#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "error.hpp"

namespace homolab {

inline constexpr int kMaxVars = 8;

/// Exponent vector x^a in at most kMaxVars variables. The total degree and a
/// support mask are cached so divisibility tests can reject early.
class Monomial {
public:
  Monomial() = default;
  explicit Monomial(int nvars) : n_(static_cast<std::uint8_t>(checkVars(nvars))) {}
  Monomial(std::initializer_list<int> exps) : Monomial(std::vector<int>(exps)) {}
  explicit Monomial(const std::vector<int>& exps) : n_(static_cast<std::uint8_t>(checkVars(static_cast<int>(exps.size())))) {
    for (std::size_t i = 0; i < exps.size(); ++i) {
      if (exps[i] < 0 || exps[i] > 0xffff) throw StructuralError("exponent out of range");
      e_[i] = static_cast<std::uint16_t>(exps[i]);
    }
    refresh();
  }

  static Monomial variable(int nvars, int index) {
    Monomial m(nvars);
    m.e_[index] = 1;
    m.refresh();
    return m;
  }

  int nvars() const { return n_; }
  int degree() const { return deg_; }
  int operator[](int i) const { return e_[i]; }
  std::uint8_t supportMask() const { return mask_; }
  bool isOne() const { return deg_ == 0; }

  void set(int i, int v) {
    if (v < 0 || v > 0xffff) throw StructuralError("exponent out of range");
    e_[i] = static_cast<std::uint16_t>(v);
    refresh();
  }

  bool divides(const Monomial& o) const {
    if (deg_ > o.deg_ || (mask_ & ~o.mask_)) return false;
    for (int i = 0; i < n_; ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (int i = 0; i < a.n_; ++i) {
      unsigned s = unsigned(a.e_[i]) + b.e_[i];
      if (s > 0xffff) throw StructuralError("exponent overflow");
      r.e_[i] = static_cast<std::uint16_t>(s);
    }
    r.deg_ = a.deg_ + b.deg_;
    r.mask_ = a.mask_ | b.mask_;
    return r;
  }

  /// a / b; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (int i = 0; i < a.n_; ++i) r.e_[i] = static_cast<std::uint16_t>(a.e_[i] - b.e_[i]);
    r.refresh();
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a);
    for (int i = 0; i < a.n_; ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
    r.refresh();
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.n_ == b.n_ && a.deg_ == b.deg_ && a.e_ == b.e_;
  }

  std::size_t hash() const {
    std::size_t h = n_;
    for (int i = 0; i < n_; ++i) h = h * 1000003u + e_[i];
    return h;
  }

  std::vector<int> exponents() const { return {e_.begin(), e_.begin() + n_}; }

  std::string toString(const std::vector<std::string>& names) const {
    if (deg_ == 0) return "1";
    std::string s;
    for (int i = 0; i < n_; ++i) {
      if (e_[i] == 0) continue;
      if (!s.empty()) s += '*';
      s += names[i];
      if (e_[i] > 1) s += '^' + std::to_string(e_[i]);
    }
    return s;
  }

private:
  static int checkVars(int n) {
    if (n < 0 || n > kMaxVars)
      throw StructuralError("at most " + std::to_string(kMaxVars) + " variables are supported");
    return n;
  }
  void refresh() {
    deg_ = 0;
    mask_ = 0;
    for (int i = 0; i < n_; ++i) {
      deg_ += e_[i];
      if (e_[i]) mask_ |= static_cast<std::uint8_t>(1u << i);
    }
  }

  std::array<std::uint16_t, kMaxVars> e_{};
  std::uint8_t n_ = 0;
  std::uint8_t mask_ = 0;
  int deg_ = 0;
};

enum class OrderKind { Grevlex, Lex };

/// Global monomial order on a fixed number of variables.
struct MonomialOrder {
  OrderKind kind = OrderKind::Grevlex;
  int nvars = 0;

  // Hot path: callers guarantee equal variable counts.
  int cmp(const Monomial& a, const Monomial& b) const {
    if (kind == OrderKind::Grevlex) {
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      for (int i = nvars - 1; i >= 0; --i)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
      return 0;
    }
    for (int i = 0; i < nvars; ++i)
      if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
  }

  bool operator==(const MonomialOrder&) const = default;
};

inline std::strong_ordering monomialCompare(const Monomial& a, const Monomial& b, const MonomialOrder& ord) {
  if (a.nvars() != b.nvars() || a.nvars() != ord.nvars)
    throw StructuralError("monomialCompare: mismatched variable counts");
  int c = ord.cmp(a, b);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// All monomials of the given degree in n variables, in descending grevlex order
/// (deterministic enumeration used by degreewise linear algebra).
inline std::vector<Monomial> monomialsOfDegree(int nvars, int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(0);
    return out;
  }
  std::vector<int> e(nvars, 0);
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == nvars - 1) {
      e[var] = left;
      out.emplace_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[var] = k;
      rec(var + 1, left - k);
    }
  };
  rec(0, degree);
  MonomialOrder ord{OrderKind::Grevlex, nvars};
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return ord.cmp(a, b) > 0; });
  return out;
}

}  // namespace homolab
