#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "polynomial.hpp"

namespace homolab {

/// c * m * e_comp in a free module.
struct Term {
  Monomial m;
  std::uint32_t comp = 0;
  std::uint32_t coef = 0;

  friend bool operator==(const Term& a, const Term& b) {
    return a.comp == b.comp && a.coef == b.coef && a.m == b.m;
  }
};

/// Sparse free-module element. Outside the Groebner engine every Vec is kept in
/// storage order: component ascending, then monomial descending.
using Vec = std::vector<Term>;

namespace vec {

inline int storageCmp(const Term& a, const Term& b, const MonomialOrder& ord) {
  if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
  return ord.cmp(a.m, b.m);
}

inline void sortCombine(Vec& v, const MonomialOrder& ord, const PrimeField& F) {
  std::sort(v.begin(), v.end(), [&](const Term& a, const Term& b) { return storageCmp(a, b, ord) > 0; });
  Vec out;
  out.reserve(v.size());
  for (auto& t : v) {
    if (!out.empty() && out.back().comp == t.comp && out.back().m == t.m) out.back().coef = F.add(out.back().coef, t.coef);
    else out.push_back(t);
    if (out.back().coef == 0) out.pop_back();
  }
  v = std::move(out);
}

/// a + c * mono * b, both in storage order.
inline Vec axpy(const Vec& a, std::uint32_t c, const Monomial& mono, const Vec& b, const MonomialOrder& ord,
                const PrimeField& F) {
  Vec r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  const bool unit = mono.isOne();
  while (i < a.size() || j < b.size()) {
    Term bt;
    if (j < b.size()) {
      bt = b[j];
      if (!unit) bt.m = bt.m * mono;
    }
    int s = i == a.size() ? -1 : j == b.size() ? 1 : storageCmp(a[i], bt, ord);
    if (s > 0) {
      r.push_back(a[i++]);
    } else if (s < 0) {
      bt.coef = F.mul(bt.coef, c);
      if (bt.coef) r.push_back(bt);
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

inline Vec add(const Vec& a, const Vec& b, const MonomialOrder& ord, const PrimeField& F) {
  return axpy(a, 1, Monomial(ord.nvars), b, ord, F);
}

inline Vec scale(Vec v, std::uint32_t c, const PrimeField& F) {
  if (c == 0) return {};
  for (auto& t : v) t.coef = F.mul(t.coef, c);
  return v;
}

inline Vec timesPolynomial(const Vec& v, const Polynomial& f, const MonomialOrder& ord, const PrimeField& F) {
  Vec out;
  out.reserve(v.size() * f.size());
  for (auto& [m, c] : f.terms())
    for (auto& t : v) out.push_back({t.m * m, t.comp, F.mul(t.coef, c)});
  sortCombine(out, ord, F);
  return out;
}

/// Degree of a homogeneous element given component degrees; nullopt for zero.
inline std::optional<int> degreeOf(const Vec& v, const std::vector<int>& compDegrees) {
  if (v.empty()) return std::nullopt;
  return v.front().m.degree() + compDegrees[v.front().comp];
}

inline bool isHomogeneous(const Vec& v, const std::vector<int>& compDegrees) {
  for (auto& t : v)
    if (t.m.degree() + compDegrees[t.comp] != v.front().m.degree() + compDegrees[v.front().comp]) return false;
  return true;
}

/// Renumbers components: comp -> map[comp] (entries must be valid), re-sorted.
inline Vec remap(const Vec& v, const std::vector<std::uint32_t>& map, const MonomialOrder& ord, const PrimeField& F) {
  Vec out = v;
  for (auto& t : out) t.comp = map[t.comp];
  sortCombine(out, ord, F);
  return out;
}

inline Vec unit(int nvars, std::uint32_t comp) { return Vec{Term{Monomial(nvars), comp, 1}}; }

}  // namespace vec

/// Free module S^r or R^r with generator twists: generator i has degree degrees[i].
struct GradedFreeModule {
  std::vector<int> degrees;

  GradedFreeModule() = default;
  explicit GradedFreeModule(std::vector<int> d) : degrees(std::move(d)) {}
  int rank() const { return static_cast<int>(degrees.size()); }
  bool operator==(const GradedFreeModule&) const = default;
};

/// Matrix with polynomial entries, stored by sparse columns. Column j is a Vec
/// whose component index is the row.
class PolyMatrix {
public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr ring, std::vector<int> rowDegrees, std::vector<int> colDegrees)
      : ring_(std::move(ring)), rowDegrees_(std::move(rowDegrees)), colDegrees_(std::move(colDegrees)),
        cols_(colDegrees_.size()) {}
  PolyMatrix(RingPtr ring, std::vector<int> rowDegrees, std::vector<int> colDegrees, std::vector<Vec> cols)
      : ring_(std::move(ring)), rowDegrees_(std::move(rowDegrees)), colDegrees_(std::move(colDegrees)),
        cols_(std::move(cols)) {
    if (cols_.size() != colDegrees_.size()) throw StructuralError("column count does not match column degrees");
    for (auto& c : cols_) {
      for (auto& t : c)
        if (t.comp >= rowDegrees_.size()) throw StructuralError("matrix entry outside row range");
      vec::sortCombine(c, ring_->order(), ring_->field());
    }
  }

  /// Dense constructor: entries[i][j] is the (i,j) entry.
  static PolyMatrix fromEntries(const RingPtr& ring, const std::vector<std::vector<Polynomial>>& entries,
                                std::vector<int> rowDegrees, std::vector<int> colDegrees) {
    PolyMatrix A(ring, std::move(rowDegrees), std::move(colDegrees));
    if (entries.size() != A.rows()) throw StructuralError("row count does not match row degrees");
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (entries[i].size() != A.cols()) throw StructuralError("ragged matrix");
      for (std::size_t j = 0; j < entries[i].size(); ++j) A.set(i, j, entries[i][j]);
    }
    return A;
  }

  static PolyMatrix identity(const RingPtr& ring, const std::vector<int>& degrees) {
    PolyMatrix A(ring, degrees, degrees);
    for (std::size_t i = 0; i < degrees.size(); ++i) A.cols_[i] = vec::unit(ring->nvars(), static_cast<std::uint32_t>(i));
    return A;
  }
  static PolyMatrix zero(const RingPtr& ring, std::vector<int> rowDegrees, std::vector<int> colDegrees) {
    return PolyMatrix(ring, std::move(rowDegrees), std::move(colDegrees));
  }

  const RingPtr& ring() const { return ring_; }
  std::size_t rows() const { return rowDegrees_.size(); }
  std::size_t cols() const { return colDegrees_.size(); }
  const std::vector<int>& rowDegrees() const { return rowDegrees_; }
  const std::vector<int>& colDegrees() const { return colDegrees_; }
  const std::vector<Vec>& columns() const { return cols_; }
  const Vec& column(std::size_t j) const { return cols_[j]; }
  GradedFreeModule source() const { return GradedFreeModule(colDegrees_); }
  GradedFreeModule target() const { return GradedFreeModule(rowDegrees_); }

  Polynomial entry(std::size_t i, std::size_t j) const {
    std::vector<Polynomial::TermType> ts;
    for (auto& t : cols_[j])
      if (t.comp == i) ts.emplace_back(t.m, t.coef);
    return Polynomial::fromTerms(ring_, std::move(ts));
  }

  void set(std::size_t i, std::size_t j, const Polynomial& f) {
    Vec& c = cols_[j];
    c.erase(std::remove_if(c.begin(), c.end(), [&](const Term& t) { return t.comp == i; }), c.end());
    for (auto& [m, coef] : f.terms()) c.push_back({m, static_cast<std::uint32_t>(i), coef});
    vec::sortCombine(c, ring_->order(), ring_->field());
  }

  bool isZero() const {
    for (auto& c : cols_)
      if (!c.empty()) return false;
    return true;
  }

  /// True iff entry (i,j) is zero or homogeneous of degree colDeg[j] - rowDeg[i].
  bool isHomogeneous() const {
    for (std::size_t j = 0; j < cols_.size(); ++j)
      for (auto& t : cols_[j])
        if (t.m.degree() != colDegrees_[j] - rowDegrees_[t.comp]) return false;
    return true;
  }

  /// True iff no entry has a nonzero constant term.
  bool isMinimal() const {
    for (auto& c : cols_)
      for (auto& t : c)
        if (t.m.isOne()) return false;
    return true;
  }

  friend PolyMatrix operator*(const PolyMatrix& A, const PolyMatrix& B) {
    if (A.cols() != B.rows()) throw StructuralError("matrix product: dimension mismatch");
    PolyMatrix C(A.ring_, A.rowDegrees_, B.colDegrees_);
    const auto& F = A.ring_->field();
    for (std::size_t j = 0; j < B.cols(); ++j) {
      Vec out;
      for (auto& t : B.cols_[j])
        for (auto& a : A.cols_[t.comp]) out.push_back({a.m * t.m, a.comp, F.mul(a.coef, t.coef)});
      vec::sortCombine(out, A.ring_->order(), F);
      C.cols_[j] = std::move(out);
    }
    return C;
  }

  /// A applied to a column vector given as a Vec over the source basis.
  Vec apply(const Vec& v) const {
    const auto& F = ring_->field();
    Vec out;
    for (auto& t : v) {
      if (t.comp >= cols()) throw StructuralError("vector outside matrix source");
      for (auto& a : cols_[t.comp]) out.push_back({a.m * t.m, a.comp, F.mul(a.coef, t.coef)});
    }
    vec::sortCombine(out, ring_->order(), F);
    return out;
  }

  PolyMatrix transpose() const {
    std::vector<int> rd(colDegrees_.size()), cd(rowDegrees_.size());
    for (std::size_t j = 0; j < rd.size(); ++j) rd[j] = -colDegrees_[j];
    for (std::size_t i = 0; i < cd.size(); ++i) cd[i] = -rowDegrees_[i];
    PolyMatrix T(ring_, rd, cd);
    for (std::size_t j = 0; j < cols_.size(); ++j)
      for (auto& t : cols_[j]) T.cols_[t.comp].push_back({t.m, static_cast<std::uint32_t>(j), t.coef});
    for (auto& c : T.cols_) vec::sortCombine(c, ring_->order(), ring_->field());
    return T;
  }

  PolyMatrix scaled(std::uint32_t c) const {
    PolyMatrix r(*this);
    for (auto& col : r.cols_) col = vec::scale(col, c, ring_->field());
    return r;
  }

  /// Adds d to every row and column degree.
  PolyMatrix twisted(int d) const {
    PolyMatrix r(*this);
    for (auto& x : r.rowDegrees_) x += d;
    for (auto& x : r.colDegrees_) x += d;
    return r;
  }

  PolyMatrix withDegrees(std::vector<int> rowDegrees, std::vector<int> colDegrees) const {
    return PolyMatrix(ring_, std::move(rowDegrees), std::move(colDegrees), cols_);
  }

  PolyMatrix withRing(const RingPtr& ring) const {
    if (!ring->sameAs(*ring_)) throw StructuralError("matrix ring change requires identical polynomial rings");
    PolyMatrix r(*this);
    r.ring_ = ring;
    return r;
  }

  /// [A | B] on a common target.
  friend PolyMatrix concatColumns(const PolyMatrix& A, const PolyMatrix& B) {
    if (A.rowDegrees_ != B.rowDegrees_) throw StructuralError("concatColumns: targets differ");
    PolyMatrix r(A);
    r.colDegrees_.insert(r.colDegrees_.end(), B.colDegrees_.begin(), B.colDegrees_.end());
    r.cols_.insert(r.cols_.end(), B.cols_.begin(), B.cols_.end());
    return r;
  }

  friend PolyMatrix directSum(const PolyMatrix& A, const PolyMatrix& B) {
    std::vector<int> rd = A.rowDegrees_, cd = A.colDegrees_;
    rd.insert(rd.end(), B.rowDegrees_.begin(), B.rowDegrees_.end());
    cd.insert(cd.end(), B.colDegrees_.begin(), B.colDegrees_.end());
    PolyMatrix r(A.ring_, rd, cd);
    for (std::size_t j = 0; j < A.cols(); ++j) r.cols_[j] = A.cols_[j];
    auto off = static_cast<std::uint32_t>(A.rows());
    for (std::size_t j = 0; j < B.cols(); ++j) {
      Vec c = B.cols_[j];
      for (auto& t : c) t.comp += off;
      r.cols_[A.cols() + j] = std::move(c);
    }
    return r;
  }

  /// Kronecker product A (x) B; row (i,k) -> i*B.rows()+k, same for columns.
  friend PolyMatrix kronecker(const PolyMatrix& A, const PolyMatrix& B) {
    std::vector<int> rd, cd;
    for (int a : A.rowDegrees_)
      for (int b : B.rowDegrees_) rd.push_back(a + b);
    for (int a : A.colDegrees_)
      for (int b : B.colDegrees_) cd.push_back(a + b);
    PolyMatrix r(A.ring_, rd, cd);
    const auto& F = A.ring_->field();
    for (std::size_t j = 0; j < A.cols(); ++j)
      for (std::size_t l = 0; l < B.cols(); ++l) {
        Vec out;
        for (auto& s : A.cols_[j])
          for (auto& t : B.cols_[l])
            out.push_back({s.m * t.m, static_cast<std::uint32_t>(s.comp * B.rows() + t.comp), F.mul(s.coef, t.coef)});
        vec::sortCombine(out, A.ring_->order(), F);
        r.cols_[j * B.cols() + l] = std::move(out);
      }
    return r;
  }

  PolyMatrix selectColumns(const std::vector<std::size_t>& idx) const {
    PolyMatrix r(ring_, rowDegrees_, {});
    for (auto j : idx) {
      r.colDegrees_.push_back(colDegrees_[j]);
      r.cols_.push_back(cols_[j]);
    }
    return r;
  }

  friend bool operator==(const PolyMatrix& A, const PolyMatrix& B) {
    return A.rowDegrees_ == B.rowDegrees_ && A.colDegrees_ == B.colDegrees_ && A.cols_ == B.cols_;
  }

  std::string toString() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < rows(); ++i) {
      os << (i ? "\n[" : "[");
      for (std::size_t j = 0; j < cols(); ++j) os << (j ? ", " : "") << entry(i, j).toString();
      os << "]";
    }
    return os.str();
  }

private:
  RingPtr ring_;
  std::vector<int> rowDegrees_;
  std::vector<int> colDegrees_;
  std::vector<Vec> cols_;
};

/// A applied to a vector of polynomials (one per column of A).
inline std::vector<Polynomial> matrixApply(const PolyMatrix& A, const std::vector<Polynomial>& v) {
  if (v.size() != A.cols()) throw StructuralError("matrixApply: dimension mismatch");
  std::vector<Polynomial> out(A.rows(), Polynomial(A.ring()));
  for (std::size_t j = 0; j < A.cols(); ++j) {
    if (v[j].isZero()) continue;
    for (std::size_t i = 0; i < A.rows(); ++i) {
      Polynomial e = A.entry(i, j);
      if (!e.isZero()) out[i] = out[i] + e * v[j];
    }
  }
  return out;
}

inline bool homogeneityCheck(const PolyMatrix& A) { return A.isHomogeneous(); }

}  // namespace homolab
