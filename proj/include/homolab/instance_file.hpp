#pragma once

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "instance.hpp"

namespace homolab {

namespace detail {

/// An expression linear in the module generators: parts[0] is the scalar
/// polynomial, parts[g+1] the coefficient of generator g.
struct LinExpr {
  std::vector<Polynomial> parts;
  bool hasGens() const {
    for (std::size_t i = 1; i < parts.size(); ++i)
      if (!parts[i].isZero()) return true;
    return false;
  }
};

class ExprParser {
public:
  ExprParser(const std::string& text, int line, int colOffset, const RingPtr& ring,
             const std::map<std::string, std::size_t>& gens)
      : s_(text), line_(line), off_(colOffset), ring_(ring), gens_(gens) {}

  LinExpr parse() {
    LinExpr e = expr();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

  int column() const { return off_ + static_cast<int>(pos_) + 1; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(line_, column(), what); }

private:
  LinExpr zero() const { return LinExpr{std::vector<Polynomial>(gens_.size() + 1, Polynomial(ring_))}; }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  LinExpr expr() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    LinExpr acc = term();
    if (neg) negate(acc);
    for (;;) {
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) return acc;
      bool minus = s_[pos_] == '-';
      ++pos_;
      LinExpr t = term();
      for (std::size_t i = 0; i < acc.parts.size(); ++i) acc.parts[i] = minus ? acc.parts[i] - t.parts[i] : acc.parts[i] + t.parts[i];
    }
  }

  void negate(LinExpr& e) const {
    for (auto& p : e.parts) p = -p;
  }

  LinExpr term() {
    LinExpr acc = factor();
    for (;;) {
      skip();
      if (pos_ >= s_.size() || s_[pos_] != '*') return acc;
      ++pos_;
      std::size_t at = pos_;
      LinExpr f = factor();
      if (acc.hasGens() && f.hasGens()) {
        pos_ = at;
        fail("product of two generators");
      }
      acc = multiply(acc, f);
    }
  }

  LinExpr multiply(const LinExpr& a, const LinExpr& b) const {
    LinExpr r = zero();
    for (std::size_t i = 0; i < r.parts.size(); ++i) {
      r.parts[i] = a.parts[0] * b.parts[i];
      if (i > 0) r.parts[i] = r.parts[i] + a.parts[i] * b.parts[0];
    }
    r.parts[0] = a.parts[0] * b.parts[0];
    return r;
  }

  int exponent() {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '^') return 1;
    ++pos_;
    skip();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected exponent");
    long e = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      e = e * 10 + (s_[pos_++] - '0');
      if (e > 1000) fail("exponent too large");
    }
    return static_cast<int>(e);
  }

  LinExpr factor() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    char c = s_[pos_];
    LinExpr r = zero();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const auto p = ring_->field().characteristic();
      std::uint64_t v = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) v = (v * 10 + (s_[pos_++] - '0')) % p;
      r.parts[0] = Polynomial::constant(ring_, static_cast<std::int64_t>(v));
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (auto it = gens_.find(name); it != gens_.end()) {
        r.parts[it->second + 1] = Polynomial::constant(ring_, 1);
        if (exponent() != 1) fail("generator raised to a power");
        return r;
      }
      const auto& names = ring_->names();
      int var = -1;
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) var = static_cast<int>(i);
      if (var < 0) {
        pos_ = start;
        fail("unknown symbol '" + name + "'");
      }
      r.parts[0] = Polynomial::variable(ring_, var);
    } else if (c == '(') {
      ++pos_;
      r = expr();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
    } else {
      fail("unexpected '" + std::string(1, c) + "'");
    }
    int e = exponent();
    if (e != 1) {
      if (r.hasGens()) fail("generator raised to a power");
      r.parts[0] = r.parts[0].pow(e);
    }
    return r;
  }

  const std::string& s_;
  int line_;
  int off_;
  RingPtr ring_;
  const std::map<std::string, std::size_t>& gens_;
  std::size_t pos_ = 0;
};

struct Line {
  int number;
  std::string text;  // comment stripped
};

/// Split on top-level commas, returning (piece, column offset of the piece).
inline std::vector<std::pair<std::string, int>> splitCommas(const std::string& s, int offset) {
  std::vector<std::pair<std::string, int>> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || (s[i] == ',' && depth == 0)) {
      out.push_back({s.substr(start, i - start), offset + static_cast<int>(start)});
      start = i + 1;
    } else if (s[i] == '(') {
      ++depth;
    } else if (s[i] == ')') {
      --depth;
    }
  }
  return out;
}

inline bool isIdentifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

}  // namespace detail

/// Parse the line-oriented instance format:
///   field <p> / ring <var>+ / ideal <poly>, ... / module <Name> with indented
///   `gens <name>:<deg>, ...` and `rels <combination>, ...` lines. '#' starts a comment.
inline Instance parseInstanceFile(const std::string& text, const std::string& id = "user") {
  std::vector<detail::Line> lines;
  {
    std::istringstream is(text);
    std::string raw;
    int n = 0;
    while (std::getline(is, raw)) {
      ++n;
      if (auto h = raw.find('#'); h != std::string::npos) raw = raw.substr(0, h);
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      bool blank = true;
      for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
      if (!blank) lines.push_back({n, raw});
    }
  }

  // keyword and the rest with its column offset
  auto split = [](const detail::Line& l) {
    std::size_t a = l.text.find_first_not_of(" \t");
    std::size_t b = l.text.find_first_of(" \t", a);
    std::string kw = l.text.substr(a, b == std::string::npos ? std::string::npos : b - a);
    std::size_t c = b == std::string::npos ? l.text.size() : l.text.find_first_not_of(" \t", b);
    if (c == std::string::npos) c = l.text.size();
    return std::tuple<std::string, int, std::string, int>{kw, static_cast<int>(a) + 1, l.text.substr(c), static_cast<int>(c)};
  };

  Instance inst;
  inst.id = id;
  inst.provenance.kind = Provenance::Kind::User;
  std::size_t li = 0;
  if (lines.empty()) throw ParseError(1, 1, "expected 'field <p>'");

  // field
  {
    auto [kw, col, rest, rcol] = split(lines[li]);
    if (kw != "field") throw ParseError(lines[li].number, col, "expected 'field <p>'");
    std::uint64_t p = 0;
    bool ok = !rest.empty();
    std::size_t end = rest.find_last_not_of(" \t");
    for (std::size_t i = 0; ok && i <= end; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(rest[i])) || p > (1ull << 31)) ok = false;
      else p = p * 10 + (rest[i] - '0');
    }
    if (!ok) throw ParseError(lines[li].number, rcol + 1, "expected a prime characteristic");
    if (!isPrime(p) || p >= (1ull << 31)) throw ParseError(lines[li].number, rcol + 1, "characteristic " + rest.substr(0, end + 1) + " is not a supported prime");
    ++li;
    if (li >= lines.size()) throw ParseError(lines.back().number + 1, 1, "expected 'ring <variables>'");
    auto [kw2, col2, rest2, rcol2] = split(lines[li]);
    if (kw2 != "ring") throw ParseError(lines[li].number, col2, "expected 'ring <variables>'");
    std::vector<std::string> names;
    std::istringstream vs(rest2);
    std::string v;
    while (vs >> v) {
      if (!detail::isIdentifier(v)) throw ParseError(lines[li].number, rcol2 + 1, "bad variable name '" + v + "'");
      for (auto& w : names)
        if (w == v) throw ParseError(lines[li].number, rcol2 + 1, "duplicate variable '" + v + "'");
      names.push_back(v);
    }
    if (names.empty() || names.size() > static_cast<std::size_t>(kMaxVars))
      throw ParseError(lines[li].number, rcol2 + 1, "between 1 and " + std::to_string(kMaxVars) + " variables are required");
    auto S = PolyRing::create(p, names);
    ++li;
    std::vector<Polynomial> ideal;
    if (li < lines.size() && std::get<0>(split(lines[li])) == "ideal") {
      auto [kw3, col3, rest3, rcol3] = split(lines[li]);
      std::map<std::string, std::size_t> none;
      for (auto& [piece, off] : detail::splitCommas(rest3, rcol3)) {
        detail::ExprParser ep(piece, lines[li].number, off, S, none);
        Polynomial f = ep.parse().parts[0];
        if (!f.isHomogeneous()) throw ParseError(lines[li].number, off + 1, "ideal generator is not homogeneous");
        ideal.push_back(f);
      }
      ++li;
    }
    try {
      inst.ring = QuotientRing::create(S, ideal);
    } catch (const StructuralError& e) {
      throw ParseError(lines[li - 1].number, 1, e.what());
    }
  }

  const RingPtr& S = inst.ring->cover();
  while (li < lines.size()) {
    auto [kw, col, rest, rcol] = split(lines[li]);
    if (kw != "module") throw ParseError(lines[li].number, col, "expected 'module <name>'");
    std::string name = rest.substr(0, rest.find_last_not_of(" \t") + 1);
    if (!detail::isIdentifier(name)) throw ParseError(lines[li].number, rcol + 1, "bad module name");
    if (inst.modules.count(name)) throw ParseError(lines[li].number, rcol + 1, "duplicate module '" + name + "'");
    const int moduleLine = lines[li].number;
    ++li;
    std::map<std::string, std::size_t> gens;
    std::vector<int> degrees;
    bool haveGens = false;
    std::vector<int> relDeg;
    std::vector<Vec> rels;
    while (li < lines.size()) {
      auto [k2, c2, r2, rc2] = split(lines[li]);
      if (k2 == "gens") {
        if (haveGens) throw ParseError(lines[li].number, c2, "duplicate 'gens' line");
        haveGens = true;
        for (auto& [piece, off] : detail::splitCommas(r2, rc2)) {
          auto colon = piece.find(':');
          auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            if (a == std::string::npos) return std::string();
            return s.substr(a, s.find_last_not_of(" \t") - a + 1);
          };
          std::string g = trim(piece.substr(0, colon));
          if (!detail::isIdentifier(g)) throw ParseError(lines[li].number, off + 1, "bad generator name");
          for (auto& vn : S->names())
            if (vn == g) throw ParseError(lines[li].number, off + 1, "generator name '" + g + "' shadows a variable");
          if (gens.count(g)) throw ParseError(lines[li].number, off + 1, "duplicate generator '" + g + "'");
          int d = 0;
          if (colon != std::string::npos) {
            std::string ds = trim(piece.substr(colon + 1));
            try {
              std::size_t used = 0;
              d = std::stoi(ds, &used);
              if (used != ds.size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
              throw ParseError(lines[li].number, off + static_cast<int>(colon) + 2, "bad generator degree");
            }
          }
          gens[g] = degrees.size();
          degrees.push_back(d);
        }
      } else if (k2 == "rels") {
        if (!haveGens) throw ParseError(lines[li].number, c2, "'rels' before 'gens'");
        for (auto& [piece, off] : detail::splitCommas(r2, rc2)) {
          detail::ExprParser ep(piece, lines[li].number, off, S, gens);
          auto e = ep.parse();
          if (!e.parts[0].isZero()) throw ParseError(lines[li].number, off + 1, "relation has a term without a generator");
          Vec v;
          std::optional<int> deg;
          for (std::size_t g = 0; g < degrees.size(); ++g)
            for (auto& [m, c] : e.parts[g + 1].terms()) {
              int td = m.degree() + degrees[g];
              if (deg && *deg != td) throw ParseError(lines[li].number, off + 1, "relation is not homogeneous");
              deg = td;
              v.push_back({m, static_cast<std::uint32_t>(g), c});
            }
          if (!deg) continue;
          vec::sortCombine(v, S->order(), S->field());
          relDeg.push_back(*deg);
          rels.push_back(std::move(v));
        }
      } else {
        break;
      }
      ++li;
    }
    if (!haveGens) throw ParseError(moduleLine, 1, "module '" + name + "' has no 'gens' line");
    inst.add(name, GradedModule(inst.ring, degrees, PolyMatrix(S, degrees, relDeg, rels)));
  }
  return inst;
}

/// Text form accepted by parseInstanceFile; generators are named e0, e1, ...
inline std::string serializeInstance(const Instance& inst) {
  std::ostringstream os;
  const auto& ring = *inst.ring;
  const auto& S = ring.cover();
  os << "field " << ring.field().characteristic() << "\n";
  os << "ring";
  for (auto& n : S->names()) os << " " << n;
  os << "\n";
  if (!ring.idealGenerators().empty()) {
    os << "ideal ";
    for (std::size_t i = 0; i < ring.idealGenerators().size(); ++i) os << (i ? ", " : "") << ring.idealGenerators()[i].toString();
    os << "\n";
  }
  for (auto& [name, M] : inst.modules) {
    os << "module " << name << "\n gens ";
    for (std::size_t g = 0; g < M.rank(); ++g) os << (g ? ", " : "") << "e" << g << ":" << M.degrees()[g];
    os << "\n";
    const auto& A = M.relations();
    if (A.cols() == 0) continue;
    os << " rels ";
    for (std::size_t j = 0; j < A.cols(); ++j) {
      if (j) os << ", ";
      const Vec& c = A.column(j);
      bool first = true;
      for (std::size_t i = 0; i < c.size();) {
        std::size_t k = i;
        std::vector<Polynomial::TermType> ts;
        while (k < c.size() && c[k].comp == c[i].comp) {
          ts.emplace_back(c[k].m, c[k].coef);
          ++k;
        }
        os << (first ? "" : " + ") << "(" << Polynomial::fromTerms(S, ts).toString() << ")*e" << c[i].comp;
        first = false;
        i = k;
      }
    }
    os << "\n";
  }
  return os.str();
}

/// Structural equality used for round-trip checks.
inline bool sameInstance(const Instance& a, const Instance& b) {
  if (!a.ring->sameAs(*b.ring) || a.modules.size() != b.modules.size()) return false;
  for (auto& [n, M] : a.modules) {
    auto it = b.modules.find(n);
    if (it == b.modules.end()) return false;
    const GradedModule& N = it->second;
    if (M.degrees() != N.degrees() || !(M.relations() == N.relations().withRing(M.ring()->cover()))) return false;
  }
  return true;
}

}  // namespace homolab
