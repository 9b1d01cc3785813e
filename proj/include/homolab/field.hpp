#pragma once

#include <cstdint>
#include <string>

#include "error.hpp"

namespace homolab {

inline bool isPrime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// The prime field F_p, 2 <= p < 2^31. Elements are canonical residues in [0, p).
class PrimeField {
public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint64_t p = 32003) : p_(static_cast<std::uint32_t>(p)) {
    if (p >= (1ULL << 31) || !isPrime(p))
      throw StructuralError("field characteristic must be a prime below 2^31, got " + std::to_string(p));
  }

  std::uint32_t characteristic() const { return p_; }

  Element add(Element a, Element b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Element pow(Element a, std::uint64_t e) const {
    std::uint64_t r = 1, base = a;
    while (e) {
      if (e & 1) r = r * base % p_;
      base = base * base % p_;
      e >>= 1;
    }
    return static_cast<Element>(r);
  }
  Element inv(Element a) const {
    if (a == 0) throw StructuralError("inverse of zero in F_" + std::to_string(p_));
    // extended Euclid
    std::int64_t t = 0, newT = 1, r = p_, newR = a;
    while (newR != 0) {
      std::int64_t q = r / newR;
      std::int64_t tmp = t - q * newT;
      t = newT;
      newT = tmp;
      tmp = r - q * newR;
      r = newR;
      newR = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<Element>(t);
  }
  Element fromInt(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Element>(r);
  }
  /// Symmetric representative in (-p/2, p/2], used for printing.
  std::int64_t toSigned(Element a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
  std::uint32_t p_;
};

}  // namespace homolab
