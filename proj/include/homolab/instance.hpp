#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "module.hpp"

namespace homolab {

struct Provenance {
  enum class Kind { Catalog, Random, User };
  Kind kind = Kind::User;
  std::uint64_t seed = 0;

  std::string toString() const {
    switch (kind) {
      case Kind::Catalog: return "catalog";
      case Kind::Random: return "random(" + std::to_string(seed) + ")";
      default: return "user";
    }
  }
};

/// A ring with named modules over it.
struct Instance {
  std::string id;
  QRingPtr ring;
  std::map<std::string, GradedModule> modules;
  Provenance provenance;

  const GradedModule& module(const std::string& name) const {
    auto it = modules.find(name);
    if (it == modules.end()) throw StructuralError("instance " + id + " has no module named " + name);
    return it->second;
  }

  void add(const std::string& name, GradedModule M) {
    if (!M.ring()->sameAs(*ring)) throw StructuralError("module " + name + " is over a different ring");
    modules.insert_or_assign(name, std::move(M));
  }
};

}  // namespace homolab
