#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "bcfind/formula.hpp"

namespace bcfind {

struct Literal {
  std::string atom;
  bool positive = true;
  auto operator<=>(const Literal&) const = default;
};

/// A consistent conjunction of literals. The empty cube is ⊤. Literals are
/// kept sorted by atom name; construction never stores both polarities of
/// one atom.
class Cube {
public:
  Cube() = default;

  /// nullopt when the literals clash.
  static std::optional<Cube> make(std::vector<Literal> literals);

  bool is_true() const { return literals_.empty(); }
  std::size_t size() const { return literals_.size(); }
  const std::vector<Literal>& literals() const { return literals_; }

  /// +1 positive, -1 negative, 0 absent.
  int polarity(const std::string& atom) const;

  /// Adds a literal; false (and no change) if the opposite polarity is
  /// already present.
  bool insert(const std::string& atom, bool positive);

  /// Conjunction of two cubes; nullopt when inconsistent.
  std::optional<Cube> conjoin(const Cube& other) const;

  /// Whether `letter` satisfies this cube, reading `letter` as a complete
  /// assignment where absent atoms are false.
  bool satisfied_by(const Cube& letter) const;

  FormulaRef to_formula() const;
  std::string to_string() const;  // "h & !p", "true" for ⊤

  bool operator==(const Cube&) const = default;
  auto operator<=>(const Cube&) const = default;

private:
  std::vector<Literal> literals_;
};

}  // namespace bcfind
