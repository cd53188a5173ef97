#include "bcfind/cube.hpp"

#include <algorithm>

namespace bcfind {

std::optional<Cube> Cube::make(std::vector<Literal> literals) {
  Cube c;
  for (const Literal& l : literals) {
    if (!c.insert(l.atom, l.positive)) return std::nullopt;
  }
  return c;
}

int Cube::polarity(const std::string& atom) const {
  auto it = std::lower_bound(
      literals_.begin(), literals_.end(), atom,
      [](const Literal& l, const std::string& a) { return l.atom < a; });
  if (it == literals_.end() || it->atom != atom) return 0;
  return it->positive ? 1 : -1;
}

bool Cube::insert(const std::string& atom, bool positive) {
  auto it = std::lower_bound(
      literals_.begin(), literals_.end(), atom,
      [](const Literal& l, const std::string& a) { return l.atom < a; });
  if (it != literals_.end() && it->atom == atom) {
    return it->positive == positive;
  }
  literals_.insert(it, Literal{atom, positive});
  return true;
}

std::optional<Cube> Cube::conjoin(const Cube& other) const {
  Cube out = *this;
  for (const Literal& l : other.literals_) {
    if (!out.insert(l.atom, l.positive)) return std::nullopt;
  }
  return out;
}

bool Cube::satisfied_by(const Cube& letter) const {
  for (const Literal& l : literals_) {
    bool value = letter.polarity(l.atom) == 1;
    if (value != l.positive) return false;
  }
  return true;
}

FormulaRef Cube::to_formula() const {
  if (literals_.empty()) return Formula::tt();
  FormulaRef acc = nullptr;
  for (const Literal& l : literals_) {
    FormulaRef lit = Formula::atom(l.atom);
    if (!l.positive) lit = Formula::negation(lit);
    acc = acc ? Formula::conj(acc, lit) : lit;
  }
  return acc;
}

std::string Cube::to_string() const {
  if (literals_.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < literals_.size(); ++i) {
    if (i) out += " & ";
    if (!literals_[i].positive) out += '!';
    out += literals_[i].atom;
  }
  return out;
}

}  // namespace bcfind
