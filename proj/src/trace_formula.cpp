#include "bcfind/trace_formula.hpp"

namespace bcfind {

namespace {

FormulaRef wrap_next(FormulaRef f, std::size_t depth) {
  for (std::size_t i = 0; i < depth; ++i) f = Formula::next(f);
  return f;
}

// Reads a formula as a cube: true, a literal, or a left-folded conjunction
// of literals.
std::optional<Cube> cube_from_formula(FormulaRef f) {
  if (f->op() == Op::True) return Cube();
  std::vector<FormulaRef> terms;
  while (f->op() == Op::And) {
    terms.push_back(f->rhs());
    f = f->lhs();
  }
  terms.push_back(f);
  Cube c;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    FormulaRef t = *it;
    if (t->op() == Op::Atom) {
      if (!c.insert(t->atom_name(), true)) return std::nullopt;
    } else if (t->op() == Op::Not && t->lhs()->op() == Op::Atom) {
      if (!c.insert(t->lhs()->atom_name(), false)) return std::nullopt;
    } else {
      return std::nullopt;
    }
  }
  return c;
}

}  // namespace

FormulaRef trace_formula_to_ltl(const TraceFormula& t) {
  std::vector<FormulaRef> terms;
  for (std::size_t i = 0; i < t.prefix.size(); ++i) {
    terms.push_back(wrap_next(t.prefix[i].to_formula(), i));
  }
  terms.push_back(
      wrap_next(Formula::globally(t.loop.to_formula()), t.prefix.size()));
  return conj_all(terms);
}

std::optional<TraceFormula> trace_formula_from_ltl(FormulaRef f) {
  // Position terms other than the first start with X (or G for an empty
  // prefix), which separates them from the Ands inside a cube.
  auto is_position_term = [](FormulaRef t) {
    return t->op() == Op::Next || t->op() == Op::Globally;
  };
  std::vector<FormulaRef> terms;
  while (f->op() == Op::And && is_position_term(f->rhs())) {
    terms.push_back(f->rhs());
    f = f->lhs();
  }
  terms.push_back(f);
  std::reverse(terms.begin(), terms.end());

  TraceFormula out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    FormulaRef t = terms[i];
    std::size_t depth = 0;
    while (t->op() == Op::Next) {
      t = t->lhs();
      ++depth;
    }
    if (depth != i) return std::nullopt;
    if (i + 1 == terms.size()) {
      if (t->op() != Op::Globally) return std::nullopt;
      auto cube = cube_from_formula(t->lhs());
      if (!cube) return std::nullopt;
      out.loop = *cube;
    } else {
      auto cube = cube_from_formula(t);
      if (!cube) return std::nullopt;
      out.prefix.push_back(*cube);
    }
  }
  return out;
}

}  // namespace bcfind
