#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bcfind {

enum class Op : std::uint8_t {
  True,
  False,
  Atom,
  Not,
  And,
  Or,
  Implies,
  Next,
  Until,
  Release,
  Globally,
  Finally,
};

class Formula;

/// Formulas are interned: structurally equal formulas share one node, so
/// pointer equality is structural equality. Nodes live for the whole process.
using FormulaRef = const Formula*;

class Formula {
public:
  Op op() const { return op_; }
  const std::string& atom_name() const { return name_; }
  FormulaRef lhs() const { return lhs_; }
  FormulaRef rhs() const { return rhs_; }

  /// Creation index; stable within a run, used for canonical orderings.
  std::uint32_t id() const { return id_; }

  bool is_leaf() const {
    return op_ == Op::True || op_ == Op::False || op_ == Op::Atom;
  }
  bool is_literal() const {
    return op_ == Op::Atom || (op_ == Op::Not && lhs_->op() == Op::Atom);
  }

  static FormulaRef tt();
  static FormulaRef ff();
  static FormulaRef atom(std::string_view name);
  static FormulaRef negation(FormulaRef a);
  static FormulaRef conj(FormulaRef a, FormulaRef b);
  static FormulaRef disj(FormulaRef a, FormulaRef b);
  static FormulaRef implies(FormulaRef a, FormulaRef b);
  static FormulaRef next(FormulaRef a);
  static FormulaRef until(FormulaRef a, FormulaRef b);
  static FormulaRef release(FormulaRef a, FormulaRef b);
  static FormulaRef globally(FormulaRef a);
  static FormulaRef finally(FormulaRef a);

private:
  Formula(Op op, std::string name, FormulaRef lhs, FormulaRef rhs,
          std::uint32_t id)
      : op_(op), name_(std::move(name)), lhs_(lhs), rhs_(rhs), id_(id) {}

  static FormulaRef intern(Op op, std::string_view name, FormulaRef lhs,
                           FormulaRef rhs);

  Op op_;
  std::string name_;
  FormulaRef lhs_;
  FormulaRef rhs_;
  std::uint32_t id_;
};

struct ParseError : std::runtime_error {
  ParseError(std::string message, int line, int column)
      : std::runtime_error(std::move(message)), line(line), column(column) {}
  int line;
  int column;
};

/// Parses the concrete syntax `true false ! & | -> X U R G F` with
/// identifiers [a-zA-Z_][a-zA-Z0-9_]*. Precedence, tightest first:
/// unary {!, X, G, F}, then {U, R} (right-assoc), then & (left),
/// then | (left), then -> (right). Throws ParseError with position.
FormulaRef parse(std::string_view text);

/// Canonical printer: every compound child is parenthesized, so
/// parse(print(f)) == f structurally.
std::string print(FormulaRef f);

/// Negation normal form. Sugar (->, G, F) is desugared; negations end up
/// directly above atoms only.
FormulaRef nnf(FormulaRef f);

/// Number of AST nodes after desugaring (G a counts as false R a, etc.).
std::size_t formula_size(FormulaRef f);

/// Sorted, de-duplicated atom names occurring in f.
std::vector<std::string> collect_atoms(FormulaRef f);

/// ¬f with only trivial folding (constants, double negation).
FormulaRef smart_neg(FormulaRef f);

/// ¬f pushed inward just far enough that the root is not a negation
/// (except over an atom). Subformulas keep their sugar, so printed output
/// stays close to the source formula: ¬G x becomes F (¬x), not true U (...).
FormulaRef negated_root_form(FormulaRef f);

/// Conjunction of a list; empty list is true, singleton is the element.
FormulaRef conj_all(const std::vector<FormulaRef>& fs);
FormulaRef disj_all(const std::vector<FormulaRef>& fs);

}  // namespace bcfind
