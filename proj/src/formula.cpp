#include "bcfind/formula.hpp"

#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <tuple>
#include <unordered_map>

namespace bcfind {

namespace {

struct NodeKey {
  Op op;
  std::string name;
  FormulaRef lhs;
  FormulaRef rhs;
  bool operator<(const NodeKey& o) const {
    return std::tie(op, name, lhs, rhs) < std::tie(o.op, o.name, o.lhs, o.rhs);
  }
};

struct Interner {
  std::mutex mutex;
  std::deque<Formula> arena;
  std::map<NodeKey, FormulaRef> table;
};

Interner& interner() {
  static Interner instance;
  return instance;
}

}  // namespace

FormulaRef Formula::intern(Op op, std::string_view name, FormulaRef lhs,
                           FormulaRef rhs) {
  Interner& in = interner();
  std::lock_guard<std::mutex> lock(in.mutex);
  NodeKey key{op, std::string(name), lhs, rhs};
  auto it = in.table.find(key);
  if (it != in.table.end()) return it->second;
  auto id = static_cast<std::uint32_t>(in.arena.size());
  in.arena.push_back(Formula(op, key.name, lhs, rhs, id));
  FormulaRef ref = &in.arena.back();
  in.table.emplace(std::move(key), ref);
  return ref;
}

FormulaRef Formula::tt() { return intern(Op::True, {}, nullptr, nullptr); }
FormulaRef Formula::ff() { return intern(Op::False, {}, nullptr, nullptr); }
FormulaRef Formula::atom(std::string_view name) {
  return intern(Op::Atom, name, nullptr, nullptr);
}
FormulaRef Formula::negation(FormulaRef a) {
  return intern(Op::Not, {}, a, nullptr);
}
FormulaRef Formula::conj(FormulaRef a, FormulaRef b) {
  return intern(Op::And, {}, a, b);
}
FormulaRef Formula::disj(FormulaRef a, FormulaRef b) {
  return intern(Op::Or, {}, a, b);
}
FormulaRef Formula::implies(FormulaRef a, FormulaRef b) {
  return intern(Op::Implies, {}, a, b);
}
FormulaRef Formula::next(FormulaRef a) {
  return intern(Op::Next, {}, a, nullptr);
}
FormulaRef Formula::until(FormulaRef a, FormulaRef b) {
  return intern(Op::Until, {}, a, b);
}
FormulaRef Formula::release(FormulaRef a, FormulaRef b) {
  return intern(Op::Release, {}, a, b);
}
FormulaRef Formula::globally(FormulaRef a) {
  return intern(Op::Globally, {}, a, nullptr);
}
FormulaRef Formula::finally(FormulaRef a) {
  return intern(Op::Finally, {}, a, nullptr);
}

namespace {

void render(FormulaRef f, std::string& out);

void render_wrapped(FormulaRef f, std::string& out) {
  if (f->is_leaf()) {
    render(f, out);
  } else {
    out += '(';
    render(f, out);
    out += ')';
  }
}

void render(FormulaRef f, std::string& out) {
  switch (f->op()) {
    case Op::True:
      out += "true";
      return;
    case Op::False:
      out += "false";
      return;
    case Op::Atom:
      out += f->atom_name();
      return;
    case Op::Not:
      out += '!';
      render_wrapped(f->lhs(), out);
      return;
    case Op::Next:
      out += "X ";
      render_wrapped(f->lhs(), out);
      return;
    case Op::Globally:
      out += "G ";
      render_wrapped(f->lhs(), out);
      return;
    case Op::Finally:
      out += "F ";
      render_wrapped(f->lhs(), out);
      return;
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Until:
    case Op::Release: {
      const char* sep = nullptr;
      switch (f->op()) {
        case Op::And: sep = " & "; break;
        case Op::Or: sep = " | "; break;
        case Op::Implies: sep = " -> "; break;
        case Op::Until: sep = " U "; break;
        default: sep = " R "; break;
      }
      render_wrapped(f->lhs(), out);
      out += sep;
      render_wrapped(f->rhs(), out);
      return;
    }
  }
}

}  // namespace

std::string print(FormulaRef f) {
  std::string out;
  render(f, out);
  return out;
}

namespace {

// polarity=true computes nnf(f), polarity=false computes nnf(¬f).
FormulaRef nnf_rec(FormulaRef f, bool polarity,
                   std::map<std::pair<FormulaRef, bool>, FormulaRef>& memo) {
  auto key = std::make_pair(f, polarity);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  FormulaRef result = nullptr;
  auto rec = [&](FormulaRef g, bool pol) { return nnf_rec(g, pol, memo); };
  switch (f->op()) {
    case Op::True:
      result = polarity ? Formula::tt() : Formula::ff();
      break;
    case Op::False:
      result = polarity ? Formula::ff() : Formula::tt();
      break;
    case Op::Atom:
      result = polarity ? f : Formula::negation(f);
      break;
    case Op::Not:
      result = rec(f->lhs(), !polarity);
      break;
    case Op::And:
      result = polarity
                   ? Formula::conj(rec(f->lhs(), true), rec(f->rhs(), true))
                   : Formula::disj(rec(f->lhs(), false), rec(f->rhs(), false));
      break;
    case Op::Or:
      result = polarity
                   ? Formula::disj(rec(f->lhs(), true), rec(f->rhs(), true))
                   : Formula::conj(rec(f->lhs(), false), rec(f->rhs(), false));
      break;
    case Op::Implies:
      result = polarity
                   ? Formula::disj(rec(f->lhs(), false), rec(f->rhs(), true))
                   : Formula::conj(rec(f->lhs(), true), rec(f->rhs(), false));
      break;
    case Op::Next:
      result = Formula::next(rec(f->lhs(), polarity));
      break;
    case Op::Until:
      result = polarity
                   ? Formula::until(rec(f->lhs(), true), rec(f->rhs(), true))
                   : Formula::release(rec(f->lhs(), false),
                                      rec(f->rhs(), false));
      break;
    case Op::Release:
      result = polarity
                   ? Formula::release(rec(f->lhs(), true), rec(f->rhs(), true))
                   : Formula::until(rec(f->lhs(), false), rec(f->rhs(), false));
      break;
    case Op::Globally:
      result = polarity
                   ? Formula::release(Formula::ff(), rec(f->lhs(), true))
                   : Formula::until(Formula::tt(), rec(f->lhs(), false));
      break;
    case Op::Finally:
      result = polarity
                   ? Formula::until(Formula::tt(), rec(f->lhs(), true))
                   : Formula::release(Formula::ff(), rec(f->lhs(), false));
      break;
  }
  memo.emplace(key, result);
  return result;
}

}  // namespace

FormulaRef nnf(FormulaRef f) {
  std::map<std::pair<FormulaRef, bool>, FormulaRef> memo;
  return nnf_rec(f, true, memo);
}

std::size_t formula_size(FormulaRef f) {
  switch (f->op()) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return 1;
    case Op::Not:
    case Op::Next:
      return 1 + formula_size(f->lhs());
    case Op::Globally:
    case Op::Finally:
      // false R a / true U a
      return 2 + formula_size(f->lhs());
    case Op::Implies:
      // !a | b
      return 2 + formula_size(f->lhs()) + formula_size(f->rhs());
    case Op::And:
    case Op::Or:
    case Op::Until:
    case Op::Release:
      return 1 + formula_size(f->lhs()) + formula_size(f->rhs());
  }
  return 0;
}

namespace {

void collect_atoms_rec(FormulaRef f, std::set<std::string>& out) {
  if (f->op() == Op::Atom) {
    out.insert(f->atom_name());
    return;
  }
  if (f->lhs()) collect_atoms_rec(f->lhs(), out);
  if (f->rhs()) collect_atoms_rec(f->rhs(), out);
}

}  // namespace

std::vector<std::string> collect_atoms(FormulaRef f) {
  std::set<std::string> atoms;
  collect_atoms_rec(f, atoms);
  return std::vector<std::string>(atoms.begin(), atoms.end());
}

FormulaRef smart_neg(FormulaRef f) {
  switch (f->op()) {
    case Op::True:
      return Formula::ff();
    case Op::False:
      return Formula::tt();
    case Op::Not:
      return f->lhs();
    default:
      return Formula::negation(f);
  }
}

FormulaRef negated_root_form(FormulaRef f) {
  FormulaRef c = smart_neg(f);
  while (c->op() == Op::Not && c->lhs()->op() != Op::Atom) {
    FormulaRef x = c->lhs();
    switch (x->op()) {
      case Op::True:
        c = Formula::ff();
        break;
      case Op::False:
        c = Formula::tt();
        break;
      case Op::Not:
        c = x->lhs();
        break;
      case Op::And:
        c = Formula::disj(smart_neg(x->lhs()), smart_neg(x->rhs()));
        break;
      case Op::Or:
        c = Formula::conj(smart_neg(x->lhs()), smart_neg(x->rhs()));
        break;
      case Op::Implies:
        c = Formula::conj(x->lhs(), smart_neg(x->rhs()));
        break;
      case Op::Next:
        c = Formula::next(smart_neg(x->lhs()));
        break;
      case Op::Until:
        c = Formula::release(smart_neg(x->lhs()), smart_neg(x->rhs()));
        break;
      case Op::Release:
        c = Formula::until(smart_neg(x->lhs()), smart_neg(x->rhs()));
        break;
      case Op::Globally:
        c = Formula::finally(smart_neg(x->lhs()));
        break;
      case Op::Finally:
        c = Formula::globally(smart_neg(x->lhs()));
        break;
      case Op::Atom:
        return c;  // unreachable, guarded by the loop condition
    }
  }
  return c;
}

FormulaRef conj_all(const std::vector<FormulaRef>& fs) {
  if (fs.empty()) return Formula::tt();
  FormulaRef acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::conj(acc, fs[i]);
  return acc;
}

FormulaRef disj_all(const std::vector<FormulaRef>& fs) {
  if (fs.empty()) return Formula::ff();
  FormulaRef acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::disj(acc, fs[i]);
  return acc;
}

}  // namespace bcfind
