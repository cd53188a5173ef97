#include "bcfind/solver.hpp"

#include <cassert>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "bcfind/product.hpp"

namespace bcfind {

namespace {

// Truth values of one subformula across the |stem|+|loop| distinct
// positions, chunked into 64-bit words.
class Bits {
public:
  Bits() = default;
  Bits(std::size_t n, bool value) : n_(n), words_((n + 63) / 64, 0) {
    if (value) {
      for (auto& w : words_) w = ~0ULL;
      trim();
    }
  }

  bool get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  void set(std::size_t i) { words_[i / 64] |= 1ULL << (i % 64); }

  Bits operator&(const Bits& o) const { return zip(o, [](auto a, auto b) { return a & b; }); }
  Bits operator|(const Bits& o) const { return zip(o, [](auto a, auto b) { return a | b; }); }
  Bits operator~() const {
    Bits r = *this;
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }
  bool operator==(const Bits&) const = default;

  // r[i] = this[succ(i)] where succ wraps the last position to loop_start.
  Bits shift_succ(std::size_t loop_start) const {
    Bits r(n_, false);
    for (std::size_t i = 0; i + 1 < n_; ++i) {
      if (get(i + 1)) r.set(i);
    }
    if (n_ > 0 && get(loop_start)) r.set(n_ - 1);
    return r;
  }

private:
  template <typename F>
  Bits zip(const Bits& o, F f) const {
    Bits r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      r.words_[i] = f(words_[i], o.words_[i]);
    }
    return r;
  }
  void trim() {
    if (n_ % 64) words_.back() &= (1ULL << (n_ % 64)) - 1;
  }

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

class LassoEvaluator {
public:
  explicit LassoEvaluator(const LassoTrace& w)
      : w_(w), stem_(w.stem.size()), total_(w.stem.size() + w.loop.size()) {}

  bool eval(FormulaRef f) { return values(f).get(0); }

private:
  const Cube& letter(std::size_t i) const {
    return i < stem_ ? w_.stem[i] : w_.loop[i - stem_];
  }

  Bits fixpoint(const Bits& a, const Bits& b, bool least) {
    // least: V = b | (a & X V) from ⊥; greatest: V = b & (a | X V) from ⊤.
    Bits v(total_, !least);
    while (true) {
      Bits next = least ? (b | (a & v.shift_succ(stem_)))
                        : (b & (a | v.shift_succ(stem_)));
      if (next == v) return v;
      v = std::move(next);
    }
  }

  const Bits& values(FormulaRef f) {
    auto it = memo_.find(f);
    if (it != memo_.end()) return it->second;
    Bits out;
    switch (f->op()) {
      case Op::True:
        out = Bits(total_, true);
        break;
      case Op::False:
        out = Bits(total_, false);
        break;
      case Op::Atom:
        out = Bits(total_, false);
        for (std::size_t i = 0; i < total_; ++i) {
          if (letter(i).polarity(f->atom_name()) == 1) out.set(i);
        }
        break;
      case Op::Not:
        out = ~values(f->lhs());
        break;
      case Op::And:
        out = values(f->lhs()) & values(f->rhs());
        break;
      case Op::Or:
        out = values(f->lhs()) | values(f->rhs());
        break;
      case Op::Implies:
        out = ~values(f->lhs()) | values(f->rhs());
        break;
      case Op::Next:
        out = values(f->lhs()).shift_succ(stem_);
        break;
      case Op::Until:
        out = fixpoint(values(f->lhs()), values(f->rhs()), true);
        break;
      case Op::Release:
        out = fixpoint(values(f->lhs()), values(f->rhs()), false);
        break;
      case Op::Globally:
        out = fixpoint(Bits(total_, false), values(f->lhs()), false);
        break;
      case Op::Finally:
        out = fixpoint(Bits(total_, true), values(f->lhs()), true);
        break;
    }
    return memo_.emplace(f, std::move(out)).first->second;
  }

  const LassoTrace& w_;
  std::size_t stem_;
  std::size_t total_;
  std::unordered_map<FormulaRef, Bits> memo_;
};

}  // namespace

bool lasso_eval(const LassoTrace& w, FormulaRef f) {
  if (w.loop.empty()) {
    throw std::invalid_argument("lasso_eval requires a nonempty loop");
  }
  return LassoEvaluator(w).eval(f);
}

std::optional<LassoTrace> bounded_sat_search(FormulaRef f, int k) {
  if (k < 1) throw std::invalid_argument("bounded_sat_search requires k >= 1");
  std::vector<std::string> atoms = collect_atoms(f);
  std::size_t m = atoms.size();

  std::vector<Cube> letters;
  letters.reserve(1ULL << m);
  for (std::uint64_t bits = 0; bits < (1ULL << m); ++bits) {
    Cube letter;
    for (std::size_t j = 0; j < m; ++j) {
      letter.insert(atoms[j], (bits >> j) & 1);
    }
    letters.push_back(std::move(letter));
  }

  std::vector<std::size_t> word;
  LassoTrace lasso;
  for (int n = 1; n <= k; ++n) {
    for (int stem_len = 0; stem_len < n; ++stem_len) {
      int loop_len = n - stem_len;
      word.assign(n, 0);
      while (true) {
        lasso.stem.clear();
        lasso.loop.clear();
        for (int i = 0; i < stem_len; ++i) lasso.stem.push_back(letters[word[i]]);
        for (int i = stem_len; i < n; ++i) lasso.loop.push_back(letters[word[i]]);
        if (lasso_eval(lasso, f)) return lasso;
        int pos = n - 1;
        while (pos >= 0 && word[pos] + 1 == letters.size()) {
          word[pos] = 0;
          --pos;
        }
        if (pos < 0) break;
        ++word[pos];
      }
      (void)loop_len;
    }
  }
  return std::nullopt;
}

SatResult SatSolver::is_sat(FormulaRef f) {
  const BuchiAutomaton& aut = automaton(f);
  ++stats_.sat_calls;
  auto witness = accepting_lasso(aut);
  if (!witness) return SatResult{false, std::nullopt};
  if (!lasso_eval(*witness, f)) {
    throw std::logic_error("translation produced an invalid witness for: " +
                           print(f));
  }
  return SatResult{true, std::move(witness)};
}

bool SatSolver::implies(FormulaRef f, FormulaRef g) {
  return !is_sat(Formula::conj(f, smart_neg(g))).sat;
}

bool SatSolver::equiv(FormulaRef f, FormulaRef g) {
  return implies(f, g) && implies(g, f);
}

bool SatSolver::sat_product(const BuchiAutomaton& a, const BuchiAutomaton& b) {
  ++stats_.sat_calls;
  BuchiAutomaton prod = synthesis_product(a, b, {}, opt_);
  return !is_empty(prod);
}

const BuchiAutomaton& SatSolver::automaton(FormulaRef f) {
  auto it = cache_.find(f);
  if (it != cache_.end()) return *it->second;
  ++stats_.translations;
  auto aut = std::make_unique<BuchiAutomaton>(translate(f, opt_));
  return *cache_.emplace(f, std::move(aut)).first->second;
}

}  // namespace bcfind
