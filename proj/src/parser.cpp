#include <cctype>
#include <optional>
#include <string>

#include "bcfind/formula.hpp"

namespace bcfind {

namespace {

enum class Tok {
  End,
  LParen,
  RParen,
  Not,
  And,
  Or,
  Implies,
  Next,
  Until,
  Release,
  Globally,
  Finally,
  True,
  False,
  Ident,
};

const char* tok_name(Tok t) {
  switch (t) {
    case Tok::End: return "end of input";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Not: return "'!'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Next: return "'X'";
    case Tok::Until: return "'U'";
    case Tok::Release: return "'R'";
    case Tok::Globally: return "'G'";
    case Tok::Finally: return "'F'";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Ident: return "identifier";
  }
  return "?";
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) { advance(); }

  FormulaRef run() {
    FormulaRef f = parse_implies();
    expect(Tok::End, "expected end of input");
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& what) {
    std::string where = tok_ == Tok::End
                            ? "at end of input"
                            : "at '" + tok_text_ + "'";
    throw ParseError("syntax error " + where + ": " + what, tok_line_,
                     tok_col_);
  }

  void expect(Tok t, const std::string& what) {
    if (tok_ != t) fail(what);
  }

  void advance() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      bump();
    }
    tok_line_ = line_;
    tok_col_ = col_;
    if (pos_ >= text_.size()) {
      tok_ = Tok::End;
      tok_text_.clear();
      return;
    }
    char c = text_[pos_];
    if (c == '(') { tok_ = Tok::LParen; take(1); return; }
    if (c == ')') { tok_ = Tok::RParen; take(1); return; }
    if (c == '!') { tok_ = Tok::Not; take(1); return; }
    if (c == '&') { tok_ = Tok::And; take(1); return; }
    if (c == '|') { tok_ = Tok::Or; take(1); return; }
    if (c == '-') {
      if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '>') {
        tok_ = Tok::Implies;
        take(2);
        return;
      }
      tok_text_ = "-";
      fail("expected '->'");
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_')) {
        bump();
      }
      tok_text_ = std::string(text_.substr(start, pos_ - start));
      if (tok_text_ == "true") tok_ = Tok::True;
      else if (tok_text_ == "false") tok_ = Tok::False;
      else if (tok_text_ == "X") tok_ = Tok::Next;
      else if (tok_text_ == "U") tok_ = Tok::Until;
      else if (tok_text_ == "R") tok_ = Tok::Release;
      else if (tok_text_ == "G") tok_ = Tok::Globally;
      else if (tok_text_ == "F") tok_ = Tok::Finally;
      else tok_ = Tok::Ident;
      return;
    }
    tok_text_ = std::string(1, c);
    fail("unexpected character");
  }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void take(std::size_t n) {
    tok_text_ = std::string(text_.substr(pos_, n));
    for (std::size_t i = 0; i < n; ++i) bump();
  }

  // '->' is right-associative and loosest.
  FormulaRef parse_implies() {
    FormulaRef lhs = parse_or();
    if (tok_ == Tok::Implies) {
      advance();
      return Formula::implies(lhs, parse_implies());
    }
    return lhs;
  }

  FormulaRef parse_or() {
    FormulaRef lhs = parse_and();
    while (tok_ == Tok::Or) {
      advance();
      lhs = Formula::disj(lhs, parse_and());
    }
    return lhs;
  }

  FormulaRef parse_and() {
    FormulaRef lhs = parse_until();
    while (tok_ == Tok::And) {
      advance();
      lhs = Formula::conj(lhs, parse_until());
    }
    return lhs;
  }

  // U and R share a level, right-associative, tighter than &.
  FormulaRef parse_until() {
    FormulaRef lhs = parse_unary();
    if (tok_ == Tok::Until) {
      advance();
      return Formula::until(lhs, parse_until());
    }
    if (tok_ == Tok::Release) {
      advance();
      return Formula::release(lhs, parse_until());
    }
    return lhs;
  }

  FormulaRef parse_unary() {
    switch (tok_) {
      case Tok::Not:
        advance();
        return Formula::negation(parse_unary());
      case Tok::Next:
        advance();
        return Formula::next(parse_unary());
      case Tok::Globally:
        advance();
        return Formula::globally(parse_unary());
      case Tok::Finally:
        advance();
        return Formula::finally(parse_unary());
      default:
        return parse_primary();
    }
  }

  FormulaRef parse_primary() {
    switch (tok_) {
      case Tok::True:
        advance();
        return Formula::tt();
      case Tok::False:
        advance();
        return Formula::ff();
      case Tok::Ident: {
        FormulaRef f = Formula::atom(tok_text_);
        advance();
        return f;
      }
      case Tok::LParen: {
        advance();
        FormulaRef f = parse_implies();
        expect(Tok::RParen, "expected ')'");
        advance();
        return f;
      }
      default:
        fail(std::string("expected formula, got ") + tok_name(tok_));
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Tok tok_ = Tok::End;
  std::string tok_text_;
  int tok_line_ = 1;
  int tok_col_ = 1;
};

}  // namespace

FormulaRef parse(std::string_view text) { return Parser(text).run(); }

}  // namespace bcfind
