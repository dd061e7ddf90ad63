#include "lyhall/term_io.hpp"

#include <cctype>

namespace lyhall {

namespace {

class Parser {
 public:
  Parser(TermBank& bank, const std::string& in) : bank_(bank), in_(in) {}

  TermId run() {
    TermId t = term();
    skip_ws();
    if (pos_ != in_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < in_.size() && std::isspace(static_cast<unsigned char>(in_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < in_.size() && in_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  TermId term() {
    TermId t = atom();
    while (eat('*')) t = bank_.star(t, atom());
    return t;
  }

  TermId atom() {
    skip_ws();
    if (pos_ >= in_.size()) fail("unexpected end of input");
    char c = in_[pos_];
    if (c == '(') {
      ++pos_;
      TermId t = term();
      expect(')');
      return t;
    }
    if (c == '[') {
      ++pos_;
      TermId y = term();
      expect(',');
      TermId z = term();
      expect(',');
      TermId w = term();
      expect(']');
      return bank_.bracket(y, z, w);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return ident();
    fail("expected identifier, '(' or '['");
  }

  TermId ident() {
    size_t start = pos_;
    while (pos_ < in_.size() &&
           (std::isalnum(static_cast<unsigned char>(in_[pos_])) || in_[pos_] == '_'))
      ++pos_;
    std::string name = in_.substr(start, pos_ - start);
    auto rank = bank_.generators().rank_of(name);
    if (!rank) throw ParseError(start, "unknown generator '" + name + "'");
    return bank_.leaf(*rank);
  }

  TermBank& bank_;
  const std::string& in_;
  size_t pos_ = 0;
};

}  // namespace

TermId parse_term(TermBank& bank, const std::string& input) {
  return Parser(bank, input).run();
}

std::string print_term(const TermBank& bank, TermId t) {
  switch (bank.kind(t)) {
    case Kind::Leaf:
      return bank.generators().name(bank.leaf_rank(t));
    case Kind::Star:
      return "(" + print_term(bank, bank.child(t, 0)) + "*" +
             print_term(bank, bank.child(t, 1)) + ")";
    case Kind::Bracket:
      return "[" + print_term(bank, bank.child(t, 0)) + "," +
             print_term(bank, bank.child(t, 1)) + "," +
             print_term(bank, bank.child(t, 2)) + "]";
  }
  throw std::logic_error("unreachable");
}

}  // namespace lyhall
