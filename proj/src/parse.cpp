#include <cctype>
#include <set>

#include "gensample/core.hpp"
#include "gensample/error.hpp"

namespace gensample {
namespace {

class Parser {
 public:
  Parser(const std::string& text, int k) : s_(text), k_(k) {}

  Conjunction run() {
    std::vector<Literal> lits;
    lits.push_back(clause());
    skip();
    while (pos_ < s_.size()) {
      expect('&');
      lits.push_back(clause());
      skip();
    }
    return Conjunction(k_, std::move(lits));
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void expect(char c) {
    skip();
    if (pos_ >= s_.size()) fail(std::string("expected '") + c + "', found end of input");
    if (s_[pos_] != c) fail(std::string("expected '") + c + "', found '" + s_[pos_] + "'");
    ++pos_;
  }

  Literal clause() {
    skip();
    const std::size_t start = pos_;
    bool positive = true;
    if (pos_ < s_.size() && s_[pos_] == '!') {
      positive = false;
      ++pos_;
    }
    expect('R');
    expect('(');
    std::vector<Term> slots{term()};
    skip();
    while (pos_ < s_.size() && s_[pos_] == ',') {
      ++pos_;
      slots.push_back(term());
      skip();
    }
    expect(')');
    if (static_cast<int>(slots.size()) != k_)
      throw ParseError("arity mismatch: literal has " + std::to_string(slots.size()) +
                           " slots, expected " + std::to_string(k_),
                       start);
    std::set<Term> seen(slots.begin(), slots.end());
    if (seen.size() != slots.size()) throw ParseError("repeated slot in literal", start);
    return make_literal(positive, std::move(slots), k_);
  }

  Term term() {
    skip();
    if (pos_ >= s_.size()) fail("expected a term, found end of input");
    const char head = s_[pos_];
    const std::size_t start = pos_;
    ++pos_;
    if (head == 'x') {
      std::size_t b = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (b == pos_) fail("expected variable index");
      const std::string digits = s_.substr(b, pos_ - b);
      if (digits.size() > 9) throw ParseError("variable index too large", b);
      int idx = std::stoi(digits);
      if (idx < 1) throw ParseError("variable index must be positive", b);
      return Term::var(idx);
    }
    if (head == 'c' || head == 'm') {
      std::size_t b = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      if (b == pos_) fail("expected parameter name");
      std::string name = s_.substr(start, pos_ - start);
      return head == 'c' ? Term::ctx(std::move(name)) : Term::elem(std::move(name));
    }
    pos_ = start;
    fail(std::string("unexpected character '") + head + "' in term");
  }

  const std::string& s_;
  int k_;
  std::size_t pos_ = 0;
};

}  // namespace

Conjunction parse_formula(const std::string& text, int k) {
  if (k < 2) throw ModelError("arity must be at least 2");
  return Parser(text, k).run();
}

}  // namespace gensample
