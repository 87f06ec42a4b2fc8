#include "hsf/parse.hpp"

#include <cctype>

namespace hsf {

namespace {

class Parser {
 public:
  Parser(std::string_view s, const RingPtr& r) : s_(s), r_(r) {}

  Poly run() {
    skip();
    if (pos_ >= s_.size()) fail("empty input");
    Poly f = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("parse error at position " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly f = term();
    for (;;) {
      if (eat('+')) f = f + term();
      else if (eat('-')) f = f - term();
      else return f;
    }
  }

  Poly term() {
    Poly f = unary();
    for (;;) {
      skip();
      if (eat('*')) {
        f = f * unary();
      } else if (eat('/')) {
        Poly g = unary();
        if (!g.is_constant()) fail("division by a non-constant");
        if (g.is_zero()) fail("division by zero modulo " + std::to_string(r_->field().p()));
        f = f.scaled(r_->field().inv(g.lc()));
      } else {
        skip();
        if (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '('))
          fail("implicit multiplication is not accepted");
        return f;
      }
    }
  }

  Poly unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Poly power() {
    Poly b = atom();
    if (eat('^')) {
      skip();
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (st == pos_) fail("exponent must be a nonnegative integer");
      if (pos_ - st > 4) fail("exponent too large");
      int e = std::stoi(std::string(s_.substr(st, pos_ - st)));
      return b.pow(e);
    }
    return b;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly f = expr();
      if (!eat(')')) fail("missing ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      u64 v = 0;
      u32 p = r_->field().p();
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        v = (v * 10 + static_cast<u64>(s_[pos_] - '0')) % p;
        ++pos_;
      }
      return Poly::constant(r_, static_cast<u32>(v));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(st, pos_ - st));
      int i = r_->var_index(name);
      if (i < 0) {
        pos_ = st;
        fail("unknown variable '" + name + "'");
      }
      return Poly::var(r_, i);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  const RingPtr& r_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const RingPtr& ring) { return Parser(text, ring).run(); }

std::vector<Poly> parse_polys(const std::vector<std::string>& texts, const RingPtr& ring) {
  std::vector<Poly> out;
  out.reserve(texts.size());
  for (auto& t : texts) out.push_back(parse_poly(t, ring));
  return out;
}

}  // namespace hsf
