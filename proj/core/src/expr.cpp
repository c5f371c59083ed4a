#include "lusin/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <utility>

namespace lusin {
namespace {

using Fn = std::function<double(double)>;

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Fn run() {
    Fn e = expr();
    skip_ws();
    if (pos_ != text_.size()) {
      fail("unexpected trailing input");
    }
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw config_error("expression parse error at position " +
                       std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(c)) {
      fail(std::string("expected '") + c + "'");
    }
  }

  bool peek_word(const char* w) {
    skip_ws();
    std::size_t n = std::string(w).size();
    if (text_.compare(pos_, n, w) != 0) return false;
    std::size_t after = pos_ + n;
    if (after < text_.size() &&
        std::isalnum(static_cast<unsigned char>(text_[after]))) {
      return false;
    }
    pos_ = after;
    return true;
  }

  Fn expr() {
    Fn lhs = term();
    for (;;) {
      if (consume('+')) {
        Fn rhs = term();
        lhs = [lhs, rhs](double x) { return lhs(x) + rhs(x); };
      } else if (consume('-')) {
        Fn rhs = term();
        lhs = [lhs, rhs](double x) { return lhs(x) - rhs(x); };
      } else {
        return lhs;
      }
    }
  }

  Fn term() {
    Fn lhs = factor();
    while (consume('*')) {
      Fn rhs = factor();
      lhs = [lhs, rhs](double x) { return lhs(x) * rhs(x); };
    }
    return lhs;
  }

  Fn factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (consume('-')) {
      Fn f = factor();
      return [f](double x) { return -f(x); };
    }
    if (consume('(')) {
      Fn f = expr();
      expect(')');
      return f;
    }
    if (peek_word("abs")) {
      expect('(');
      Fn f = expr();
      expect(')');
      return [f](double x) { return std::fabs(f(x)); };
    }
    if (peek_word("min")) {
      expect('(');
      Fn a = expr();
      expect(',');
      Fn b = expr();
      expect(')');
      return [a, b](double x) { return std::min(a(x), b(x)); };
    }
    if (peek_word("x")) {
      return [](double x) { return x; };
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = text_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) fail("malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      return [v](double) { return v; };
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text) {
  return Expression(Parser(text).run(), text);
}

ValueOracle Expression::as_oracle(int dim) const {
  ValueOracle o;
  o.dim = dim;
  Fn fn = fn_;
  if (dim == 1) {
    o.value = [fn](Point p) { return fn(p[0]); };
  } else {
    o.value = [fn](Point p) { return fn(p.norm()); };
  }
  return o;
}

}  // namespace lusin
