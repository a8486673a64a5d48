#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "lqw/cli.hpp"
#include "lqw/error.hpp"

namespace lqw::cli {

namespace {

constexpr const char* kGrammar =
    "expected a complex literal like 0.5, -2i, 0.5-0.5i, i/2, 1/sqrt(2) or (1+sqrt(2)i)/2";

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Complex parse() {
    skip_space();
    if (at_end()) fail("empty input");
    Complex v = expr();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return v;
  }

 private:
  Complex expr() {
    Complex v = term();
    for (;;) {
      skip_space();
      if (accept('+')) {
        v += term();
      } else if (accept('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  Complex term() {
    Complex v = unary();
    for (;;) {
      skip_space();
      if (accept('*')) {
        v *= unary();
      } else if (accept('/')) {
        const std::size_t at = pos_;
        const Complex d = unary();
        if (d == Complex{}) fail_at(at, "division by zero");
        v /= d;
      } else if (!at_end() && (text_[pos_] == '(' || std::isalpha(static_cast<unsigned char>(text_[pos_])))) {
        v *= primary();
      } else {
        return v;
      }
    }
  }

  Complex unary() {
    skip_space();
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  Complex primary() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Complex v = expr();
      skip_space();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      skip_space();
      if (!accept('(')) fail("expected '(' after sqrt");
      Complex v = expr();
      skip_space();
      if (!accept(')')) fail("expected ')'");
      return std::sqrt(v);
    }
    if (c == 'i') {
      ++pos_;
      return Complex{0.0, 1.0};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return Complex{number(), 0.0};
    fail(std::string("unexpected '") + c + "'");
  }

  double number() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    // exponent only when followed by digits, so "2e" is rejected rather than misread
    if (!at_end() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{} || res.ptr != last) fail_at(start, "malformed number");
    return value;
  }

  bool accept(char c) {
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() const { return pos_ >= text_.size(); }

  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }

  [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
    throw ParseError("cannot parse \"" + std::string(text_) + "\" at position " + std::to_string(at) +
                         ": " + what + " (" + kGrammar + ")",
                     at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Complex parse_complex(std::string_view text) { return Parser(text).parse(); }

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string format_complex(Complex value) {
  std::string s = format_double(value.real());
  const double im = value.imag();
  if (std::signbit(im)) {
    s += '-';
    s += format_double(-im);
  } else {
    s += '+';
    s += format_double(im);
  }
  s += 'i';
  return s;
}

}  // namespace lqw::cli
