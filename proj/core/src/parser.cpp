#include <cctype>
#include <string>

#include "pluriminimal/errors.hpp"
#include "pluriminimal/holo_expr.hpp"

namespace pluri {
namespace {

constexpr int kMaxExponent = 1 << 16;

class Parser {
 public:
  Parser(std::string_view text, int arity) : text_(text), arity_(arity) {}

  HoloExpr parse() {
    HoloExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }
  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    throw ParseError("parse error: " + what, at);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  std::string digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::optional<mpq_class> decimal() {
    skip_space();
    std::size_t start = pos_;
    std::string whole = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      std::string frac = digits();
      if (frac.empty()) {
        pos_ = start;
        return std::nullopt;
      }
    } else if (whole.empty()) {
      return std::nullopt;
    }
    return ComplexRational::parse_decimal(text_.substr(start, pos_ - start));
  }

  HoloExpr expr() {
    std::vector<HoloExpr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(HoloExpr::negate(term()));
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms.front() : HoloExpr::sum(std::move(terms));
  }

  HoloExpr term() {
    std::vector<HoloExpr> factors{factor()};
    while (accept('*')) factors.push_back(factor());
    return factors.size() == 1 ? factors.front() : HoloExpr::product(std::move(factors));
  }

  HoloExpr factor() {
    if (accept('-')) return HoloExpr::negate(factor());
    HoloExpr b = base();
    if (accept('^')) {
      if (peek() == '-') fail("negative exponent");
      std::size_t at = pos_;
      std::string k = digits();
      if (k.empty()) fail("expected a non-negative integer exponent");
      if (k.size() > 6 || std::stoi(k) > kMaxExponent) fail_at("exponent too large", at);
      return HoloExpr::power(b, std::stoi(k));
    }
    return b;
  }

  // '(' decimal ('+'|'-') decimal 'i' ')', or nullopt with the position restored.
  std::optional<HoloExpr> complex_literal() {
    const std::size_t start = pos_;
    auto restore = [&]() -> std::optional<HoloExpr> {
      pos_ = start;
      return std::nullopt;
    };
    if (!accept('(')) return restore();
    auto re = decimal();
    if (!re) return restore();
    char sign = peek();
    if (sign != '+' && sign != '-') return restore();
    ++pos_;
    auto im = decimal();
    if (!im) return restore();
    if (pos_ >= text_.size() || text_[pos_] != 'i') return restore();
    ++pos_;
    if (!accept(')')) return restore();
    mpq_class imag = sign == '-' ? mpq_class(-*im) : *im;
    return HoloExpr::constant(arity_, ComplexRational(*re, imag));
  }

  HoloExpr base() {
    const char c = peek();
    const std::size_t start = pos_;
    if (c == '\0') fail("unexpected end of input");
    if (c == 'z') {
      ++pos_;
      std::string k = digits();
      if (k.empty()) fail("expected variable index after 'z'");
      if (k.size() > 6 || std::stoi(k) < 1 || std::stoi(k) > arity_) {
        fail_at("variable z" + k + " out of range for arity " + std::to_string(arity_), start);
      }
      return HoloExpr::variable(arity_, std::stoi(k) - 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      auto q = decimal();
      if (!q) fail("malformed number");
      if (pos_ < text_.size() && text_[pos_] == 'i') {
        ++pos_;
        return HoloExpr::constant(arity_, ComplexRational(0, *q));
      }
      return HoloExpr::constant(arity_, ComplexRational(*q));
    }
    if (c == '(') {
      if (auto literal = complex_literal()) return *literal;
      expect('(');
      HoloExpr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < text_.size() && std::isalpha(static_cast<unsigned char>(text_[end]))) ++end;
      std::string name(text_.substr(pos_, end - pos_));
      HoloExpr::Kind kind;
      if (name == "exp") {
        kind = HoloExpr::Kind::Exp;
      } else if (name == "sin") {
        kind = HoloExpr::Kind::Sin;
      } else if (name == "cos") {
        kind = HoloExpr::Kind::Cos;
      } else {
        fail("unknown identifier '" + name + "'");
      }
      pos_ = end;
      expect('(');
      HoloExpr arg = expr();
      expect(')');
      return HoloExpr::apply(kind, arg);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int arity_;
};

}  // namespace

HoloExpr parse_expr(std::string_view text, int arity) {
  if (arity < 1) throw InvalidArgument("parse_expr: arity must be >= 1");
  return Parser(text, arity).parse();
}

}  // namespace pluri
