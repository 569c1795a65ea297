#include "pluriminimal/holo_expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "pluriminimal/errors.hpp"

namespace pluri {

// ---------------------------------------------------------------------------
// Constants

namespace {

long double to_long_double(const mpq_class& q) {
  return std::stold(q.get_num().get_str()) / std::stold(q.get_den().get_str());
}

}  // namespace

Constant Constant::from_exact(ComplexRational q) {
  Constant c;
  c.value = q.to_complex();
  c.extended = {to_long_double(q.re()), to_long_double(q.im())};
  c.exact = std::move(q);
  return c;
}

Constant Constant::from_double(std::complex<double> v) {
  Constant c;
  c.value = v;
  c.extended = {v.real(), v.imag()};
  return c;
}

bool Constant::is_zero() const { return exact ? exact->is_zero() : value == std::complex<double>(0.0); }
bool Constant::is_one() const { return exact ? exact->is_one() : value == std::complex<double>(1.0); }
bool Constant::is_minus_one() const {
  return exact ? (-*exact).is_one() : value == std::complex<double>(-1.0);
}

Constant operator+(const Constant& a, const Constant& b) {
  if (a.exact && b.exact) return Constant::from_exact(*a.exact + *b.exact);
  return Constant::from_double(a.value + b.value);
}

Constant operator*(const Constant& a, const Constant& b) {
  if (a.exact && b.exact) return Constant::from_exact(*a.exact * *b.exact);
  return Constant::from_double(a.value * b.value);
}

Constant operator-(const Constant& a) {
  if (a.exact) return Constant::from_exact(-*a.exact);
  return Constant::from_double(-a.value);
}

Constant pow(const Constant& a, int k) {
  Constant result = Constant::from_exact(ComplexRational(1));
  Constant base = a;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Nodes

struct HoloExpr::Node {
  Kind kind = Kind::Constant;
  Constant constant = Constant::from_exact(ComplexRational(0));
  int index = 0;  // variable index or exponent
  std::vector<HoloExpr> children;
};

namespace {

using Kind = HoloExpr::Kind;

void require_same_arity(const std::vector<HoloExpr>& items) {
  for (const auto& e : items) {
    if (e.arity() != items.front().arity()) {
      throw InvalidArgument("HoloExpr: operands have different arities");
    }
  }
}

bool leading_constant(const HoloExpr& e) {
  return e.kind() == Kind::Product && e.children().front().is_constant();
}

}  // namespace

HoloExpr::HoloExpr(std::shared_ptr<const Node> node, int arity) : node_(std::move(node)), arity_(arity) {}

HoloExpr::HoloExpr(int arity) : HoloExpr(constant(arity, ComplexRational(0))) {}

HoloExpr::Kind HoloExpr::kind() const noexcept { return node_->kind; }
const Constant& HoloExpr::constant_value() const { return node_->constant; }
int HoloExpr::variable_index() const { return node_->index; }
int HoloExpr::exponent() const { return node_->index; }
const std::vector<HoloExpr>& HoloExpr::children() const { return node_->children; }

HoloExpr HoloExpr::constant(int arity, Constant c) {
  if (arity < 1) throw InvalidArgument("HoloExpr: arity must be >= 1");
  auto node = std::make_shared<Node>();
  node->kind = Kind::Constant;
  node->constant = std::move(c);
  return HoloExpr(std::move(node), arity);
}

HoloExpr HoloExpr::variable(int arity, int index) {
  if (arity < 1) throw InvalidArgument("HoloExpr: arity must be >= 1");
  if (index < 0 || index >= arity) {
    throw InvalidArgument("HoloExpr: variable index " + std::to_string(index + 1) +
                          " out of range for arity " + std::to_string(arity));
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Variable;
  node->index = index;
  return HoloExpr(std::move(node), arity);
}

HoloExpr HoloExpr::sum(std::vector<HoloExpr> terms) {
  if (terms.empty()) throw InvalidArgument("HoloExpr::sum: no terms");
  require_same_arity(terms);
  const int arity = terms.front().arity();

  std::vector<HoloExpr> flat;
  Constant acc = Constant::from_exact(ComplexRational(0));
  bool has_constant = false;
  auto take = [&](const HoloExpr& t) {
    if (t.is_constant()) {
      acc = acc + t.constant_value();
      has_constant = true;
    } else {
      flat.push_back(t);
    }
  };
  for (const auto& t : terms) {
    if (t.kind() == Kind::Sum) {
      for (const auto& c : t.children()) take(c);
    } else {
      take(t);
    }
  }
  if (has_constant && !acc.is_zero()) flat.push_back(constant(arity, acc));
  if (flat.empty()) return constant(arity, acc);
  if (flat.size() == 1) return flat.front();

  auto node = std::make_shared<Node>();
  node->kind = Kind::Sum;
  node->children = std::move(flat);
  return HoloExpr(std::move(node), arity);
}

HoloExpr HoloExpr::product(std::vector<HoloExpr> factors) {
  if (factors.empty()) throw InvalidArgument("HoloExpr::product: no factors");
  require_same_arity(factors);
  const int arity = factors.front().arity();

  std::vector<HoloExpr> flat;
  Constant acc = Constant::from_exact(ComplexRational(1));
  auto take = [&](auto&& self, const HoloExpr& f) -> void {
    switch (f.kind()) {
      case Kind::Constant:
        acc = acc * f.constant_value();
        break;
      case Kind::Product:
        for (const auto& c : f.children()) self(self, c);
        break;
      case Kind::Negate:
        acc = -acc;
        self(self, f.children().front());
        break;
      default:
        flat.push_back(f);
    }
  };
  for (const auto& f : factors) take(take, f);

  if (acc.is_zero() || flat.empty()) return constant(arity, acc);

  auto bare = [&]() {
    if (flat.size() == 1) return flat.front();
    auto node = std::make_shared<Node>();
    node->kind = Kind::Product;
    node->children = flat;
    return HoloExpr(std::move(node), arity);
  };
  if (acc.is_one()) return bare();
  if (acc.is_minus_one()) {
    auto node = std::make_shared<Node>();
    node->kind = Kind::Negate;
    node->children = {bare()};
    return HoloExpr(std::move(node), arity);
  }
  flat.insert(flat.begin(), constant(arity, acc));
  auto node = std::make_shared<Node>();
  node->kind = Kind::Product;
  node->children = std::move(flat);
  return HoloExpr(std::move(node), arity);
}

HoloExpr HoloExpr::power(const HoloExpr& base, int exponent) {
  if (exponent < 0) throw InvalidArgument("HoloExpr::power: negative exponent");
  const int arity = base.arity();
  if (exponent == 0) return constant(arity, ComplexRational(1));
  if (exponent == 1) return base;
  switch (base.kind()) {
    case Kind::Constant:
      return constant(arity, pow(base.constant_value(), exponent));
    case Kind::Negate: {
      HoloExpr inner = power(base.children().front(), exponent);
      return exponent % 2 == 0 ? inner : negate(inner);
    }
    case Kind::Power:
      return power(base.children().front(), base.exponent() * exponent);
    case Kind::Product:
      if (leading_constant(base)) {
        std::vector<HoloExpr> rest(base.children().begin() + 1, base.children().end());
        HoloExpr c = constant(arity, pow(base.children().front().constant_value(), exponent));
        HoloExpr r = rest.size() == 1 ? rest.front() : product(rest);
        return product({c, power(r, exponent)});
      }
      break;
    default:
      break;
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Power;
  node->index = exponent;
  node->children = {base};
  return HoloExpr(std::move(node), arity);
}

HoloExpr HoloExpr::negate(const HoloExpr& e) {
  switch (e.kind()) {
    case Kind::Constant:
      return constant(e.arity(), -e.constant_value());
    case Kind::Negate:
      return e.children().front();
    case Kind::Product:
      if (leading_constant(e)) {
        std::vector<HoloExpr> factors = e.children();
        factors.front() = constant(e.arity(), -factors.front().constant_value());
        return product(std::move(factors));
      }
      break;
    default:
      break;
  }
  auto node = std::make_shared<Node>();
  node->kind = Kind::Negate;
  node->children = {e};
  return HoloExpr(std::move(node), e.arity());
}

HoloExpr HoloExpr::apply(Kind function, const HoloExpr& argument) {
  if (function != Kind::Exp && function != Kind::Sin && function != Kind::Cos) {
    throw InvalidArgument("HoloExpr::apply: not a function kind");
  }
  if (argument.is_constant() && argument.constant_value().is_exact() &&
      argument.constant_value().is_zero()) {
    return constant(argument.arity(), ComplexRational(function == Kind::Sin ? 0 : 1));
  }
  auto node = std::make_shared<Node>();
  node->kind = function;
  node->children = {argument};
  return HoloExpr(std::move(node), argument.arity());
}

HoloExpr exp(const HoloExpr& e) { return HoloExpr::apply(Kind::Exp, e); }
HoloExpr sin(const HoloExpr& e) { return HoloExpr::apply(Kind::Sin, e); }
HoloExpr cos(const HoloExpr& e) { return HoloExpr::apply(Kind::Cos, e); }

// ---------------------------------------------------------------------------
// Structural equality

bool structurally_equal(const HoloExpr& a, const HoloExpr& b) {
  if (a.arity() != b.arity() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Kind::Constant: {
      const auto& ca = a.constant_value();
      const auto& cb = b.constant_value();
      if (ca.is_exact() != cb.is_exact()) return false;
      if (ca.is_exact()) return *ca.exact == *cb.exact;
      return ca.value == cb.value;
    }
    case Kind::Variable:
      return a.variable_index() == b.variable_index();
    case Kind::Power:
      if (a.exponent() != b.exponent()) return false;
      break;
    default:
      break;
  }
  const auto& ca = a.children();
  const auto& cb = b.children();
  if (ca.size() != cb.size()) return false;
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (!structurally_equal(ca[i], cb[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

enum class Level { Sum, Product, Base };

std::string double_text(double x) {
  char buf[512];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), std::abs(x), std::chars_format::fixed);
  if (ec != std::errc()) throw InvalidArgument("HoloExpr: cannot print constant");
  return std::string(buf, end);
}

struct SignedParts {
  bool re_negative, im_negative, re_zero, im_zero;
  std::string re, im;
};

SignedParts parts(const Constant& c) {
  SignedParts p{};
  if (c.exact && has_terminating_decimal(c.exact->re()) && has_terminating_decimal(c.exact->im())) {
    p.re_negative = sgn(c.exact->re()) < 0;
    p.im_negative = sgn(c.exact->im()) < 0;
    p.re_zero = sgn(c.exact->re()) == 0;
    p.im_zero = sgn(c.exact->im()) == 0;
    p.re = decimal_string(c.exact->re());
    p.im = decimal_string(c.exact->im());
  } else {
    p.re_negative = std::signbit(c.value.real()) && c.value.real() != 0.0;
    p.im_negative = std::signbit(c.value.imag()) && c.value.imag() != 0.0;
    p.re_zero = c.value.real() == 0.0;
    p.im_zero = c.value.imag() == 0.0;
    p.re = double_text(c.value.real());
    p.im = double_text(c.value.imag());
  }
  return p;
}

// Parses as a `base` unless it starts with '-'.
std::string constant_text(const Constant& c) {
  const SignedParts p = parts(c);
  if (p.im_zero) return (p.re_negative ? "-" : "") + p.re;
  if (p.re_zero) return (p.im_negative ? "-" : "") + p.im + "i";
  return "(" + std::string(p.re_negative ? "-" : "") + p.re + (p.im_negative ? "-" : "+") + p.im + "i)";
}

bool negative_leading(const HoloExpr& e) {
  const Constant* c = nullptr;
  if (e.kind() == Kind::Negate) return true;
  if (e.is_constant()) c = &e.constant_value();
  if (leading_constant(e)) c = &e.children().front().constant_value();
  if (!c) return false;
  const SignedParts p = parts(*c);
  return p.re_negative || (p.re_zero && p.im_negative);
}

const char* function_name(Kind k) {
  switch (k) {
    case Kind::Exp: return "exp";
    case Kind::Sin: return "sin";
    case Kind::Cos: return "cos";
    default: return "?";
  }
}

std::string print(const HoloExpr& e, Level level) {
  auto wrap = [](std::string s) { return "(" + s + ")"; };
  switch (e.kind()) {
    case Kind::Constant: {
      std::string s = constant_text(e.constant_value());
      return level == Level::Base && s.front() == '-' ? wrap(s) : s;
    }
    case Kind::Variable:
      return "z" + std::to_string(e.variable_index() + 1);
    case Kind::Exp:
    case Kind::Sin:
    case Kind::Cos:
      return std::string(function_name(e.kind())) + "(" + print(e.children().front(), Level::Sum) + ")";
    case Kind::Negate: {
      std::string s = "-" + print(e.children().front(), Level::Base);
      return level == Level::Base ? wrap(s) : s;
    }
    case Kind::Power: {
      std::string s = print(e.children().front(), Level::Base) + "^" + std::to_string(e.exponent());
      return level == Level::Base ? wrap(s) : s;
    }
    case Kind::Product: {
      std::string s;
      for (const auto& f : e.children()) {
        if (!s.empty()) s += "*";
        s += print(f, Level::Product);
      }
      return level == Level::Base ? wrap(s) : s;
    }
    case Kind::Sum: {
      std::string s;
      bool first = true;
      for (const auto& t : e.children()) {
        if (first) {
          s += print(t, Level::Sum);
          first = false;
        } else if (negative_leading(t)) {
          s += "-" + print(HoloExpr::negate(t), Level::Product);
        } else {
          s += "+" + print(t, Level::Product);
        }
      }
      return level == Level::Sum ? s : wrap(s);
    }
  }
  return {};
}

}  // namespace

std::string to_string(const HoloExpr& e) { return print(e, Level::Sum); }

// ---------------------------------------------------------------------------
// Calculus and rewriting

HoloExpr differentiate(const HoloExpr& e, int j) {
  const int m = e.arity();
  if (j < 0 || j >= m) throw InvalidArgument("differentiate: variable index out of range");
  const HoloExpr zero = HoloExpr::constant(m, ComplexRational(0));
  switch (e.kind()) {
    case Kind::Constant:
      return zero;
    case Kind::Variable:
      return HoloExpr::constant(m, ComplexRational(e.variable_index() == j ? 1 : 0));
    case Kind::Sum: {
      std::vector<HoloExpr> terms;
      for (const auto& t : e.children()) terms.push_back(differentiate(t, j));
      return HoloExpr::sum(std::move(terms));
    }
    case Kind::Product: {
      const auto& f = e.children();
      std::vector<HoloExpr> terms;
      for (std::size_t i = 0; i < f.size(); ++i) {
        HoloExpr d = differentiate(f[i], j);
        if (d.is_zero()) continue;
        std::vector<HoloExpr> factors = f;
        factors[i] = d;
        terms.push_back(HoloExpr::product(std::move(factors)));
      }
      return terms.empty() ? zero : HoloExpr::sum(std::move(terms));
    }
    case Kind::Power: {
      const HoloExpr& u = e.children().front();
      HoloExpr du = differentiate(u, j);
      if (du.is_zero()) return zero;
      const int k = e.exponent();
      return HoloExpr::product({HoloExpr::constant(m, ComplexRational(k)), HoloExpr::power(u, k - 1), du});
    }
    case Kind::Negate:
      return HoloExpr::negate(differentiate(e.children().front(), j));
    case Kind::Exp:
    case Kind::Sin:
    case Kind::Cos: {
      const HoloExpr& u = e.children().front();
      HoloExpr du = differentiate(u, j);
      if (du.is_zero()) return zero;
      if (e.kind() == Kind::Exp) return HoloExpr::product({e, du});
      if (e.kind() == Kind::Sin) return HoloExpr::product({cos(u), du});
      return HoloExpr::negate(HoloExpr::product({sin(u), du}));
    }
  }
  return zero;
}

namespace {

template <class VariableMap>
HoloExpr rebuild(const HoloExpr& e, int arity, const VariableMap& var) {
  switch (e.kind()) {
    case Kind::Constant:
      return HoloExpr::constant(arity, e.constant_value());
    case Kind::Variable:
      return var(e.variable_index());
    case Kind::Sum:
    case Kind::Product: {
      std::vector<HoloExpr> items;
      for (const auto& c : e.children()) items.push_back(rebuild(c, arity, var));
      return e.kind() == Kind::Sum ? HoloExpr::sum(std::move(items)) : HoloExpr::product(std::move(items));
    }
    case Kind::Power:
      return HoloExpr::power(rebuild(e.children().front(), arity, var), e.exponent());
    case Kind::Negate:
      return HoloExpr::negate(rebuild(e.children().front(), arity, var));
    case Kind::Exp:
    case Kind::Sin:
    case Kind::Cos:
      return HoloExpr::apply(e.kind(), rebuild(e.children().front(), arity, var));
  }
  return HoloExpr(arity);
}

}  // namespace

HoloExpr substitute(const HoloExpr& e, std::span<const HoloExpr> args) {
  if (static_cast<int>(args.size()) != e.arity()) {
    throw InvalidArgument("substitute: need one argument per variable");
  }
  if (args.empty()) throw InvalidArgument("substitute: no arguments");
  const int arity = args.front().arity();
  for (const auto& a : args) {
    if (a.arity() != arity) throw InvalidArgument("substitute: arguments have different arities");
  }
  return rebuild(e, arity, [&](int i) { return args[static_cast<std::size_t>(i)]; });
}

HoloExpr with_arity(const HoloExpr& e, int arity) {
  return rebuild(e, arity, [&](int i) { return HoloExpr::variable(arity, i); });
}

HoloExpr monomial(std::span<const int> alpha) {
  const int m = static_cast<int>(alpha.size());
  std::vector<HoloExpr> factors;
  for (int j = 0; j < m; ++j) {
    if (alpha[static_cast<std::size_t>(j)] > 0) {
      factors.push_back(HoloExpr::power(HoloExpr::variable(m, j), alpha[static_cast<std::size_t>(j)]));
    }
  }
  if (factors.empty()) return HoloExpr::constant(m, ComplexRational(1));
  return HoloExpr::product(std::move(factors));
}

std::optional<int> polynomial_degree(const HoloExpr& e) {
  switch (e.kind()) {
    case Kind::Constant:
      return 0;
    case Kind::Variable:
      return 1;
    case Kind::Sum:
    case Kind::Product: {
      int total = 0;
      for (const auto& c : e.children()) {
        auto d = polynomial_degree(c);
        if (!d) return std::nullopt;
        total = e.kind() == Kind::Sum ? std::max(total, *d) : total + *d;
      }
      return total;
    }
    case Kind::Power: {
      auto d = polynomial_degree(e.children().front());
      if (!d) return std::nullopt;
      return *d * e.exponent();
    }
    case Kind::Negate:
      return polynomial_degree(e.children().front());
    default:
      return std::nullopt;
  }
}

}  // namespace pluri
