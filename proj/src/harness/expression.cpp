#include "sdamp/harness/expression.hpp"

#include <cctype>
#include <cstdlib>
#include <cmath>
#include <numbers>
#include <vector>

#include "sdamp/error.hpp"

namespace sdamp::harness {

enum class Op { Number, X, Add, Sub, Mul, Div, Pow, Neg, Call };
enum class Fn { Exp, Log, Sqrt, Sin, Cos, Tan, Sinh, Cosh, Tanh, Sech, Abs, Logistic };

struct Expression::Node {
  Op op;
  cplx value{};
  Fn fn{};
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Expression::Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr number(cplx v) {
  auto n = std::make_shared<Expression::Node>();
  n->op = Op::Number;
  n->value = v;
  return n;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  NodePtr parse() {
    NodePtr e = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression '" + std::string(s_) + "': " + what + " at column " +
                      std::to_string(pos_ + 1));
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

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (eat('+'))
        lhs = make(Op::Add, lhs, term());
      else if (eat('-'))
        lhs = make(Op::Sub, lhs, term());
      else
        return lhs;
    }
  }
  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (eat('*'))
        lhs = make(Op::Mul, lhs, unary());
      else if (eat('/'))
        lhs = make(Op::Div, lhs, unary());
      else
        return lhs;
    }
  }
  NodePtr unary() {
    if (eat('-')) return make(Op::Neg, unary());
    if (eat('+')) return unary();
    return power();
  }
  NodePtr power() {
    NodePtr base = primary();
    if (eat('^')) return make(Op::Pow, base, unary());
    return base;
  }
  NodePtr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return numeral();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      if (name == "x") return make(Op::X);
      if (name == "i") return number(cplx(0.0, 1.0));
      if (name == "pi") return number(std::numbers::pi);
      static const std::pair<const char*, Fn> fns[] = {
          {"exp", Fn::Exp},   {"log", Fn::Log},   {"sqrt", Fn::Sqrt}, {"sin", Fn::Sin},
          {"cos", Fn::Cos},   {"tan", Fn::Tan},   {"sinh", Fn::Sinh}, {"cosh", Fn::Cosh},
          {"tanh", Fn::Tanh}, {"sech", Fn::Sech}, {"abs", Fn::Abs},   {"logistic", Fn::Logistic}};
      for (const auto& [fname, fn] : fns) {
        if (name != fname) continue;
        if (!eat('(')) fail("expected '(' after " + name);
        NodePtr arg = expr();
        if (!eat(')')) fail("expected ')'");
        auto n = std::make_shared<Expression::Node>();
        n->op = Op::Call;
        n->fn = fn;
        n->a = std::move(arg);
        return n;
      }
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
  NodePtr numeral() {
    const std::string rest(s_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    const auto used = static_cast<std::size_t>(end - rest.c_str());
    if (used == 0) fail("malformed number");
    pos_ += used;
    return number(v);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

// Value with derivative; real arguments stay on real code paths so saturating
// functions (exp overflow inside logistic, sech) behave.
struct Dual {
  cplx v, d;
};

bool is_real(cplx z) { return z.imag() == 0.0; }

cplx f_exp(cplx z) { return is_real(z) ? cplx(std::exp(z.real())) : std::exp(z); }
cplx f_cosh(cplx z) { return is_real(z) ? cplx(std::cosh(z.real())) : std::cosh(z); }
cplx f_sinh(cplx z) { return is_real(z) ? cplx(std::sinh(z.real())) : std::sinh(z); }
cplx f_tanh(cplx z) { return is_real(z) ? cplx(std::tanh(z.real())) : std::tanh(z); }
cplx f_sech(cplx z) { return is_real(z) ? cplx(1.0 / std::cosh(z.real())) : 1.0 / std::cosh(z); }
cplx f_logistic(cplx z) {
  if (!is_real(z)) return 1.0 / (1.0 + std::exp(-z));
  const double r = z.real();
  if (r >= 0.0) return 1.0 / (1.0 + std::exp(-r));
  const double e = std::exp(r);
  return e / (1.0 + e);
}
cplx div(cplx a, cplx b) {
  return is_real(a) && is_real(b) ? cplx(a.real() / b.real()) : a / b;
}
cplx mul(cplx a, cplx b) {
  return is_real(a) && is_real(b) ? cplx(a.real() * b.real()) : a * b;
}

cplx power(cplx a, cplx b) {
  if (is_real(b) && b.real() == std::round(b.real()) && std::abs(b.real()) <= 64) {
    const int n = static_cast<int>(b.real());
    cplx r = 1.0;
    for (int k = 0; k < std::abs(n); ++k) r = mul(r, a);
    return n < 0 ? div(1.0, r) : r;
  }
  if (is_real(a) && is_real(b) && a.real() > 0.0) return std::pow(a.real(), b.real());
  return std::pow(a, b);
}

Dual eval(const Expression::Node& n, double x) {
  switch (n.op) {
    case Op::Number: return {n.value, 0.0};
    case Op::X: return {x, 1.0};
    case Op::Neg: {
      const Dual a = eval(*n.a, x);
      return {-a.v, -a.d};
    }
    case Op::Add: {
      const Dual a = eval(*n.a, x), b = eval(*n.b, x);
      return {a.v + b.v, a.d + b.d};
    }
    case Op::Sub: {
      const Dual a = eval(*n.a, x), b = eval(*n.b, x);
      return {a.v - b.v, a.d - b.d};
    }
    case Op::Mul: {
      const Dual a = eval(*n.a, x), b = eval(*n.b, x);
      return {mul(a.v, b.v), mul(a.d, b.v) + mul(a.v, b.d)};
    }
    case Op::Div: {
      const Dual a = eval(*n.a, x), b = eval(*n.b, x);
      const cplx q = div(a.v, b.v);
      return {q, div(a.d - mul(q, b.d), b.v)};
    }
    case Op::Pow: {
      const Dual a = eval(*n.a, x), b = eval(*n.b, x);
      const cplx v = power(a.v, b.v);
      cplx d = 0.0;
      if (a.d != 0.0) d += mul(mul(b.v, power(a.v, b.v - 1.0)), a.d);
      if (b.d != 0.0) d += mul(mul(v, std::log(a.v)), b.d);
      return {v, d};
    }
    case Op::Call: break;
  }
  const Dual a = eval(*n.a, x);
  const cplx z = a.v;
  switch (n.fn) {
    case Fn::Exp: {
      const cplx e = f_exp(z);
      return {e, mul(e, a.d)};
    }
    case Fn::Log: return {is_real(z) && z.real() > 0 ? cplx(std::log(z.real())) : std::log(z), div(a.d, z)};
    case Fn::Sqrt: {
      const cplx r = is_real(z) && z.real() >= 0 ? cplx(std::sqrt(z.real())) : std::sqrt(z);
      return {r, div(a.d, 2.0 * r)};
    }
    case Fn::Sin: return {std::sin(z), mul(std::cos(z), a.d)};
    case Fn::Cos: return {std::cos(z), -mul(std::sin(z), a.d)};
    case Fn::Tan: {
      const cplx t = std::tan(z);
      return {t, mul(1.0 + t * t, a.d)};
    }
    case Fn::Sinh: return {f_sinh(z), mul(f_cosh(z), a.d)};
    case Fn::Cosh: return {f_cosh(z), mul(f_sinh(z), a.d)};
    case Fn::Tanh: {
      const cplx s = f_sech(z);
      return {f_tanh(z), mul(mul(s, s), a.d)};
    }
    case Fn::Sech: {
      const cplx s = f_sech(z);
      return {s, -mul(mul(s, f_tanh(z)), a.d)};
    }
    case Fn::Abs: {
      if (!is_real(z) || !is_real(a.d)) return {std::abs(z), 0.0};
      return {std::abs(z.real()), z.real() < 0 ? -a.d : a.d};
    }
    case Fn::Logistic: {
      const cplx s = f_logistic(z);
      return {s, mul(mul(s, 1.0 - s), a.d)};
    }
  }
  return {0.0, 0.0};
}

}  // namespace

Expression Expression::parse(std::string_view text) {
  Expression e;
  e.source_ = std::string(text);
  e.root_ = Parser(e.source_).parse();
  return e;
}

cplx Expression::operator()(double x) const { return eval(*root_, x).v; }

std::pair<cplx, cplx> Expression::value_and_derivative(double x) const {
  const Dual r = eval(*root_, x);
  return {r.v, r.d};
}

}  // namespace sdamp::harness
