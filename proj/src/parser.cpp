#include "fraclift/parser.hpp"

#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>

#include "fraclift/errors.hpp"
#include "fraclift/gamma.hpp"

namespace fraclift {

// ---------------------------------------------------------------------------
// Intrinsics

namespace {

struct Intrinsic {
  std::string name;
  double (*value)(double);
  // n-th derivative at c
  double (*derivative)(int n, double c);
};

const std::array<Intrinsic, 3>& intrinsics() {
  static const std::array<Intrinsic, 3> table = {{
      {"exp", [](double c) { return std::exp(c); },
       [](int, double c) { return std::exp(c); }},
      {"sin", [](double c) { return std::sin(c); },
       [](int n, double c) {
         switch (n % 4) {
         case 0: return std::sin(c);
         case 1: return std::cos(c);
         case 2: return -std::sin(c);
         default: return -std::cos(c);
         }
       }},
      {"cos", [](double c) { return std::cos(c); },
       [](int n, double c) {
         switch (n % 4) {
         case 0: return std::cos(c);
         case 1: return -std::sin(c);
         case 2: return -std::cos(c);
         default: return std::sin(c);
         }
       }},
  }};
  return table;
}

const Intrinsic* find_intrinsic(std::string_view name) {
  for (const auto& fn : intrinsics())
    if (fn.name == name) return &fn;
  return nullptr;
}

} // namespace

const std::vector<std::string>& intrinsic_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& fn : intrinsics()) v.push_back(fn.name);
    return v;
  }();
  return names;
}

// ---------------------------------------------------------------------------
// Tree

ExprPtr Expr::make_number(double v) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Number;
  e->number = v;
  return e;
}

ExprPtr Expr::make_variable() {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Variable;
  return e;
}

ExprPtr Expr::make_unary(Kind k, ExprPtr operand) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->args = {std::move(operand)};
  return e;
}

ExprPtr Expr::make_binary(Kind k, ExprPtr lhs, ExprPtr rhs) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->args = {std::move(lhs), std::move(rhs)};
  return e;
}

ExprPtr Expr::make_call(std::string fn, ExprPtr arg) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Call;
  e->name = std::move(fn);
  e->args = {std::move(arg)};
  return e;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size())
    return false;
  if (a.kind == Expr::Kind::Number &&
      std::bit_cast<std::uint64_t>(a.number) != std::bit_cast<std::uint64_t>(b.number))
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!(*a.args[i] == *b.args[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parsing
//
//   expr    := term { ('+' | '-') term }
//   term    := unary { ('*' | '/') unary }
//   unary   := ('-' | '+') unary | power
//   power   := primary [ '^' unary ]          (right-associative)
//   primary := number | 'x' | ident '(' expr ')' | '(' expr ')'

namespace {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr run() {
    skip_space();
    auto e = expr();
    skip_space();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  std::size_t line_start_ = 0;

  [[noreturn]] void fail(const std::string& what) const { fail_at(what, pos_); }

  [[noreturn]] void fail_at(const std::string& what, std::size_t at) const {
    // Column of `at` on the current line.
    throw SyntaxError(what, line_, static_cast<int>(at - line_start_) + 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        line_start_ = pos_ + 1;
      }
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  ExprPtr expr() {
    auto lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = Expr::make_binary(Expr::Kind::Add, lhs, term());
      else if (accept('-'))
        lhs = Expr::make_binary(Expr::Kind::Sub, lhs, term());
      else
        return lhs;
    }
  }

  ExprPtr term() {
    auto lhs = unary();
    for (;;) {
      if (accept('*'))
        lhs = Expr::make_binary(Expr::Kind::Mul, lhs, unary());
      else if (accept('/'))
        lhs = Expr::make_binary(Expr::Kind::Div, lhs, unary());
      else
        return lhs;
    }
  }

  ExprPtr unary() {
    if (accept('-')) return Expr::make_unary(Expr::Kind::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  ExprPtr power() {
    auto base = primary();
    if (accept('^')) return Expr::make_binary(Expr::Kind::Pow, base, unary());
    return base;
  }

  ExprPtr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      auto inner = expr();
      expect(')');
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        while (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) ++p;
        pos_ = p;
      }
    }
    double v = 0.0;
    const auto [end, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (ec != std::errc() || end != text_.data() + pos_)
      fail_at("malformed number '" + std::string(text_.substr(start, pos_ - start)) + "'",
              start);
    return Expr::make_number(v);
  }

  ExprPtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "x") return Expr::make_variable();
    if (find_intrinsic(name)) {
      expect('(');
      auto arg = expr();
      expect(')');
      return Expr::make_call(name, arg);
    }
    fail_at("unknown identifier '" + name + "'", start);
  }
};

} // namespace

ExprPtr parse(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const Expr& e) {
  switch (e.kind) {
  case Expr::Kind::Add:
  case Expr::Kind::Sub: return 1;
  case Expr::Kind::Mul:
  case Expr::Kind::Div: return 2;
  case Expr::Kind::Neg: return 3;
  case Expr::Kind::Pow: return 4;
  default: return 5;
  }
}

std::string format_number(double v) {
  std::array<char, 32> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string print_prec(const Expr& e);

std::string wrap_if(const Expr& e, bool wrap) {
  return wrap ? "(" + print_prec(e) + ")" : print_prec(e);
}

std::string print_prec(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
  case K::Number: {
    // A negative literal cannot come out of the parser; keep it atomic.
    const std::string s = format_number(e.number);
    return std::signbit(e.number) ? "(" + s + ")" : s;
  }
  case K::Variable: return "x";
  case K::Call: return e.name + "(" + print_prec(*e.args[0]) + ")";
  case K::Neg: return "-" + wrap_if(*e.args[0], precedence(*e.args[0]) < 3);
  case K::Pow:
    // Left operand of a right-associative operator binds tighter; the
    // exponent position is a full unary.
    return wrap_if(*e.args[0], precedence(*e.args[0]) <= 4) + "^" +
           wrap_if(*e.args[1], precedence(*e.args[1]) < 3);
  default: {
    const int p = precedence(e);
    const char* op = e.kind == K::Add ? " + " : e.kind == K::Sub ? " - "
                   : e.kind == K::Mul ? "*"   : "/";
    return wrap_if(*e.args[0], precedence(*e.args[0]) < p) + op +
           wrap_if(*e.args[1], precedence(*e.args[1]) <= p);
  }
  }
}

} // namespace

std::string print(const Expr& e) { return print_prec(e); }

std::string dump(const Expr& e) {
  using K = Expr::Kind;
  switch (e.kind) {
  case K::Number: return format_number(e.number);
  case K::Variable: return "x";
  case K::Neg: return "Neg(" + dump(*e.args[0]) + ")";
  case K::Call: return e.name + "(" + dump(*e.args[0]) + ")";
  default: {
    const char* name = e.kind == K::Add ? "Add" : e.kind == K::Sub ? "Sub"
                     : e.kind == K::Mul ? "Mul" : e.kind == K::Div ? "Div" : "Pow";
    return std::string(name) + "(" + dump(*e.args[0]) + "," + dump(*e.args[1]) + ")";
  }
  }
}

// ---------------------------------------------------------------------------
// Evaluation

double evaluate(const Expr& e, double x) {
  using K = Expr::Kind;
  switch (e.kind) {
  case K::Number: return e.number;
  case K::Variable: return x;
  case K::Neg: return -evaluate(*e.args[0], x);
  case K::Add: return evaluate(*e.args[0], x) + evaluate(*e.args[1], x);
  case K::Sub: return evaluate(*e.args[0], x) - evaluate(*e.args[1], x);
  case K::Mul: return evaluate(*e.args[0], x) * evaluate(*e.args[1], x);
  case K::Div: return evaluate(*e.args[0], x) / evaluate(*e.args[1], x);
  case K::Pow: return std::pow(evaluate(*e.args[0], x), evaluate(*e.args[1], x));
  case K::Call: return find_intrinsic(e.name)->value(evaluate(*e.args[0], x));
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Series expansion

namespace {

class Expander {
public:
  Expander(double basepoint, int order) : a_(basepoint), order_(order) {}

  GenSeries run(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
    case K::Number: return constant(e.number);
    case K::Variable:
      return GenSeries(a_, {{0.0, a_}, {1.0, 1.0}});
    case K::Neg: return -run(*e.args[0]);
    case K::Add: return run(*e.args[0]) + run(*e.args[1]);
    case K::Sub: return run(*e.args[0]) - run(*e.args[1]);
    case K::Mul: return truncated_product(run(*e.args[0]), run(*e.args[1]), order_);
    case K::Div: {
      const double d = constant_value(run(*e.args[1]), "divisor");
      if (d == 0.0) throw DomainError("division by zero");
      return (1.0 / d) * run(*e.args[0]);
    }
    case K::Pow: return power(run(*e.args[0]), constant_value(run(*e.args[1]), "exponent"));
    case K::Call: return intrinsic(*find_intrinsic(e.name), run(*e.args[0]));
    }
    return GenSeries(a_);
  }

private:
  double a_;
  double order_;

  GenSeries constant(double c) const { return GenSeries(a_, {{0.0, c}}); }

  static double constant_value(const GenSeries& s, const char* role) {
    if (!s.is_exact() || s.size() > 1 || (s.size() == 1 && s.terms()[0].exponent != 0.0))
      throw DomainError(std::string(role) + " must be a constant");
    return s.empty() ? 0.0 : s.terms()[0].coef;
  }

  GenSeries power(const GenSeries& base, double p) const {
    // c (x-a)^beta raised to any real power stays a single term.
    if (base.is_exact() && base.size() == 1) {
      const Term t = base.terms()[0];
      const bool integral = p == std::round(p);
      if (t.coef < 0.0 && !integral)
        throw DomainError("real power of a negative multiple of (x - a)");
      return GenSeries(a_, {{t.exponent * p, std::pow(t.coef, p)}});
    }
    if (p >= 0.0 && p == std::round(p)) {
      GenSeries result = constant(1.0);
      GenSeries square = base;
      for (long n = std::lround(p); n > 0; n >>= 1) {
        if (n & 1) result = truncated_product(result, square, order_);
        if (n > 1) square = truncated_product(square, square, order_);
      }
      return result;
    }
    if (base.is_exact() && base.size() == 2 && base.terms()[0].exponent == 0.0 &&
        base.terms()[1].exponent == 1.0 && base.terms()[1].coef == 1.0) {
      const double center = a_ - base.terms()[0].coef;
      throw DomainError("power term centered at " + std::to_string(center) +
                        " but the basepoint is " + std::to_string(a_));
    }
    throw DomainError("non-integer or negative power of a non-monomial expression");
  }

  GenSeries intrinsic(const Intrinsic& fn, const GenSeries& arg) const {
    // fn(c0 + s) = sum_n fn^(n)(c0)/n! s^n, s vanishing at the basepoint.
    double c0 = 0.0;
    std::vector<Term> rest;
    for (const auto& t : arg.terms()) {
      if (t.exponent < 0.0)
        throw DomainError(fn.name + " of an expression singular at the basepoint");
      if (t.exponent == 0.0)
        c0 = t.coef;
      else
        rest.push_back(t);
    }
    const GenSeries s(a_, rest, arg.truncation_order());
    if (s.empty() && s.is_exact()) return constant(fn.value(c0));

    const double lowest = s.empty() ? s.truncation_order() : s.terms().front().exponent;
    GenSeries sum = GenSeries(a_, {{0.0, fn.derivative(0, c0)}}, order_);
    GenSeries power_n = constant(1.0);
    double inv_factorial = 1.0;
    for (int n = 1; static_cast<double>(n) * lowest <= order_ + integer_tolerance(); ++n) {
      power_n = truncated_product(power_n, s, order_);
      inv_factorial /= n;
      sum = sum + (fn.derivative(n, c0) * inv_factorial) * power_n;
    }
    return sum.with_truncation(std::min<double>(order_, arg.truncation_order()));
  }
};

} // namespace

GenSeries to_series(const Expr& e, double basepoint, int order) {
  if (order < 0) throw DomainError("truncation order must be nonnegative");
  return Expander(basepoint, order).run(e);
}

} // namespace fraclift
