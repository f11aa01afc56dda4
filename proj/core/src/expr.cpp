#include "tinv/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>
#include <system_error>

#include "tinv/error.hpp"

namespace tinv {
namespace {

constexpr std::array<std::pair<std::string_view, UnaryOp>, 5> kFunctions{{
    {"sin", UnaryOp::sin},
    {"cos", UnaryOp::cos},
    {"ln", UnaryOp::ln},
    {"exp", UnaryOp::exp},
    {"sqrt", UnaryOp::sqrt},
}};

std::optional<UnaryOp> function_named(std::string_view name) {
  for (const auto& [text, op] : kFunctions) {
    if (text == name) return op;
  }
  return std::nullopt;
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

Chart::Chart(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.size() < 2) {
    throw std::invalid_argument("chart dimension must be at least 2");
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!is_identifier(n)) {
      throw std::invalid_argument("invalid coordinate name '" + n + "'");
    }
    if (function_named(n)) {
      throw std::invalid_argument("coordinate name '" + n +
                                  "' collides with a function name");
    }
    if (!seen.insert(n).second) {
      throw std::invalid_argument("duplicate coordinate name '" + n + "'");
    }
  }
}

std::optional<int> Chart::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::string_view name(UnaryOp op) noexcept {
  if (op == UnaryOp::neg) return "neg";
  for (const auto& [text, f] : kFunctions) {
    if (f == op) return text;
  }
  return "?";
}

// ---------------------------------------------------------------------------
// AST

struct Expr::Node {
  Kind kind = Kind::constant;
  double value = 0.0;
  int index = -1;
  UnaryOp uop = UnaryOp::neg;
  BinaryOp bop = BinaryOp::add;
  Expr a{std::shared_ptr<const Node>()};  // null for leaves
  Expr b{std::shared_ptr<const Node>()};
  int max_index = -1;
};

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr::Expr() {
  static const auto zero = std::make_shared<const Node>();
  node_ = zero;
}

Expr Expr::constant(double value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::constant;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::variable(int index) {
  if (index < 0) throw std::invalid_argument("negative variable index");
  auto n = std::make_shared<Node>();
  n->kind = Kind::variable;
  n->index = index;
  n->max_index = index;
  return Expr(std::move(n));
}

Expr Expr::unary(UnaryOp op, Expr operand) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::unary;
  n->uop = op;
  n->max_index = operand.max_variable_index();
  n->a = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  if (op == BinaryOp::pow && rhs.kind() != Kind::constant) {
    throw std::invalid_argument("pow exponent must be a constant");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::binary;
  n->bop = op;
  n->max_index = std::max(lhs.max_variable_index(), rhs.max_variable_index());
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }

double Expr::value() const {
  if (kind() != Kind::constant) throw std::logic_error("not a constant node");
  return node_->value;
}

int Expr::variable_index() const {
  if (kind() != Kind::variable) throw std::logic_error("not a variable node");
  return node_->index;
}

UnaryOp Expr::unary_op() const {
  if (kind() != Kind::unary) throw std::logic_error("not a unary node");
  return node_->uop;
}

BinaryOp Expr::binary_op() const {
  if (kind() != Kind::binary) throw std::logic_error("not a binary node");
  return node_->bop;
}

const Expr& Expr::operand() const {
  if (kind() != Kind::unary) throw std::logic_error("not a unary node");
  return node_->a;
}

const Expr& Expr::lhs() const {
  if (kind() != Kind::binary) throw std::logic_error("not a binary node");
  return node_->a;
}

const Expr& Expr::rhs() const {
  if (kind() != Kind::binary) throw std::logic_error("not a binary node");
  return node_->b;
}

bool Expr::is_zero() const noexcept {
  return kind() == Kind::constant && node_->value == 0.0;
}

int Expr::max_variable_index() const { return node_->max_index; }

bool operator==(const Expr& x, const Expr& y) {
  if (x.node_ == y.node_) return true;
  if (x.kind() != y.kind()) return false;
  switch (x.kind()) {
    case Expr::Kind::constant:
      // Bitwise identity, so that 0.0 and -0.0 differ as they print differently.
      return std::signbit(x.node_->value) == std::signbit(y.node_->value) &&
             x.node_->value == y.node_->value;
    case Expr::Kind::variable:
      return x.node_->index == y.node_->index;
    case Expr::Kind::unary:
      return x.node_->uop == y.node_->uop && x.node_->a == y.node_->a;
    case Expr::Kind::binary:
      return x.node_->bop == y.node_->bop && x.node_->a == y.node_->a &&
             x.node_->b == y.node_->b;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Printing

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), end);
}

namespace {

// Binding strength of the construct printed for a node.
int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::constant:
      return std::signbit(e.value()) ? 0 : 5;
    case Expr::Kind::variable:
      return 5;
    case Expr::Kind::unary:
      return e.unary_op() == UnaryOp::neg ? 3 : 5;
    case Expr::Kind::binary:
      switch (e.binary_op()) {
        case BinaryOp::add:
        case BinaryOp::sub:
          return 1;
        case BinaryOp::mul:
        case BinaryOp::div:
          return 2;
        case BinaryOp::pow:
          return 4;
      }
  }
  return 0;
}

using NameFn = std::function<std::string(int)>;

void print_into(std::string& out, const Expr& e, const NameFn& names,
                int min_prec) {
  const bool wrap = precedence(e) < min_prec;
  if (wrap) out += '(';
  switch (e.kind()) {
    case Expr::Kind::constant:
      out += format_double(e.value());
      break;
    case Expr::Kind::variable:
      out += names(e.variable_index());
      break;
    case Expr::Kind::unary:
      if (e.unary_op() == UnaryOp::neg) {
        out += '-';
        print_into(out, e.operand(), names, 3);
      } else {
        out += name(e.unary_op());
        out += '(';
        print_into(out, e.operand(), names, 0);
        out += ')';
      }
      break;
    case Expr::Kind::binary: {
      const BinaryOp op = e.binary_op();
      if (op == BinaryOp::pow) {
        print_into(out, e.lhs(), names, 5);
        out += '^';
        const double p = e.rhs().value();
        if (std::signbit(p)) {
          out += "(-" + format_double(-p) + ")";
        } else {
          out += format_double(p);
        }
        break;
      }
      const int prec = precedence(e);
      print_into(out, e.lhs(), names, prec);
      switch (op) {
        case BinaryOp::add: out += " + "; break;
        case BinaryOp::sub: out += " - "; break;
        case BinaryOp::mul: out += " * "; break;
        case BinaryOp::div: out += " / "; break;
        case BinaryOp::pow: break;
      }
      // Left-associative: the right operand needs strictly tighter binding.
      print_into(out, e.rhs(), names, prec == 1 ? 2 : 3);
      break;
    }
  }
  if (wrap) out += ')';
}

}  // namespace

std::string print(const Expr& expr, const Chart& chart) {
  if (expr.max_variable_index() >= chart.dim()) {
    throw std::invalid_argument("expression references a coordinate outside the chart");
  }
  std::string out;
  print_into(out, expr, [&](int i) { return chart.names()[i]; }, 0);
  return out;
}

namespace detail {

std::string describe(const Expr& expr) {
  std::string out;
  print_into(out, expr, [](int i) { return "x" + std::to_string(i); }, 0);
  return out;
}

std::optional<std::string> unary_domain_violation(UnaryOp op, double x,
                                                  int order) {
  switch (op) {
    case UnaryOp::ln:
      if (!(x > 0.0)) return "ln of non-positive value " + format_double(x);
      break;
    case UnaryOp::sqrt:
      if (x < 0.0) return "sqrt of negative value " + format_double(x);
      if (x == 0.0 && order > 0) return "sqrt is not differentiable at 0";
      break;
    default:
      break;
  }
  return std::nullopt;
}

std::optional<std::string> pow_domain_violation(double base, double exponent,
                                                int order) {
  const bool integral = std::trunc(exponent) == exponent;
  if (base < 0.0 && !integral) {
    return "negative base " + format_double(base) + " with non-integer exponent";
  }
  if (base == 0.0) {
    double coeff = 1.0;
    for (int k = 0; k <= order; ++k) {
      if (k > 0) coeff *= exponent - (k - 1);
      if (coeff != 0.0 && exponent - k < 0.0) {
        return k == 0 ? "zero raised to a negative power"
                      : "power is not differentiable at 0";
      }
    }
  }
  return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Chart& chart) : text_(text), chart_(chart) {}

  Expr parse_all() {
    Expr e = parse_expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError("syntax error: " + message, pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
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
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' before end of input");
      fail(std::string("expected '") + c + "'");
    }
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinaryOp::add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::binary(BinaryOp::sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinaryOp::mul, lhs, parse_factor());
      } else if (accept('/')) {
        lhs = Expr::binary(BinaryOp::div, lhs, parse_factor());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_factor() {
    if (accept('-')) return Expr::unary(UnaryOp::neg, parse_factor());
    Expr base = parse_primary();
    skip_space();
    if (accept('^')) {
      return Expr::binary(BinaryOp::pow, base, Expr::constant(parse_exponent()));
    }
    return base;
  }

  double parse_exponent() {
    skip_space();
    const std::size_t start = pos_;
    const bool negative = accept('-');
    Expr e = parse_primary();
    if (accept('^')) {
      e = Expr::binary(BinaryOp::pow, e, Expr::constant(parse_exponent()));
    }
    if (e.max_variable_index() >= 0) {
      throw ParseError("pow with non-constant exponent", start);
    }
    double value = 0.0;
    try {
      value = evaluate(e, {});
    } catch (const DomainError& err) {
      throw ParseError(std::string("invalid exponent: ") + err.what(), start);
    }
    return negative ? -value : value;
  }

  Expr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      const std::string_view ident = text_.substr(start, pos_ - start);
      if (auto f = function_named(ident)) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != '(') {
          fail("function '" + std::string(ident) + "' must be followed by '('");
        }
        ++pos_;
        Expr arg = parse_expr();
        expect(')');
        return Expr::unary(*f, arg);
      }
      if (auto idx = chart_.index_of(ident)) return Expr::variable(*idx);
      throw ParseError("unknown identifier '" + std::string(ident) + "'", start);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        digits();
      } else {
        pos_ = save;
      }
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
      throw ParseError("malformed number '" + std::string(first, last) + "'", start);
    }
    return Expr::constant(value);
  }

  std::string_view text_;
  const Chart& chart_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const Chart& chart) {
  return Parser(text, chart).parse_all();
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

[[noreturn]] void domain_fail(const std::string& what, const Expr& at) {
  throw DomainError("domain error: " + what + " in '" + detail::describe(at) + "'");
}

double eval_node(const Expr& e, std::span<const double> x) {
  double r = 0.0;
  switch (e.kind()) {
    case Expr::Kind::constant:
      return e.value();
    case Expr::Kind::variable: {
      const int i = e.variable_index();
      if (static_cast<std::size_t>(i) >= x.size()) {
        throw std::invalid_argument("point has fewer coordinates than the expression uses");
      }
      return x[static_cast<std::size_t>(i)];
    }
    case Expr::Kind::unary: {
      const double a = eval_node(e.operand(), x);
      if (auto bad = detail::unary_domain_violation(e.unary_op(), a, 0)) domain_fail(*bad, e);
      switch (e.unary_op()) {
        case UnaryOp::neg: r = -a; break;
        case UnaryOp::sin: r = std::sin(a); break;
        case UnaryOp::cos: r = std::cos(a); break;
        case UnaryOp::ln: r = std::log(a); break;
        case UnaryOp::exp: r = std::exp(a); break;
        case UnaryOp::sqrt: r = std::sqrt(a); break;
      }
      break;
    }
    case Expr::Kind::binary: {
      const double a = eval_node(e.lhs(), x);
      const double b = eval_node(e.rhs(), x);
      switch (e.binary_op()) {
        case BinaryOp::add: r = a + b; break;
        case BinaryOp::sub: r = a - b; break;
        case BinaryOp::mul: r = a * b; break;
        case BinaryOp::div:
          if (b == 0.0) domain_fail("division by zero", e);
          r = a / b;
          break;
        case BinaryOp::pow:
          if (auto bad = detail::pow_domain_violation(a, b, 0)) domain_fail(*bad, e);
          r = std::pow(a, b);
          break;
      }
      break;
    }
  }
  if (!std::isfinite(r)) domain_fail("non-finite result", e);
  return r;
}

}  // namespace

double evaluate(const Expr& expr, std::span<const double> point) {
  return eval_node(expr, point);
}

}  // namespace tinv
