#include "rbk/kernel_expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>

namespace rbk {

ExprPtr ExprNode::number(double value) {
  return ExprPtr(new ExprNode(Op::number, value, nullptr, nullptr));
}

ExprPtr ExprNode::variable(char name) {
  return ExprPtr(new ExprNode(name == 'j' ? Op::var_j : Op::var_k, 0.0,
                              nullptr, nullptr));
}

ExprPtr ExprNode::binary(Op op, ExprPtr lhs, ExprPtr rhs) {
  return ExprPtr(new ExprNode(op, 0.0, std::move(lhs), std::move(rhs)));
}

ExprPtr ExprNode::power(ExprPtr base, double exponent) {
  return ExprPtr(new ExprNode(Op::pow, exponent, std::move(base), nullptr));
}

double ExprNode::eval(double j, double k) const {
  switch (op_) {
    case Op::number: return value_;
    case Op::var_j: return j;
    case Op::var_k: return k;
    case Op::add: return lhs_->eval(j, k) + rhs_->eval(j, k);
    case Op::sub: return lhs_->eval(j, k) - rhs_->eval(j, k);
    case Op::mul: return lhs_->eval(j, k) * rhs_->eval(j, k);
    case Op::div: return lhs_->eval(j, k) / rhs_->eval(j, k);
    case Op::pow: return std::pow(lhs_->eval(j, k), value_);
    case Op::min: return std::fmin(lhs_->eval(j, k), rhs_->eval(j, k));
    case Op::max: return std::fmax(lhs_->eval(j, k), rhs_->eval(j, k));
  }
  return 0.0;  // unreachable
}

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class Parser {
public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprPtr run() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("end of input or operator");
    return e;
  }

private:
  std::string_view src_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& expected) {
    throw SyntaxError(pos_, expected);
  }

  void skip_ws() {
    while (pos_ < src_.size() &&
           std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) fail(what);
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      if (accept('+'))
        e = ExprNode::binary(ExprNode::Op::add, e, term());
      else if (accept('-'))
        e = ExprNode::binary(ExprNode::Op::sub, e, term());
      else
        return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = factor();
    for (;;) {
      if (accept('*'))
        e = ExprNode::binary(ExprNode::Op::mul, e, factor());
      else if (accept('/'))
        e = ExprNode::binary(ExprNode::Op::div, e, factor());
      else
        return e;
    }
  }

  ExprPtr factor() {
    ExprPtr b = base();
    if (accept('^')) {
      skip_ws();
      return ExprNode::power(b, number_literal());
    }
    return b;
  }

  ExprPtr base() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      expect(')', "')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
      return ExprNode::number(number_literal());
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    fail("number, '(', 'j', 'k', 'min' or 'max'");
  }

  ExprPtr identifier() {
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           std::isalpha(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    std::string name(src_.substr(start, pos_ - start));
    if (name == "j" || name == "k") return ExprNode::variable(name[0]);
    if (name == "min" || name == "max") {
      ExprNode::Op op =
          name == "min" ? ExprNode::Op::min : ExprNode::Op::max;
      expect('(', "'('");
      ExprPtr a = expr();
      expect(',', "','");
      ExprPtr b = expr();
      expect(')', "')'");
      return ExprNode::binary(op, a, b);
    }
    throw UnknownIdentifier(start, name);
  }

  double number_literal() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           std::isdigit(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
    }
    if (pos_ == start || (pos_ == start + 1 && src_[start] == '.'))
      fail("number");
    return std::stod(std::string(src_.substr(start, pos_ - start)));
  }
};

}  // namespace

ExprPtr parse_expression(std::string_view source) {
  if (source.empty()) throw SyntaxError(0, "nonempty expression");
  return Parser(source).run();
}

std::string to_string(const ExprNode& node) {
  using Op = ExprNode::Op;
  switch (node.op()) {
    case Op::number: return format_number(node.value());
    case Op::var_j: return "j";
    case Op::var_k: return "k";
    case Op::pow:
      return "(" + to_string(*node.lhs()) + ")^" + format_number(node.value());
    case Op::min:
      return "min(" + to_string(*node.lhs()) + "," + to_string(*node.rhs()) +
             ")";
    case Op::max:
      return "max(" + to_string(*node.lhs()) + "," + to_string(*node.rhs()) +
             ")";
    default: {
      const char* sym = node.op() == Op::add   ? "+"
                        : node.op() == Op::sub ? "-"
                        : node.op() == Op::mul ? "*"
                                               : "/";
      return "(" + to_string(*node.lhs()) + sym + to_string(*node.rhs()) + ")";
    }
  }
}

}  // namespace rbk
