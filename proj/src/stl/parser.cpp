#include "vfstl/stl/parser.hpp"

#include <cctype>
#include <charconv>
#include <system_error>

namespace vfstl::stl {

ParseError::ParseError(std::size_t position, const std::string& message)
    : std::runtime_error("parse error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = parse_formula();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c) {
    if (peek() != c) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but reached end of input");
      fail(std::string("expected '") + c + "' but found '" + text_[pos_] + "'");
    }
    ++pos_;
  }

  // True if a temporal keyword letter sits at the cursor followed by '['.
  bool at_operator(char letter) {
    if (peek() != letter) return false;
    std::size_t p = pos_ + 1;
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    return p < text_.size() && text_[p] == '[';
  }

  Formula parse_formula() {
    Formula lhs = parse_term();
    while (peek() == '|') {
      ++pos_;
      lhs = Formula::disjunction(std::move(lhs), parse_term());
    }
    return lhs;
  }

  Formula parse_term() {
    Formula lhs = parse_unary();
    while (peek() == '&') {
      ++pos_;
      lhs = Formula::conjunction(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Formula parse_unary() {
    char c = peek();
    if (c == '!') {
      ++pos_;
      return Formula::negation(parse_unary());
    }
    if (at_operator('F')) {
      ++pos_;
      Interval w = parse_interval();
      return Formula::eventually(w, parse_unary());
    }
    if (at_operator('G')) {
      ++pos_;
      Interval w = parse_interval();
      return Formula::globally(w, parse_unary());
    }
    return parse_atom();
  }

  Formula parse_atom() {
    Formula lhs = [&] {
      if (peek() == '(') {
        ++pos_;
        Formula inner = parse_formula();
        expect(')');
        return inner;
      }
      return parse_predicate();
    }();
    if (at_operator('U')) {
      ++pos_;
      Interval w = parse_interval();
      return Formula::until(w, std::move(lhs), parse_unary());
    }
    return lhs;
  }

  Interval parse_interval() {
    expect('[');
    std::size_t open = pos_;
    int lo = parse_int();
    expect(',');
    int hi = parse_int();
    expect(']');
    if (lo > hi) {
      throw IntervalError(open, "interval [" + std::to_string(lo) + "," + std::to_string(hi) +
                                    "] has t1 > t2");
    }
    return {lo, hi};
  }

  int parse_int() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected non-negative integer");
    int value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{}) {
      pos_ = start;
      fail("integer out of range");
    }
    return value;
  }

  Formula parse_predicate() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected predicate but reached end of input");
    if (!is_ident_start(text_[pos_])) fail(std::string("expected channel identifier but found '") + text_[pos_] + "'");
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    std::string channel(text_.substr(start, pos_ - start));

    skip_ws();
    std::size_t op_start = pos_;
    while (pos_ < text_.size() && std::string_view("<>=!").find(text_[pos_]) != std::string_view::npos) ++pos_;
    std::string_view op = text_.substr(op_start, pos_ - op_start);
    Comparison cmp;
    if (op == ">") {
      cmp = Comparison::Greater;
    } else if (op == ">=") {
      cmp = Comparison::GreaterEqual;
    } else if (op == "<") {
      cmp = Comparison::Less;
    } else if (op == "<=") {
      cmp = Comparison::LessEqual;
    } else {
      pos_ = op_start;
      if (op.empty()) fail("expected comparison operator after '" + channel + "'");
      fail("unknown comparison operator '" + std::string(op) + "'");
    }
    return Formula::predicate(std::move(channel), cmp, parse_number());
  }

  double parse_number() {
    skip_ws();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '+') ++pos_;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value,
                                     std::chars_format::general);
    if (ec != std::errc{} || ptr == text_.data() + pos_) {
      pos_ = start;
      fail("expected number");
    }
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_interval(Interval w) {
  return "[" + std::to_string(w.lo) + "," + std::to_string(w.hi) + "]";
}

std::string paren(const std::string& s) { return "(" + s + ")"; }

std::string format(const Formula& f);

// Operand of F, G or the right side of U: anything binary gets parentheses.
std::string format_unary_operand(const Formula& f) {
  switch (f.kind()) {
    case Kind::And:
    case Kind::Or:
    case Kind::Until:
      return paren(format(f));
    default:
      return format(f);
  }
}

std::string format(const Formula& f) {
  switch (f.kind()) {
    case Kind::Predicate:
      return f.channel() + comparison_symbol(f.comparison()) + format_number(f.threshold());
    case Kind::Not:
      return "!" + paren(format(f.operand()));
    case Kind::And: {
      const Formula& l = f.operand(0);
      const Formula& r = f.operand(1);
      std::string ls = l.kind() == Kind::Or ? paren(format(l)) : format(l);
      std::string rs = (r.kind() == Kind::Or || r.kind() == Kind::And) ? paren(format(r)) : format(r);
      return ls + " & " + rs;
    }
    case Kind::Or: {
      const Formula& r = f.operand(1);
      std::string rs = r.kind() == Kind::Or ? paren(format(r)) : format(r);
      return format(f.operand(0)) + " | " + rs;
    }
    case Kind::Until: {
      const Formula& l = f.operand(0);
      std::string ls = l.kind() == Kind::Predicate ? format(l) : paren(format(l));
      return ls + " U" + format_interval(f.interval()) + " " + format_unary_operand(f.operand(1));
    }
    case Kind::Eventually:
      return "F" + format_interval(f.interval()) + " " + format_unary_operand(f.operand());
    case Kind::Globally:
      return "G" + format_interval(f.interval()) + " " + format_unary_operand(f.operand());
  }
  return {};
}

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

std::string format_formula(const Formula& f) { return format(f); }

}  // namespace vfstl::stl
