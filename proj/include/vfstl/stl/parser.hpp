#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "vfstl/stl/formula.hpp"

namespace vfstl::stl {

/// Malformed formula text. position is a 0-based byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Interval with t1 > t2.
class IntervalError : public ParseError {
 public:
  using ParseError::ParseError;
};

/// Parses formula text.
///
///   formula := term { "|" term }
///   term    := unary { "&" unary }
///   unary   := "!" unary | "F[" INT "," INT "]" unary | "G[" INT "," INT "]" unary | atom
///   atom    := ( "(" formula ")" | pred ) [ "U[" INT "," INT "]" unary ]
///   pred    := IDENT CMP NUMBER,  CMP := ">" | ">=" | "<" | "<="
///
/// Whitespace is insignificant. A parenthesized group may be the left
/// operand of U, so `(!(a>0)) U[0,2] b>0` is an until whose left side is a
/// negation, while `!(a>0) U[0,2] b>0` negates the whole until.
Formula parse_formula(std::string_view text);

/// Canonical text. parse_formula(format_formula(f)) == f for every tree.
std::string format_formula(const Formula& f);

}  // namespace vfstl::stl
