#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pfrac/errors.hpp"
#include "pfrac/symexpr.hpp"

namespace pfrac {

// Half-open byte range [start, end) into the parsed input.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourceSpan span, std::size_t entry = 0);

  const std::string& message() const { return message_; }
  SourceSpan span() const { return span_; }
  // 1-based index into a root list, 0 when parsing a lone expression.
  std::size_t entry() const { return entry_; }

 private:
  std::string message_;
  SourceSpan span_;
  std::size_t entry_;
};

// Grammar, loosest to tightest:
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          -- right associative
//   primary := integer | identifier | '(' expr ')'
// The exponent must fold to an integer constant. The result is canonical.
Expr parse_expr(std::string_view src);

// Splits on commas outside parentheses and parses each entry.
std::vector<Expr> parse_root_list(std::string_view src);

}  // namespace pfrac
