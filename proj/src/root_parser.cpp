#include "pfrac/root_parser.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>

namespace pfrac {

namespace {

constexpr int kMaxDepth = 256;
constexpr long kMaxExponent = 100000;

std::string format_parse_message(const std::string& message, SourceSpan span,
                                 std::size_t entry) {
  std::string out;
  if (entry > 0) out += "entry " + std::to_string(entry) + ": ";
  out += message + " at offset " + std::to_string(span.start);
  return out;
}

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Parser {
 public:
  Parser(std::string_view src, std::size_t base_offset)
      : src_(src), base_(base_offset) {}

  Expr parse() {
    skip_space();
    if (pos_ == src_.size()) fail("expected an expression", pos_, pos_);
    Expr e = parse_sum();
    skip_space();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, src_[pos_]) + "'", pos_, pos_ + 1);
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, std::size_t start, std::size_t end) const {
    throw ParseError(msg, {base_ + start, base_ + end});
  }

  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth) {
        parser.fail("expression nested too deeply", parser.pos_, parser.pos_);
      }
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  Expr parse_sum() {
    DepthGuard guard(*this);
    std::vector<Expr> terms{parse_term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(parse_term());
      } else if (accept('-')) {
        terms.push_back(-parse_term());
      } else {
        break;
      }
    }
    return terms.size() == 1 ? terms.front() : Expr::sum(std::move(terms));
  }

  Expr parse_term() {
    Expr acc = parse_unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * parse_unary();
      } else if (accept('/')) {
        skip_space();
        std::size_t start = pos_;
        Expr divisor = parse_unary();
        if (divisor.is_zero()) fail("division by zero", start, pos_);
        acc = acc / divisor;
      } else {
        return acc;
      }
    }
  }

  Expr parse_unary() {
    DepthGuard guard(*this);
    if (accept('-')) return -parse_unary();
    if (accept('+')) return parse_unary();
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_primary();
    if (!accept('^')) return base;
    skip_space();
    std::size_t start = pos_;
    Expr exponent = parse_unary();
    if (!exponent.is_constant() || !exponent.value().is_integer()) {
      fail("exponent must be an integer literal", start, pos_);
    }
    const Integer& n = exponent.value().numerator();
    if (abs(n) > kMaxExponent) fail("exponent out of range", start, pos_);
    long e = n.get_si();
    if (base.is_zero() && e < 0) fail("division by zero", start, pos_);
    return Expr::power(base, e);
  }

  Expr parse_primary() {
    skip_space();
    if (pos_ == src_.size()) fail("expected a number, identifier or '('", pos_, pos_);
    char c = src_[pos_];
    std::size_t start = pos_;
    if (is_digit(c)) {
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
      return Expr(Rational(Integer(std::string(src_.substr(start, pos_ - start)), 10)));
    }
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      return Expr::symbol(std::string(src_.substr(start, pos_ - start)));
    }
    if (c == '(') {
      ++pos_;
      Expr inner = parse_sum();
      if (!accept(')')) {
        skip_space();
        fail("expected ')'", pos_, pos_);
      }
      return inner;
    }
    fail("expected a number, identifier or '(' but found '" + std::string(1, c) + "'",
         start, start + 1);
  }

  std::string_view src_;
  std::size_t base_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

ParseError::ParseError(const std::string& message, SourceSpan span, std::size_t entry)
    : Error(format_parse_message(message, span, entry)),
      message_(message),
      span_(span),
      entry_(entry) {}

Expr parse_expr(std::string_view src) { return Parser(src, 0).parse(); }

std::vector<Expr> parse_root_list(std::string_view src) {
  std::vector<SourceSpan> pieces;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] == '(') ++depth;
    if (src[i] == ')' && depth > 0) --depth;
    if (src[i] == ',' && depth == 0) {
      pieces.push_back({start, i});
      start = i + 1;
    }
  }
  pieces.push_back({start, src.size()});

  auto blank = [&](SourceSpan s) {
    for (std::size_t i = s.start; i < s.end; ++i) {
      if (!std::isspace(static_cast<unsigned char>(src[i]))) return false;
    }
    return true;
  };
  if (pieces.size() == 1 && blank(pieces.front())) {
    throw ParseError("empty root list", {0, src.size()});
  }

  std::vector<Expr> roots;
  roots.reserve(pieces.size());
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    SourceSpan s = pieces[k];
    if (blank(s)) throw ParseError("empty entry", s, k + 1);
    try {
      roots.push_back(Parser(src.substr(s.start, s.end - s.start), s.start).parse());
    } catch (const ParseError& e) {
      throw ParseError(e.message(), e.span(), k + 1);
    }
  }
  return roots;
}

}  // namespace pfrac
