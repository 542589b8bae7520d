#include "pfrac/root_parser.hpp"

#include <gtest/gtest.h>

#include <random>

namespace pfrac {
namespace {

Rational q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }

TEST(ParseExprTest, BareSymbol) {
  Expr e = parse_expr("a1");
  ASSERT_EQ(e.kind(), Expr::Kind::kSymbol);
  EXPECT_EQ(e.name(), "a1");
}

TEST(ParseExprTest, FoldsConstants) {
  Expr b = Expr::symbol("b");
  EXPECT_EQ(parse_expr("-(3*b + 1)/2"), Expr(q(-3, 2)) * b + Expr(q(-1, 2)));
}

TEST(ParseExprTest, IncompleteInput) {
  try {
    parse_expr("2 +");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().start, 3u);
  }
}

TEST(ParseExprTest, Precedence) {
  Expr a = Expr::symbol("a");
  EXPECT_EQ(parse_expr("-a^2"), -Expr::power(a, 2));
  EXPECT_EQ(parse_expr("2^3^2"), Expr(512));
  EXPECT_EQ(parse_expr("a^-2"), Expr::power(a, -2));
  EXPECT_EQ(parse_expr("a^(-2)"), Expr::power(a, -2));
  EXPECT_EQ(parse_expr("1 - 2 - 3"), Expr(-4));
  EXPECT_EQ(parse_expr("12/4/3"), Expr(1));
  EXPECT_EQ(parse_expr("x_a*x_b + 1"), Expr::symbol("x_a") * Expr::symbol("x_b") + Expr(1));
  EXPECT_EQ(parse_expr("123456789012345678901234567890"),
            Expr(Rational(Integer("123456789012345678901234567890"))));
}

TEST(ParseExprTest, Errors) {
  EXPECT_THROW(parse_expr(""), ParseError);
  EXPECT_THROW(parse_expr("a^b"), ParseError);
  EXPECT_THROW(parse_expr("a^(1/2)"), ParseError);
  EXPECT_THROW(parse_expr("a/0"), ParseError);
  EXPECT_THROW(parse_expr("a/(b-b)"), ParseError);
  EXPECT_THROW(parse_expr("(a"), ParseError);
  EXPECT_THROW(parse_expr("a b"), ParseError);
  EXPECT_THROW(parse_expr("1.5"), ParseError);
  EXPECT_THROW(parse_expr("f(a)"), ParseError);
  EXPECT_THROW(parse_expr("a^999999999999"), ParseError);
  EXPECT_THROW(parse_expr(std::string(10000, '(') + "a" + std::string(10000, ')')), ParseError);
  try {
    parse_expr("a + $");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.span().start, 4u);
    EXPECT_EQ(e.span().end, 5u);
  }
}

TEST(ParseRootListTest, Symbols) {
  std::vector<Expr> roots = parse_root_list("a1,a2,a3");
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_EQ(roots[2], Expr::symbol("a3"));
}

TEST(ParseRootListTest, LiteralsAndWhitespace) {
  std::vector<Expr> roots = parse_root_list("1/2, -3");
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_EQ(roots[0], Expr(q(1, 2)));
  EXPECT_EQ(roots[1], Expr(-3));
}

TEST(ParseRootListTest, EmptyEntry) {
  try {
    parse_root_list("a,,b");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.entry(), 2u);
    EXPECT_EQ(e.span().start, 2u);
  }
  EXPECT_THROW(parse_root_list(""), ParseError);
  EXPECT_THROW(parse_root_list("a,"), ParseError);
}

TEST(ParseRootListTest, NestedCommasAndEntrySpans) {
  EXPECT_THROW(parse_root_list("(a,b)"), ParseError);
  try {
    parse_root_list("a, b +");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.entry(), 2u);
    EXPECT_EQ(e.span().start, 6u);
  }
}

TEST(ParseFuzzTest, NeverCrashesOnArbitraryBytes) {
  std::mt19937_64 rng(99);
  const std::string alphabet = "ab01 +-*/^(),_x9\t\xff";
  for (int i = 0; i < 20000; ++i) {
    std::string s;
    std::size_t len = rng() % 24;
    for (std::size_t k = 0; k < len; ++k) {
      if (rng() % 8 == 0) {
        s += static_cast<char>(rng() % 256);
      } else {
        s += alphabet[rng() % alphabet.size()];
      }
    }
    try {
      parse_root_list(s);
    } catch (const Error&) {
    }
  }
}

}  // namespace
}  // namespace pfrac
