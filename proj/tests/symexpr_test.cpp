#include "pfrac/symexpr.hpp"

#include <gtest/gtest.h>

#include "pfrac/root_parser.hpp"
#include "support/generators.hpp"

namespace pfrac {
namespace {

Expr sym(const char* name) { return Expr::symbol(name); }
Rational q(long n, long d = 1) { return Rational(Integer(n), Integer(d)); }

TEST(CanonicalizeTest, FoldsConstants) {
  Expr raw = Expr::raw_product({Expr(2), sym("a"), Expr(q(1, 2))});
  EXPECT_EQ(canonicalize(raw), sym("a"));
}

TEST(CanonicalizeTest, SortsSumChildren) {
  Expr raw = Expr::raw_sum({sym("b"), sym("a")});
  Expr c = canonicalize(raw);
  ASSERT_EQ(c.kind(), Expr::Kind::kSum);
  EXPECT_EQ(c.operands()[0], sym("a"));
  EXPECT_EQ(c.operands()[1], sym("b"));
}

TEST(CanonicalizeTest, CancelsIdenticalSubtrees) {
  Expr d = sym("a") - sym("b");
  EXPECT_TRUE((d - d).is_zero());
}

TEST(CanonicalizeTest, ShapeInvariants) {
  Expr e = (sym("a") + (sym("b") + Expr(1))) * (Expr(3) * sym("c")) * Expr(q(1, 3));
  // 1/3 * 3 cancels, leaving c * (1 + a + b) with no nested product.
  ASSERT_EQ(e.kind(), Expr::Kind::kProduct);
  EXPECT_EQ(e.operands().size(), 2u);
  EXPECT_EQ(e.operands()[0], sym("c"));
  EXPECT_EQ(Expr::power(sym("a"), 1), sym("a"));
  EXPECT_TRUE(Expr::power(sym("a"), 0).is_one());
  EXPECT_EQ(Expr::power(Expr::power(sym("a"), 2), -3), Expr::power(sym("a"), -6));
  EXPECT_EQ(sym("a") * sym("a"), Expr::power(sym("a"), 2));
  EXPECT_TRUE((sym("a") * Expr::power(sym("a"), -1)).is_one());
}

TEST(CanonicalizeTest, ConstantDistributesOverLoneSum) {
  Expr e = Expr(2) * (sym("a") + sym("b"));
  EXPECT_EQ(e, Expr(2) * sym("a") + Expr(2) * sym("b"));
}

TEST(CanonicalizeTest, KindOrder) {
  Expr e = Expr::sum({sym("a") + sym("b") /* flattened */, Expr(1), Expr::power(sym("c"), 2),
                      sym("a") * sym("b")});
  ASSERT_EQ(e.kind(), Expr::Kind::kSum);
  auto ops = e.operands();
  EXPECT_EQ(ops[0].kind(), Expr::Kind::kConstant);
  EXPECT_EQ(ops[1].kind(), Expr::Kind::kSymbol);
  EXPECT_EQ(ops.back().kind(), Expr::Kind::kProduct);
}

TEST(CanonicalizeTest, IdempotentOnRandomTrees) {
  testing::Gen gen(11);
  int checked = 0;
  for (int i = 0; i < 500; ++i) {
    Expr raw = gen.raw_expr(4);
    Expr once;
    try {
      once = canonicalize(raw);
    } catch (const DivisionByZero&) {
      continue;
    }
    EXPECT_EQ(canonicalize(once), once) << to_infix(once);
    ++checked;
  }
  EXPECT_GT(checked, 400);
}

TEST(CanonicalizeTest, PreservesValueOnRandomTrees) {
  testing::Gen gen(12);
  for (int i = 0; i < 300; ++i) {
    Expr raw = gen.raw_expr(4);
    Bindings b = gen.bindings();
    Rational expected;
    try {
      expected = evaluate(raw, b);
    } catch (const DivisionByZero&) {
      continue;
    }
    EXPECT_EQ(evaluate(canonicalize(raw), b), expected) << to_infix(canonicalize(raw));
  }
}

TEST(EvaluateTest, Examples) {
  Bindings b{{"a", q(1, 2)}, {"b", q(1, 3)}};
  EXPECT_EQ(evaluate(Expr::power(sym("a") + sym("b"), 2), b), q(25, 36));
  EXPECT_TRUE((sym("a") * sym("b") - sym("b") * sym("a")).is_zero());
  EXPECT_EQ(evaluate(sym("a") * sym("b") - sym("b") * sym("a"), b), q(0));
  Bindings ones{{"a", q(1)}, {"b", q(1)}};
  EXPECT_THROW(evaluate(Expr::power(sym("a") - sym("b"), -1), ones), DivisionByZero);
}

TEST(EvaluateTest, UnboundSymbolNamed) {
  try {
    evaluate(sym("a") + sym("zeta"), Bindings{{"a", q(1)}});
    FAIL() << "expected UnboundSymbol";
  } catch (const UnboundSymbol& e) {
    EXPECT_EQ(e.name(), "zeta");
  }
}

TEST(EvaluateTest, HomomorphismOnRandomTrees) {
  testing::Gen gen(13);
  for (int i = 0; i < 300; ++i) {
    Expr x, y;
    Bindings b = gen.bindings();
    Rational vx, vy;
    try {
      x = canonicalize(gen.raw_expr(3));
      y = canonicalize(gen.raw_expr(3));
      vx = evaluate(x, b);
      vy = evaluate(y, b);
    } catch (const DivisionByZero&) {
      continue;
    }
    EXPECT_EQ(evaluate(x + y, b), vx + vy);
    EXPECT_EQ(evaluate(x * y, b), vx * vy);
    EXPECT_EQ(evaluate(x - y, b), vx - vy);
    long e = gen.uniform(0, 3);
    EXPECT_EQ(evaluate(Expr::power(x, e), b), pow(vx, e));
  }
}

TEST(EvaluateTest, EqualCanonicalFormsEvaluateEqually) {
  // Build pairs that are equal after canonicalization from different raw
  // shapes, then compare under ten binding sets each.
  testing::Gen gen(14);
  for (int i = 0; i < 100; ++i) {
    Expr raw = gen.raw_expr(3);
    Expr other = Expr::raw_sum({Expr::raw_product({Expr(q(1, 2)), raw, Expr(2)}), Expr(0)});
    Expr a, b;
    try {
      a = canonicalize(raw);
      b = canonicalize(other);
    } catch (const DivisionByZero&) {
      continue;
    }
    ASSERT_EQ(a, b);
    for (int k = 0; k < 10; ++k) {
      Bindings bind = gen.bindings();
      try {
        EXPECT_EQ(evaluate(a, bind), evaluate(b, bind));
      } catch (const DivisionByZero&) {
      }
    }
  }
}

TEST(ExpandTest, Examples) {
  Expr a = sym("a"), b = sym("b"), c = sym("c");
  EXPECT_EQ(expand((a + b) * c), a * c + b * c);
  EXPECT_EQ(expand(Expr::power(a + b, 2)),
            Expr::sum({Expr::power(a, 2), Expr(2) * a * b, Expr::power(b, 2)}));
  Expr neg = Expr::power(a - b, -2);
  EXPECT_EQ(expand(neg), neg);
}

TEST(ExpandTest, ResolvesDistributedRoots) {
  Expr a = sym("a"), b = sym("b"), c = sym("c");
  EXPECT_NE(a * (b + c), a * b + a * c);
  EXPECT_EQ(expand(a * (b + c)), expand(a * b + a * c));
}

TEST(ExpandTest, PreservesValue) {
  testing::Gen gen(15);
  for (int i = 0; i < 200; ++i) {
    Bindings b = gen.bindings();
    try {
      Expr e = canonicalize(gen.raw_expr(3));
      EXPECT_EQ(evaluate(expand(e), b), evaluate(e, b)) << to_infix(e);
    } catch (const DivisionByZero&) {
    }
  }
}

TEST(InfixTest, Rendering) {
  Expr a = sym("a"), b = sym("b");
  EXPECT_EQ(to_infix(a - b), "a - b");
  EXPECT_EQ(to_infix(Expr(q(1, 2)) * a), "(1/2)*a");
  EXPECT_EQ(to_infix(Expr::power(a - b, -2)), "(a - b)^(-2)");
  EXPECT_EQ(to_infix(-a * b), "-a*b");
  EXPECT_EQ(to_infix(Expr(q(-3, 2)) * b + Expr(q(-1, 2))), "-1/2 - (3/2)*b");
  Expr grouped = Expr::product({Expr(7), a - Expr(6), b + Expr(1)});
  EXPECT_EQ(to_infix(grouped), "7*((-6 + a)*(1 + b))");
  EXPECT_EQ(parse_expr(to_infix(grouped)), grouped);
  EXPECT_EQ(parse_expr(to_infix(-grouped)), -grouped);
}

TEST(InfixTest, RoundTripsThroughParser) {
  testing::Gen gen(16);
  for (int i = 0; i < 500; ++i) {
    Expr e;
    try {
      e = canonicalize(gen.raw_expr(4));
    } catch (const DivisionByZero&) {
      continue;
    }
    std::string text = to_infix(e);
    EXPECT_EQ(parse_expr(text), e) << text;
  }
}

}  // namespace
}  // namespace pfrac
