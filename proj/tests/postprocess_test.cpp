#include "pfrac/postprocess.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "pfrac/oracle.hpp"
#include "pfrac/root_parser.hpp"
#include "support/generators.hpp"

namespace pfrac {
namespace {

Expr sym(const char* s) { return Expr::symbol(s); }

class StringSink : public ByteSink {
 public:
  bool write(std::string_view bytes) override {
    data += bytes;
    ++writes;
    return true;
  }
  std::string data;
  int writes = 0;
};

class FailingSink : public ByteSink {
 public:
  explicit FailingSink(int ok_writes) : ok_writes_(ok_writes) {}
  bool write(std::string_view) override { return ok_writes_-- > 0; }

 private:
  int ok_writes_;
};

Decomposition three_pole_example() {
  return decompose(RationalFunctionSpec(0, {{Expr(-1), 1}, {Expr(-2), 1}, {Expr(-3), 1}}));
}

TEST(CollectTest, MergesAndCancels) {
  Decomposition d;
  d.roots = {sym("a")};
  d.poles = {{0, 1, sym("c1")}, {0, 1, sym("c2")}};
  Decomposition c = collect(d);
  ASSERT_EQ(c.poles.size(), 1u);
  EXPECT_EQ(c.poles[0].coefficient, sym("c1") + sym("c2"));

  d.poles = {{0, 1, Expr(1)}, {0, 1, Expr(-1)}};
  EXPECT_TRUE(collect(d).empty());
}

TEST(CollectTest, Idempotent) {
  Decomposition d = decompose(RationalFunctionSpec(4, {{sym("a"), 2}, {sym("b"), 1}}));
  Decomposition once = collect(d);
  Decomposition twice = collect(once);
  EXPECT_EQ(serialize(once, {OutputFormat::Mode::kStructured}),
            serialize(twice, {OutputFormat::Mode::kStructured}));
  EXPECT_EQ(serialize(once), serialize(d));
}

TEST(CollectTest, FoldsDuplicateRootEntriesAndPreservesValue) {
  testing::Gen gen(31);
  Decomposition d;
  d.roots = {sym("a"), sym("b"), sym("a")};
  for (int i = 0; i < 12; ++i) {
    Expr c = canonicalize(gen.raw_expr(2));
    d.poles.push_back({static_cast<std::size_t>(gen.uniform(0, 2)),
                       static_cast<unsigned>(gen.uniform(1, 3)), c});
    d.monomials.push_back({static_cast<unsigned>(gen.uniform(0, 2)), c});
  }
  Decomposition c = collect(d);
  for (const PoleTerm& t : c.poles) EXPECT_NE(t.pole_index, 2u);
  for (int i = 0; i < 10; ++i) {
    Bindings bind = gen.bindings();
    bind["a"] = gen.small_rational(10) + Rational(100);
    bind["b"] = gen.small_rational(10) + Rational(200);
    Rational x = gen.small_rational(10);
    try {
      EXPECT_EQ(evaluate_decomposition(c, bind, x), evaluate_decomposition(d, bind, x));
    } catch (const DivisionByZero&) {
    }
  }
}

TEST(SerializeTest, ThreeSimplePolesInfix) {
  EXPECT_EQ(serialize(three_pole_example()),
            "(1/2)*(x + 1)^(-1) - (x + 2)^(-1) + (1/2)*(x + 3)^(-1)");
}

TEST(SerializeTest, Empty) {
  EXPECT_EQ(serialize(Decomposition{}), "0");
  EXPECT_EQ(serialize(Decomposition{}, {OutputFormat::Mode::kStructured}), "");
}

TEST(SerializeTest, StructuredSinglePole) {
  Decomposition d = decompose(RationalFunctionSpec(0, {{sym("a"), 1}}));
  EXPECT_EQ(serialize(d, {OutputFormat::Mode::kStructured}), "P 1 1 1\n");
  EXPECT_EQ(serialize(d), "(x - a)^(-1)");
}

TEST(SerializeTest, MonomialsFirstAndSigns) {
  Decomposition d = decompose(RationalFunctionSpec(3, {{sym("a"), 1}}));
  EXPECT_EQ(serialize(d), "a^2 + a*x + x^2 + a^3*(x - a)^(-1)");
  EXPECT_EQ(serialize(d, {OutputFormat::Mode::kStructured}),
            "M 0 a^2\nM 1 a\nM 2 1\nP 1 1 a^3\n");
  Decomposition neg;
  neg.roots = {Expr(0), sym("a") + sym("b")};
  neg.poles = {{0, 2, Expr(-3)}, {1, 1, sym("a") - sym("b")}};
  EXPECT_EQ(serialize(neg), "-3*x^(-2) + (a - b)*(x - a - b)^(-1)");
}

TEST(SerializeTest, ExpandOption) {
  Decomposition d;
  d.roots = {sym("c")};
  d.poles = {{0, 1, parse_expr("a*(a+b)")}};
  EXPECT_EQ(serialize(d), "a*(a + b)*(x - c)^(-1)");
  EXPECT_EQ(serialize(d, {OutputFormat::Mode::kInfix, true}), "(a^2 + a*b)*(x - c)^(-1)");
}

TEST(SerializeTest, InfixOutputParsesBackToTheSameFunction) {
  RationalFunctionSpec spec(5, {{sym("a"), 2}, {parse_expr("b/2 + 1"), 2}});
  Decomposition d = decompose(spec);
  Expr whole = parse_expr(serialize(d));
  testing::Gen gen(32);
  for (int i = 0; i < 10; ++i) {
    Bindings bind{{"a", gen.small_rational(30)}, {"b", gen.small_rational(30) + Rational(90)}};
    Rational x = gen.small_rational(7) - Rational(500);
    Rational expected = evaluate_spec(spec, bind, x);
    bind["x"] = x;
    EXPECT_EQ(evaluate(whole, bind), expected);
  }
  for (const PoleTerm& t : d.poles) {
    EXPECT_EQ(parse_expr(to_infix(t.coefficient)), t.coefficient);
  }
}

TEST(StreamingTest, SmallCapacityMatchesSerialize) {
  Decomposition d = three_pole_example();
  StringSink sink;
  StreamBuffer buf(16);
  std::size_t n = write_streaming(d, {}, sink, buf);
  EXPECT_EQ(sink.data, serialize(d));
  EXPECT_EQ(n, sink.data.size());
  EXPECT_GT(buf.flushes(), 1u);
  EXPECT_LE(buf.peak_pending(), 16u);
}

TEST(StreamingTest, EmptyStream) {
  StringSink sink;
  StreamBuffer buf;
  EXPECT_EQ(write_streaming(Decomposition{}, {}, sink, buf), 1u);
  EXPECT_EQ(sink.data, "0");
  EXPECT_EQ(buf.flushes(), 1u);
}

TEST(StreamingTest, OversizedTermPassesThrough) {
  Integer big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 99);
  big += 7;
  ASSERT_EQ(big.get_str().size(), 100u);
  Decomposition d;
  d.roots = {sym("a"), sym("b")};
  d.poles = {{0, 1, Expr(1)}, {1, 1, Expr(Rational(big))}};
  StringSink sink;
  StreamBuffer buf(32);
  write_streaming(d, {}, sink, buf);
  EXPECT_EQ(sink.data, serialize(d));
  EXPECT_GT(buf.largest_term(), 32u);
  EXPECT_LE(buf.peak_pending(), 32u);
  EXPECT_LE(buf.peak_resident(), buf.capacity() + buf.largest_term());
}

TEST(StreamingTest, RandomCapacitiesAreByteIdentical) {
  testing::Gen gen(33);
  for (int i = 0; i < 40; ++i) {
    auto factors = gen.symbolic_factors(static_cast<unsigned>(gen.uniform(1, 4)), 3);
    unsigned m = testing::total_degree(factors);
    RationalFunctionSpec spec(static_cast<unsigned>(gen.uniform(0, 2 * m)), factors);
    Decomposition d = decompose(spec);
    OutputFormat fmt;
    if (gen.coin()) fmt.mode = OutputFormat::Mode::kStructured;
    std::size_t cap = static_cast<std::size_t>(gen.uniform(8, 4096));
    StringSink sink;
    StreamBuffer buf(cap);
    write_streaming(d, fmt, sink, buf);
    EXPECT_EQ(sink.data, serialize(d, fmt));
    EXPECT_LE(buf.peak_pending(), cap);
  }
}

TEST(StreamingTest, SinkFailureReportsProgress) {
  Decomposition d = three_pole_example();
  FailingSink sink(1);
  StreamBuffer buf(8);
  try {
    write_streaming(d, {}, sink, buf);
    FAIL();
  } catch (const StreamWriteError& e) {
    EXPECT_GT(e.bytes_written(), 0u);
    EXPECT_LT(e.bytes_written(), serialize(d).size());
  }
  EXPECT_THROW(StreamBuffer(0), ContractViolation);
}

TEST(StreamingTest, OstreamSink) {
  std::ostringstream os;
  OstreamSink sink(os);
  StreamBuffer buf(10);
  write_streaming(three_pole_example(), {}, sink, buf);
  EXPECT_EQ(os.str(), serialize(three_pole_example()));
}

}  // namespace
}  // namespace pfrac
