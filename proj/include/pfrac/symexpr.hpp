#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pfrac/errors.hpp"
#include "pfrac/exact_arith.hpp"

namespace pfrac {

// Immutable symbolic expression over named symbols and exact rationals.
//
// Values built through sum()/product()/power() or the arithmetic operators are
// kept in canonical form:
//   * sums hold no nested sums, products hold no nested products;
//   * a product carries at most one constant factor, which comes first;
//   * like terms and like bases are merged, zero terms and unit factors vanish;
//   * power exponents are never 0 or 1, and a power's base is a symbol or sum;
//   * a constant times a single sum is distributed into the sum;
//   * children are sorted Constant < Symbol < Power < Product < Sum,
//     recursively.
// Under these rules structural equality is expression identity. The raw_*
// builders bypass normalization and exist for constructing unnormalized input
// to canonicalize().
class Expr {
 public:
  enum class Kind : std::uint8_t { kConstant, kSymbol, kPower, kProduct, kSum };

  Expr();  // the constant 0
  Expr(const Rational& value);  // NOLINT(google-explicit-constructor)
  Expr(long value) : Expr(Rational(value)) {}  // NOLINT

  static Expr constant(const Rational& value) { return Expr(value); }
  static Expr symbol(std::string name);

  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(const Expr& base, long exponent);

  static Expr raw_sum(std::vector<Expr> terms);
  static Expr raw_product(std::vector<Expr> factors);
  static Expr raw_power(const Expr& base, long exponent);

  Kind kind() const;
  bool is_constant() const { return kind() == Kind::kConstant; }
  bool is_zero() const;
  bool is_one() const;

  // Accessors; each requires the matching kind.
  const Rational& value() const;
  const std::string& name() const;
  const Expr& base() const;
  long exponent() const;
  std::span<const Expr> operands() const;

  // Identity of the shared node, usable as a memoization key.
  const void* id() const { return node_.get(); }

  friend Expr operator+(const Expr& a, const Expr& b);
  friend Expr operator-(const Expr& a, const Expr& b);
  friend Expr operator*(const Expr& a, const Expr& b);
  // Throws DivisionByZero when b is the constant 0.
  friend Expr operator/(const Expr& a, const Expr& b);
  Expr operator-() const;

  friend bool operator==(const Expr& a, const Expr& b);
  friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

using Bindings = std::map<std::string, Rational, std::less<>>;

class UnboundSymbol : public Error {
 public:
  explicit UnboundSymbol(const std::string& name)
      : Error("unbound symbol '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Rebuilds a (possibly raw) tree through the canonical constructors.
// Idempotent.
Expr canonicalize(const Expr& raw);

// Exact value under the bindings. Throws UnboundSymbol or DivisionByZero.
Rational evaluate(const Expr& e, const Bindings& bindings);

// Distributes products over sums and multiplies out positive powers of sums.
// Negative powers are kept, with their bases expanded.
Expr expand(const Expr& e);

bool contains_symbol(const Expr& e, std::string_view name);
void collect_symbols(const Expr& e, std::set<std::string>& out);

// True when e renders with a leading minus sign in infix form.
bool has_negative_sign(const Expr& e);

// Infix rendering that parse_expr() maps back to the same canonical Expr:
// explicit '*', '^', parenthesized negative exponents and fractional factors,
// spaces around binary '+' and '-'.
std::string to_infix(const Expr& e);

std::ostream& operator<<(std::ostream& os, const Expr& e);

}  // namespace pfrac
