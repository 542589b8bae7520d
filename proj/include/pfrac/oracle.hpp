#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pfrac/exact_arith.hpp"
#include "pfrac/pfd_core.hpp"

namespace pfrac {

// Dense univariate polynomial over the rationals; coefficients()[i] is the
// coefficient of x^i. The zero polynomial has no coefficients.
class DensePolynomial {
 public:
  DensePolynomial() = default;
  explicit DensePolynomial(std::vector<Rational> coefficients);

  static DensePolynomial monomial(unsigned degree, const Rational& c = Rational(1));
  // (x - root)^power
  static DensePolynomial linear_power(const Rational& root, unsigned power);

  std::span<const Rational> coefficients() const { return coefficients_; }
  bool is_zero() const { return coefficients_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coefficients_.size()) - 1; }
  Rational coefficient(std::size_t i) const;
  Rational evaluate(const Rational& x) const;

  friend DensePolynomial operator+(const DensePolynomial& a, const DensePolynomial& b);
  friend DensePolynomial operator-(const DensePolynomial& a, const DensePolynomial& b);
  friend DensePolynomial operator*(const DensePolynomial& a, const DensePolynomial& b);
  friend bool operator==(const DensePolynomial&, const DensePolynomial&) = default;

  struct DivMod;
  // Throws DivisionByZero for a zero divisor.
  DivMod divmod(const DensePolynomial& divisor) const;

 private:
  void trim();
  std::vector<Rational> coefficients_;
};

struct DensePolynomial::DivMod {
  DensePolynomial quotient;
  DensePolynomial remainder;
};

// Classical decomposition by undetermined coefficients: solves
//   x^l = q(x) Q(x) + sum_ij c_ij Q(x) / (x - a_i)^j
// for the c_ij with exact Gaussian elimination. Improper inputs are first
// reduced by long division, which supplies q. Roots must be distinct.
Decomposition oracle_decompose(unsigned l, std::span<const Rational> roots,
                               std::span<const unsigned> multiplicities);

struct Counterexample {
  Bindings bindings;
  Rational x;
  Rational expected;
  std::optional<Rational> actual;  // empty when the decomposition hit a pole
};

struct SubstitutionReport {
  bool passed = true;
  std::size_t trials = 0;
  std::size_t points = 0;
  std::optional<Counterexample> counterexample;

  std::string describe() const;
};

// Evaluates spec and d exactly at random points. Each trial binds every symbol
// to a random rational with numerator and denominator in [1, 10^6] (redrawing
// when two roots collide), then checks points_per_trial random x values that
// avoid every root. Deterministic for a given seed.
SubstitutionReport check_by_substitution(const RationalFunctionSpec& spec,
                                         const Decomposition& d, std::size_t trials,
                                         std::uint64_t seed,
                                         std::size_t points_per_trial = 1);

// Term-for-term structural equality of two decompositions after collect(),
// matching poles by root expression rather than by index.
bool same_terms(const Decomposition& a, const Decomposition& b);

// Value of the decomposition at x under the bindings.
Rational evaluate_decomposition(const Decomposition& d, const Bindings& bindings,
                                const Rational& x);

// Value of x^l / prod (x - a_k)^{m_k} under the bindings.
Rational evaluate_spec(const RationalFunctionSpec& spec, const Bindings& bindings,
                       const Rational& x);

}  // namespace pfrac
