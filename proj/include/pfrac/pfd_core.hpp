#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pfrac/errors.hpp"
#include "pfrac/symexpr.hpp"

namespace pfrac {

// The decomposition variable. Roots and weights must not mention it.
inline constexpr std::string_view kVariable = "x";

struct Factor {
  Expr root;
  unsigned multiplicity = 1;
};

class DuplicateRootError : public Error {
 public:
  DuplicateRootError(std::size_t first, std::size_t second, const Expr& root);
  // 0-based factor indices of the colliding pair.
  std::size_t first() const { return first_; }
  std::size_t second() const { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

class ReservedSymbolError : public Error {
 public:
  ReservedSymbolError(std::size_t index, const Expr& root);
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

// x^l / prod_k (x - a_k)^{m_k} with pairwise distinct roots a_k.
class RationalFunctionSpec {
 public:
  // Throws ContractViolation on an empty factor list or a zero multiplicity,
  // ReservedSymbolError if a root mentions the variable, and
  // DuplicateRootError if two roots coincide after expansion.
  RationalFunctionSpec(unsigned numerator_degree, std::vector<Factor> factors);

  unsigned numerator_degree() const { return numerator_degree_; }
  std::span<const Factor> factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  // m = sum of multiplicities.
  unsigned denominator_degree() const { return denominator_degree_; }
  bool is_proper() const { return numerator_degree_ < denominator_degree_; }
  std::vector<Expr> roots() const;

 private:
  unsigned numerator_degree_;
  std::vector<Factor> factors_;
  unsigned denominator_degree_ = 0;
};

// coefficient / (x - roots[pole_index])^order
struct PoleTerm {
  std::size_t pole_index = 0;
  unsigned order = 1;
  Expr coefficient;
};

// coefficient * x^degree
struct MonomialTerm {
  unsigned degree = 0;
  Expr coefficient;
};

// A polynomial part plus pole terms. Pole indices refer into `roots`.
// Produced values keep monomials sorted by degree and poles by
// (pole_index, order), with at most one term per key.
struct Decomposition {
  std::vector<Expr> roots;
  std::vector<MonomialTerm> monomials;
  std::vector<PoleTerm> poles;

  bool empty() const { return monomials.empty() && poles.empty(); }
  std::size_t term_count() const { return monomials.size() + poles.size(); }
};

struct DecomposeStats {
  std::size_t candidate_terms = 0;  // compositions visited and emitted
  std::size_t pruned_terms = 0;     // compositions skipped for j_{-1} > l
};

// Closed-form decomposition of a proper spec. Each factor i walks the weak
// compositions (j_{-1}, j_0, j_k for k != i) of m_i - 1 and contributes
//   C(l, j_{-1}) a_i^{l - j_{-1}} prod_{k != i} C(m_k + j_k - 1, j_k)
//     (-1)^{j_k} (a_i - a_k)^{-(m_k + j_k)}
// to the pole of order j_0 + 1. Coefficients stay in this factored form.
// Throws ContractViolation on an improper spec.
Decomposition decompose_proper(const RationalFunctionSpec& spec,
                               DecomposeStats* stats = nullptr);

// coefficient * x^p / (x - root)^q split into its quotient polynomial and
// pole terms. The result has a single root.
Decomposition poly_div(const Expr& coefficient, unsigned p, unsigned q, const Expr& root);

// Any spec. Improper inputs are rewritten as x^{l-(m-1)} * x^{m-1}/Q, the
// proper factor is decomposed, and every pole term is pushed through
// poly_div.
Decomposition decompose(const RationalFunctionSpec& spec);

struct WeightedSpec {
  Expr weight;
  RationalFunctionSpec spec;
};

// Linear combination of specs. Poles are merged by (root, order) across
// inputs, monomials by degree; zero terms are dropped. The root table lists
// distinct roots by first appearance.
Decomposition decompose_batch(std::span<const WeightedSpec> terms);

}  // namespace pfrac
