#include "pfrac/pfd_core.hpp"

#include <map>

#include "pfrac/exact_arith.hpp"

namespace pfrac {

DuplicateRootError::DuplicateRootError(std::size_t first, std::size_t second,
                                       const Expr& root)
    : Error("roots " + std::to_string(first + 1) + " and " + std::to_string(second + 1) +
            " coincide (" + to_infix(root) + ")"),
      first_(first),
      second_(second) {}

ReservedSymbolError::ReservedSymbolError(std::size_t index, const Expr& root)
    : Error("root " + std::to_string(index + 1) + " (" + to_infix(root) +
            ") mentions the decomposition variable '" + std::string(kVariable) + "'"),
      index_(index) {}

RationalFunctionSpec::RationalFunctionSpec(unsigned numerator_degree,
                                           std::vector<Factor> factors)
    : numerator_degree_(numerator_degree), factors_(std::move(factors)) {
  if (factors_.empty()) throw ContractViolation("spec needs at least one factor");
  std::vector<Expr> expanded;
  expanded.reserve(factors_.size());
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const Factor& f = factors_[i];
    if (f.multiplicity == 0) {
      throw ContractViolation("multiplicity of factor " + std::to_string(i + 1) +
                              " must be positive");
    }
    if (contains_symbol(f.root, kVariable)) throw ReservedSymbolError(i, f.root);
    denominator_degree_ += f.multiplicity;
    expanded.push_back(expand(f.root));
    for (std::size_t k = 0; k < i; ++k) {
      if (expanded[k] == expanded[i]) throw DuplicateRootError(k, i, f.root);
    }
  }
}

std::vector<Expr> RationalFunctionSpec::roots() const {
  std::vector<Expr> out;
  out.reserve(factors_.size());
  for (const Factor& f : factors_) out.push_back(f.root);
  return out;
}

namespace {

// Memoized building blocks for one factor's composition walk.
class FactorTables {
 public:
  FactorTables(const RationalFunctionSpec& spec, std::size_t i) {
    const auto factors = spec.factors();
    const Expr& root = factors[i].root;
    unsigned depth = factors[i].multiplicity - 1;
    unsigned l = spec.numerator_degree();
    for (unsigned d = 0; d <= std::min(l, depth); ++d) {
      root_powers_.push_back(Expr::power(root, static_cast<long>(l - d)));
      numerator_binomials_.push_back(Rational(binomial(l, d)));
    }
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (k == i) continue;
      Expr diff = root - factors[k].root;
      long mk = factors[k].multiplicity;
      std::vector<Expr> powers;
      std::vector<Rational> weights;
      for (unsigned j = 0; j <= depth; ++j) {
        powers.push_back(Expr::power(diff, -(mk + static_cast<long>(j))));
        Rational w(binomial(mk + j - 1, j));
        weights.push_back(j % 2 == 0 ? w : -w);
      }
      other_powers_.push_back(std::move(powers));
      other_weights_.push_back(std::move(weights));
    }
  }

  // parts = (j_{-1}, j_0, j_k for k != i in factor order)
  Expr term(const Composition& parts) const {
    Rational weight = numerator_binomials_[parts[0]];
    std::vector<Expr> factors;
    factors.reserve(parts.size());
    factors.push_back(root_powers_[parts[0]]);
    for (std::size_t k = 0; k + 2 < parts.size(); ++k) {
      weight *= other_weights_[k][parts[k + 2]];
      factors.push_back(other_powers_[k][parts[k + 2]]);
    }
    factors.push_back(Expr(weight));
    return Expr::product(std::move(factors));
  }

 private:
  std::vector<Expr> root_powers_;
  std::vector<Rational> numerator_binomials_;
  std::vector<std::vector<Expr>> other_powers_;
  std::vector<std::vector<Rational>> other_weights_;
};

using PoleKey = std::pair<std::size_t, unsigned>;

struct Accumulator {
  std::map<unsigned, std::vector<Expr>> monomials;
  std::map<PoleKey, std::vector<Expr>> poles;

  void add(const Decomposition& d, std::span<const std::size_t> root_map, const Expr& scale) {
    for (const MonomialTerm& t : d.monomials) {
      monomials[t.degree].push_back(scale.is_one() ? t.coefficient : scale * t.coefficient);
    }
    for (const PoleTerm& t : d.poles) {
      poles[{root_map[t.pole_index], t.order}].push_back(
          scale.is_one() ? t.coefficient : scale * t.coefficient);
    }
  }

  void finish(Decomposition& out) {
    for (auto& [degree, terms] : monomials) {
      Expr c = Expr::sum(std::move(terms));
      if (!c.is_zero()) out.monomials.push_back({degree, std::move(c)});
    }
    for (auto& [key, terms] : poles) {
      Expr c = Expr::sum(std::move(terms));
      if (!c.is_zero()) out.poles.push_back({key.first, key.second, std::move(c)});
    }
  }
};

}  // namespace

Decomposition decompose_proper(const RationalFunctionSpec& spec, DecomposeStats* stats) {
  if (!spec.is_proper()) {
    throw ContractViolation("decompose_proper needs l < m (l = " +
                            std::to_string(spec.numerator_degree()) +
                            ", m = " + std::to_string(spec.denominator_degree()) + ")");
  }
  const auto factors = spec.factors();
  const unsigned n = static_cast<unsigned>(factors.size());
  const unsigned l = spec.numerator_degree();

  Decomposition out;
  out.roots = spec.roots();
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned mi = factors[i].multiplicity;
    FactorTables tables(spec, i);
    std::vector<std::vector<Expr>> by_order(mi);
    std::size_t emitted = 0;
    // Lexicographic order puts j_{-1} first, so once it exceeds l every
    // remaining composition has a vanishing C(l, j_{-1}).
    for (const Composition& parts : compositions(mi - 1, n + 1)) {
      if (parts[0] > l) break;
      by_order[parts[1]].push_back(tables.term(parts));
      ++emitted;
    }
    if (stats != nullptr) {
      Integer total = binomial(mi - 1 + n, n);
      stats->candidate_terms += emitted;
      stats->pruned_terms += total.get_ui() - emitted;
    }
    for (unsigned j = 0; j < mi; ++j) {
      Expr c = Expr::sum(std::move(by_order[j]));
      if (!c.is_zero()) out.poles.push_back({i, j + 1, std::move(c)});
    }
  }
  return out;
}

Decomposition poly_div(const Expr& coefficient, unsigned p, unsigned q, const Expr& root) {
  if (q == 0) throw ContractViolation("poly_div needs q >= 1");
  Decomposition out;
  out.roots = {root};
  const long lp = p;
  const long lq = q;
  for (long i = 0; i <= lp - lq; ++i) {
    Expr c = Expr::product({coefficient, Expr(Rational(binomial(p - 1 - i, lq - 1))),
                            Expr::power(root, lp - lq - i)});
    if (!c.is_zero()) out.monomials.push_back({static_cast<unsigned>(i), std::move(c)});
  }
  for (long i = std::max(0L, lp - lq + 1); i <= lp; ++i) {
    Expr c = Expr::product(
        {coefficient, Expr(Rational(binomial(p, i))), Expr::power(root, i)});
    if (!c.is_zero()) out.poles.push_back({0, static_cast<unsigned>(lq + i - lp), std::move(c)});
  }
  return out;
}

Decomposition decompose(const RationalFunctionSpec& spec) {
  if (spec.is_proper()) return decompose_proper(spec);

  const unsigned m = spec.denominator_degree();
  const unsigned shift = spec.numerator_degree() - (m - 1);
  std::vector<Factor> factors(spec.factors().begin(), spec.factors().end());
  Decomposition proper = decompose_proper(RationalFunctionSpec(m - 1, std::move(factors)));

  Accumulator acc;
  const Expr one(1);
  for (const PoleTerm& t : proper.poles) {
    std::size_t index = t.pole_index;
    acc.add(poly_div(t.coefficient, shift, t.order, proper.roots[index]),
            std::span<const std::size_t>(&index, 1), one);
  }
  Decomposition out;
  out.roots = std::move(proper.roots);
  acc.finish(out);
  return out;
}

Decomposition decompose_batch(std::span<const WeightedSpec> terms) {
  Decomposition out;
  Accumulator acc;
  for (const WeightedSpec& w : terms) {
    if (contains_symbol(w.weight, kVariable)) {
      throw ContractViolation("batch weight " + to_infix(w.weight) +
                              " mentions the decomposition variable");
    }
    if (w.weight.is_zero()) continue;
    Decomposition d = decompose(w.spec);
    std::vector<std::size_t> root_map;
    root_map.reserve(d.roots.size());
    for (const Expr& r : d.roots) {
      std::size_t k = 0;
      while (k < out.roots.size() && !(out.roots[k] == r)) ++k;
      if (k == out.roots.size()) out.roots.push_back(r);
      root_map.push_back(k);
    }
    acc.add(d, root_map, w.weight);
  }
  acc.finish(out);
  return out;
}

}  // namespace pfrac
