#include "pfrac/oracle.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <tuple>
#include <stdexcept>

#include "pfrac/postprocess.hpp"

namespace pfrac {

DensePolynomial::DensePolynomial(std::vector<Rational> coefficients)
    : coefficients_(std::move(coefficients)) {
  trim();
}

void DensePolynomial::trim() {
  while (!coefficients_.empty() && coefficients_.back().is_zero()) coefficients_.pop_back();
}

DensePolynomial DensePolynomial::monomial(unsigned degree, const Rational& c) {
  std::vector<Rational> cs(degree + 1);
  cs[degree] = c;
  return DensePolynomial(std::move(cs));
}

DensePolynomial DensePolynomial::linear_power(const Rational& root, unsigned power) {
  DensePolynomial factor({-root, Rational(1)});
  DensePolynomial out = monomial(0);
  for (unsigned i = 0; i < power; ++i) out = out * factor;
  return out;
}

Rational DensePolynomial::coefficient(std::size_t i) const {
  return i < coefficients_.size() ? coefficients_[i] : Rational(0);
}

Rational DensePolynomial::evaluate(const Rational& x) const {
  Rational acc;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

DensePolynomial operator+(const DensePolynomial& a, const DensePolynomial& b) {
  std::vector<Rational> out(std::max(a.coefficients_.size(), b.coefficients_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coefficient(i) + b.coefficient(i);
  return DensePolynomial(std::move(out));
}

DensePolynomial operator-(const DensePolynomial& a, const DensePolynomial& b) {
  std::vector<Rational> out(std::max(a.coefficients_.size(), b.coefficients_.size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coefficient(i) - b.coefficient(i);
  return DensePolynomial(std::move(out));
}

DensePolynomial operator*(const DensePolynomial& a, const DensePolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coefficients_.size() + b.coefficients_.size() - 1);
  for (std::size_t i = 0; i < a.coefficients_.size(); ++i) {
    for (std::size_t j = 0; j < b.coefficients_.size(); ++j) {
      out[i + j] += a.coefficients_[i] * b.coefficients_[j];
    }
  }
  return DensePolynomial(std::move(out));
}

DensePolynomial::DivMod DensePolynomial::divmod(const DensePolynomial& divisor) const {
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  std::vector<Rational> rem = coefficients_;
  const std::size_t dn = divisor.coefficients_.size();
  if (rem.size() < dn) return {DensePolynomial(), *this};
  std::vector<Rational> quo(rem.size() - dn + 1);
  const Rational& lead = divisor.coefficients_.back();
  for (std::size_t k = quo.size(); k-- > 0;) {
    Rational c = rem[k + dn - 1] / lead;
    quo[k] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < dn; ++j) rem[k + j] -= c * divisor.coefficients_[j];
  }
  return {DensePolynomial(std::move(quo)), DensePolynomial(std::move(rem))};
}

namespace {

// Solves a square system in place by Gauss-Jordan elimination.
std::vector<Rational> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col].is_zero()) ++pivot;
    if (pivot == n) throw std::logic_error("oracle: singular system");
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    const Rational inv = Rational(1) / a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || a[row][col].is_zero()) continue;
      const Rational f = a[row][col];
      for (std::size_t j = col; j < n; ++j) a[row][j] -= f * a[col][j];
      b[row] -= f * b[col];
    }
  }
  return b;
}

}  // namespace

Decomposition oracle_decompose(unsigned l, std::span<const Rational> roots,
                               std::span<const unsigned> multiplicities) {
  if (roots.size() != multiplicities.size() || roots.empty()) {
    throw ContractViolation("oracle_decompose: roots and multiplicities must be non-empty "
                            "and of equal length");
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (multiplicities[i] == 0) throw ContractViolation("oracle_decompose: zero multiplicity");
    for (std::size_t k = 0; k < i; ++k) {
      if (roots[k] == roots[i]) throw ContractViolation("oracle_decompose: repeated root");
    }
  }

  DensePolynomial q = DensePolynomial::monomial(0);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    q = q * DensePolynomial::linear_power(roots[i], multiplicities[i]);
  }
  const auto m = static_cast<std::size_t>(q.degree());
  auto [quotient, remainder] = DensePolynomial::monomial(l).divmod(q);

  std::vector<std::pair<std::size_t, unsigned>> unknowns;
  std::vector<std::vector<Rational>> matrix(m, std::vector<Rational>(m));
  for (std::size_t i = 0; i < roots.size(); ++i) {
    for (unsigned j = 1; j <= multiplicities[i]; ++j) {
      auto [column, rest] = q.divmod(DensePolynomial::linear_power(roots[i], j));
      if (!rest.is_zero()) throw std::logic_error("oracle: inexact cofactor division");
      for (std::size_t deg = 0; deg < m; ++deg) {
        matrix[deg][unknowns.size()] = column.coefficient(deg);
      }
      unknowns.emplace_back(i, j);
    }
  }
  std::vector<Rational> rhs(m);
  for (std::size_t deg = 0; deg < m; ++deg) rhs[deg] = remainder.coefficient(deg);
  std::vector<Rational> solution = solve(std::move(matrix), std::move(rhs));

  Decomposition out;
  for (const Rational& r : roots) out.roots.emplace_back(r);
  for (std::size_t deg = 0; deg < quotient.coefficients().size(); ++deg) {
    const Rational& c = quotient.coefficients()[deg];
    if (!c.is_zero()) out.monomials.push_back({static_cast<unsigned>(deg), Expr(c)});
  }
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    if (!solution[u].is_zero()) {
      out.poles.push_back({unknowns[u].first, unknowns[u].second, Expr(solution[u])});
    }
  }
  return out;
}

Rational evaluate_spec(const RationalFunctionSpec& spec, const Bindings& bindings,
                       const Rational& x) {
  Rational out = pow(x, spec.numerator_degree());
  for (const Factor& f : spec.factors()) {
    out /= pow(x - evaluate(f.root, bindings), f.multiplicity);
  }
  return out;
}

Rational evaluate_decomposition(const Decomposition& d, const Bindings& bindings,
                                const Rational& x) {
  Rational out;
  for (const MonomialTerm& t : d.monomials) {
    out += evaluate(t.coefficient, bindings) * pow(x, t.degree);
  }
  for (const PoleTerm& t : d.poles) {
    Rational shift = x - evaluate(d.roots.at(t.pole_index), bindings);
    out += evaluate(t.coefficient, bindings) / pow(shift, t.order);
  }
  return out;
}

namespace {

class RationalDraw {
 public:
  explicit RationalDraw(std::uint64_t seed) : engine_(seed), dist_(1, 1000000) {}
  Rational operator()() { return Rational(Integer(dist_(engine_)), Integer(dist_(engine_))); }

 private:
  std::mt19937_64 engine_;
  std::uniform_int_distribution<long> dist_;
};

constexpr int kMaxRedraws = 1000;

}  // namespace

SubstitutionReport check_by_substitution(const RationalFunctionSpec& spec,
                                         const Decomposition& d, std::size_t trials,
                                         std::uint64_t seed, std::size_t points_per_trial) {
  std::set<std::string> symbols;
  for (const Factor& f : spec.factors()) collect_symbols(f.root, symbols);
  for (const Expr& r : d.roots) collect_symbols(r, symbols);
  for (const MonomialTerm& t : d.monomials) collect_symbols(t.coefficient, symbols);
  for (const PoleTerm& t : d.poles) collect_symbols(t.coefficient, symbols);

  RationalDraw draw(seed);
  SubstitutionReport report;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Bindings bindings;
    std::vector<Rational> poles;
    for (int attempt = 0;; ++attempt) {
      if (attempt == kMaxRedraws) {
        throw Error("check_by_substitution: could not draw non-colliding roots");
      }
      bindings.clear();
      for (const std::string& s : symbols) bindings[s] = draw();
      poles.clear();
      for (const Factor& f : spec.factors()) poles.push_back(evaluate(f.root, bindings));
      std::vector<Rational> sorted = poles;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) break;
    }
    for (const Expr& r : d.roots) {
      try {
        poles.push_back(evaluate(r, bindings));
      } catch (const DivisionByZero&) {
      }
    }
    ++report.trials;

    for (std::size_t p = 0; p < points_per_trial; ++p) {
      Rational x = draw();
      while (std::find(poles.begin(), poles.end(), x) != poles.end()) x = draw();
      ++report.points;
      Rational expected = evaluate_spec(spec, bindings, x);
      std::optional<Rational> actual;
      try {
        actual = evaluate_decomposition(d, bindings, x);
      } catch (const DivisionByZero&) {
      }
      if (!actual || *actual != expected) {
        report.passed = false;
        report.counterexample = Counterexample{bindings, x, expected, actual};
        return report;
      }
    }
  }
  return report;
}

bool same_terms(const Decomposition& a, const Decomposition& b) {
  Decomposition ca = collect(a);
  Decomposition cb = collect(b);
  if (ca.monomials.size() != cb.monomials.size() || ca.poles.size() != cb.poles.size()) {
    return false;
  }
  for (std::size_t i = 0; i < ca.monomials.size(); ++i) {
    if (ca.monomials[i].degree != cb.monomials[i].degree ||
        !(ca.monomials[i].coefficient == cb.monomials[i].coefficient)) {
      return false;
    }
  }
  auto key = [](const Decomposition& d, const PoleTerm& t) {
    return std::make_tuple(d.roots[t.pole_index], t.order);
  };
  std::vector<const PoleTerm*> pa, pb;
  for (const PoleTerm& t : ca.poles) pa.push_back(&t);
  for (const PoleTerm& t : cb.poles) pb.push_back(&t);
  std::sort(pa.begin(), pa.end(),
            [&](const PoleTerm* x, const PoleTerm* y) { return key(ca, *x) < key(ca, *y); });
  std::sort(pb.begin(), pb.end(),
            [&](const PoleTerm* x, const PoleTerm* y) { return key(cb, *x) < key(cb, *y); });
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (!(key(ca, *pa[i]) == key(cb, *pb[i])) || !(pa[i]->coefficient == pb[i]->coefficient)) {
      return false;
    }
  }
  return true;
}

std::string SubstitutionReport::describe() const {
  std::ostringstream os;
  if (passed) {
    os << "substitution check passed (" << trials << " trials, " << points << " points)";
    return os.str();
  }
  os << "substitution check FAILED after " << points << " points";
  if (counterexample) {
    const Counterexample& c = *counterexample;
    os << "\n  bindings:";
    for (const auto& [name, value] : c.bindings) os << " " << name << "=" << value;
    os << "\n  x = " << c.x << "\n  expected " << c.expected << "\n  actual   ";
    if (c.actual) {
      os << *c.actual;
    } else {
      os << "(division by zero)";
    }
  }
  return os.str();
}

}  // namespace pfrac
