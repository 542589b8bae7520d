#include "pfrac/symexpr.hpp"

#include <algorithm>
#include <ostream>
#include <unordered_map>
#include <utility>

namespace pfrac {

struct Expr::Node {
  Kind kind = Kind::kConstant;
  Rational value;
  std::string name;
  std::vector<Expr> operands;  // a power keeps its base in operands[0]
  long exponent = 0;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hash_rational(const Rational& r) {
  std::size_t h = mpz_get_ui(r.numerator().get_mpz_t());
  h = mix(h, static_cast<std::size_t>(r.sign() + 1));
  return mix(h, mpz_get_ui(r.denominator().get_mpz_t()));
}

long checked_mul(long a, long b) {
  long out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error("exponent overflow");
  return out;
}

long checked_add(long a, long b) {
  long out;
  if (__builtin_add_overflow(a, b, &out)) throw Error("exponent overflow");
  return out;
}

}  // namespace

Expr::Expr() : Expr(Rational(0)) {}

Expr::Expr(const Rational& value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kConstant;
  node->value = value;
  node->hash = mix(0, hash_rational(value));
  node_ = std::move(node);
}

Expr Expr::symbol(std::string name) {
  if (name.empty()) throw ContractViolation("symbol name must not be empty");
  auto node = std::make_shared<Node>();
  node->kind = Kind::kSymbol;
  node->hash = mix(1, std::hash<std::string>{}(name));
  node->name = std::move(name);
  return Expr(std::move(node));
}

Expr Expr::raw_sum(std::vector<Expr> terms) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kSum;
  std::size_t h = 4;
  for (const Expr& t : terms) h = mix(h, t.node_->hash);
  node->hash = h;
  node->operands = std::move(terms);
  return Expr(std::move(node));
}

Expr Expr::raw_product(std::vector<Expr> factors) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kProduct;
  std::size_t h = 3;
  for (const Expr& f : factors) h = mix(h, f.node_->hash);
  node->hash = h;
  node->operands = std::move(factors);
  return Expr(std::move(node));
}

Expr Expr::raw_power(const Expr& base, long exponent) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kPower;
  node->hash = mix(mix(2, base.node_->hash), static_cast<std::size_t>(exponent));
  node->operands = {base};
  node->exponent = exponent;
  return Expr(std::move(node));
}

Expr::Kind Expr::kind() const { return node_->kind; }

bool Expr::is_zero() const { return is_constant() && node_->value.is_zero(); }
bool Expr::is_one() const { return is_constant() && node_->value.is_one(); }

const Rational& Expr::value() const {
  if (kind() != Kind::kConstant) throw ContractViolation("value() on non-constant");
  return node_->value;
}

const std::string& Expr::name() const {
  if (kind() != Kind::kSymbol) throw ContractViolation("name() on non-symbol");
  return node_->name;
}

const Expr& Expr::base() const {
  if (kind() != Kind::kPower) throw ContractViolation("base() on non-power");
  return node_->operands.front();
}

long Expr::exponent() const {
  if (kind() != Kind::kPower) throw ContractViolation("exponent() on non-power");
  return node_->exponent;
}

std::span<const Expr> Expr::operands() const { return node_->operands; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  return (a <=> b) == 0;
}

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const Expr::Node& x = *a.node_;
  const Expr::Node& y = *b.node_;
  if (x.kind != y.kind) return x.kind <=> y.kind;
  switch (x.kind) {
    case Expr::Kind::kConstant:
      return x.value <=> y.value;
    case Expr::Kind::kSymbol: {
      int c = x.name.compare(y.name);
      return c <=> 0;
    }
    case Expr::Kind::kPower: {
      auto c = x.operands[0] <=> y.operands[0];
      if (c != 0) return c;
      return x.exponent <=> y.exponent;
    }
    case Expr::Kind::kProduct:
    case Expr::Kind::kSum: {
      std::size_t n = std::min(x.operands.size(), y.operands.size());
      for (std::size_t i = 0; i < n; ++i) {
        auto c = x.operands[i] <=> y.operands[i];
        if (c != 0) return c;
      }
      return x.operands.size() <=> y.operands.size();
    }
  }
  return std::strong_ordering::equal;
}

Expr Expr::power(const Expr& base, long exponent) {
  if (exponent == 0) return Expr(1);
  if (exponent == 1) return base;
  switch (base.kind()) {
    case Kind::kConstant:
      return Expr(pow(base.value(), exponent));
    case Kind::kPower:
      return power(base.base(), checked_mul(base.exponent(), exponent));
    case Kind::kProduct: {
      std::vector<Expr> factors;
      factors.reserve(base.operands().size());
      for (const Expr& f : base.operands()) factors.push_back(power(f, exponent));
      return product(std::move(factors));
    }
    case Kind::kSymbol:
    case Kind::kSum:
      break;
  }
  return raw_power(base, exponent);
}

Expr Expr::product(std::vector<Expr> factors) {
  Rational coefficient(1);
  std::map<Expr, long> exponents;

  auto absorb = [&](auto&& self, const Expr& f) -> void {
    switch (f.kind()) {
      case Kind::kConstant:
        coefficient *= f.value();
        break;
      case Kind::kProduct:
        for (const Expr& g : f.operands()) self(self, g);
        break;
      case Kind::kPower: {
        const Expr& b = f.base();
        if (b.kind() != Kind::kSymbol && b.kind() != Kind::kSum) {
          self(self, power(b, f.exponent()));
          break;
        }
        long& e = exponents[b];
        e = checked_add(e, f.exponent());
        break;
      }
      case Kind::kSymbol:
      case Kind::kSum: {
        long& e = exponents[f];
        e = checked_add(e, 1);
        break;
      }
    }
  };
  for (const Expr& f : factors) absorb(absorb, f);

  if (coefficient.is_zero()) return Expr(0);

  std::vector<Expr> out;
  out.reserve(exponents.size() + 1);
  for (const auto& [b, e] : exponents) {
    if (e != 0) out.push_back(power(b, e));
  }
  if (out.empty()) return Expr(coefficient);
  if (out.size() == 1) {
    if (coefficient.is_one()) return out.front();
    if (out.front().kind() == Kind::kSum) {
      std::vector<Expr> terms;
      terms.reserve(out.front().operands().size());
      Expr c(coefficient);
      for (const Expr& t : out.front().operands()) terms.push_back(product({c, t}));
      return sum(std::move(terms));
    }
  }
  std::sort(out.begin(), out.end());
  if (!coefficient.is_one()) out.insert(out.begin(), Expr(coefficient));
  return raw_product(std::move(out));
}

Expr Expr::sum(std::vector<Expr> terms) {
  Rational constant(0);
  std::map<Expr, Rational> coefficients;

  auto absorb = [&](auto&& self, const Expr& t) -> void {
    switch (t.kind()) {
      case Kind::kConstant:
        constant += t.value();
        break;
      case Kind::kSum:
        for (const Expr& u : t.operands()) self(self, u);
        break;
      case Kind::kProduct: {
        auto ops = t.operands();
        if (ops.front().is_constant()) {
          Expr rest = ops.size() == 2
                          ? ops[1]
                          : raw_product(std::vector<Expr>(ops.begin() + 1, ops.end()));
          coefficients[rest] += ops.front().value();
        } else {
          coefficients[t] += Rational(1);
        }
        break;
      }
      case Kind::kSymbol:
      case Kind::kPower:
        coefficients[t] += Rational(1);
        break;
    }
  };
  for (const Expr& t : terms) absorb(absorb, t);

  std::vector<Expr> out;
  out.reserve(coefficients.size() + 1);
  if (!constant.is_zero()) out.push_back(Expr(constant));
  for (const auto& [rest, c] : coefficients) {
    if (c.is_zero()) continue;
    if (c.is_one()) {
      out.push_back(rest);
    } else if (rest.kind() == Kind::kProduct) {
      std::vector<Expr> ops;
      ops.reserve(rest.operands().size() + 1);
      ops.push_back(Expr(c));
      ops.insert(ops.end(), rest.operands().begin(), rest.operands().end());
      out.push_back(raw_product(std::move(ops)));
    } else {
      out.push_back(raw_product({Expr(c), rest}));
    }
  }
  if (out.empty()) return Expr(0);
  if (out.size() == 1) return out.front();
  std::sort(out.begin(), out.end());
  return raw_sum(std::move(out));
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }

Expr operator/(const Expr& a, const Expr& b) {
  if (b.is_zero()) throw DivisionByZero();
  return Expr::product({a, Expr::power(b, -1)});
}

Expr Expr::operator-() const { return product({Expr(-1), *this}); }

Expr canonicalize(const Expr& raw) {
  switch (raw.kind()) {
    case Expr::Kind::kConstant:
    case Expr::Kind::kSymbol:
      return raw;
    case Expr::Kind::kPower:
      return Expr::power(canonicalize(raw.base()), raw.exponent());
    case Expr::Kind::kProduct:
    case Expr::Kind::kSum: {
      std::vector<Expr> ops;
      ops.reserve(raw.operands().size());
      for (const Expr& o : raw.operands()) ops.push_back(canonicalize(o));
      return raw.kind() == Expr::Kind::kSum ? Expr::sum(std::move(ops))
                                            : Expr::product(std::move(ops));
    }
  }
  return raw;
}

namespace {

class Evaluator {
 public:
  explicit Evaluator(const Bindings& bindings) : bindings_(bindings) {}

  Rational operator()(const Expr& e) {
    switch (e.kind()) {
      case Expr::Kind::kConstant:
        return e.value();
      case Expr::Kind::kSymbol: {
        auto it = bindings_.find(e.name());
        if (it == bindings_.end()) throw UnboundSymbol(e.name());
        return it->second;
      }
      default:
        break;
    }
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    Rational out;
    if (e.kind() == Expr::Kind::kPower) {
      out = pow((*this)(e.base()), e.exponent());
    } else if (e.kind() == Expr::Kind::kProduct) {
      out = Rational(1);
      for (const Expr& f : e.operands()) out *= (*this)(f);
    } else {
      for (const Expr& t : e.operands()) out += (*this)(t);
    }
    memo_.emplace(e.id(), out);
    return out;
  }

 private:
  const Bindings& bindings_;
  std::unordered_map<const void*, Rational> memo_;
};

std::vector<Expr> as_terms(const Expr& e) {
  if (e.kind() == Expr::Kind::kSum) return {e.operands().begin(), e.operands().end()};
  return {e};
}

Expr multiply_expanded(const Expr& a, const Expr& b) {
  std::vector<Expr> ta = as_terms(a);
  std::vector<Expr> tb = as_terms(b);
  std::vector<Expr> out;
  out.reserve(ta.size() * tb.size());
  for (const Expr& x : ta) {
    for (const Expr& y : tb) out.push_back(Expr::product({x, y}));
  }
  return Expr::sum(std::move(out));
}

}  // namespace

Rational evaluate(const Expr& e, const Bindings& bindings) {
  return Evaluator(bindings)(e);
}

Expr expand(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::kConstant:
    case Expr::Kind::kSymbol:
      return e;
    case Expr::Kind::kSum: {
      std::vector<Expr> terms;
      for (const Expr& t : e.operands()) terms.push_back(expand(t));
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::kProduct: {
      Expr acc(1);
      for (const Expr& f : e.operands()) acc = multiply_expanded(acc, expand(f));
      return acc;
    }
    case Expr::Kind::kPower: {
      Expr base = expand(e.base());
      long n = e.exponent();
      if (n < 0 || base.kind() != Expr::Kind::kSum) return Expr::power(base, n);
      Expr result(1);
      Expr square = base;
      while (n > 0) {
        if (n & 1) result = multiply_expanded(result, square);
        n >>= 1;
        if (n > 0) square = multiply_expanded(square, square);
      }
      return result;
    }
  }
  return e;
}

bool contains_symbol(const Expr& e, std::string_view name) {
  switch (e.kind()) {
    case Expr::Kind::kConstant:
      return false;
    case Expr::Kind::kSymbol:
      return e.name() == name;
    default:
      return std::any_of(e.operands().begin(), e.operands().end(),
                         [&](const Expr& o) { return contains_symbol(o, name); });
  }
}

void collect_symbols(const Expr& e, std::set<std::string>& out) {
  if (e.kind() == Expr::Kind::kSymbol) {
    out.insert(e.name());
    return;
  }
  for (const Expr& o : e.operands()) collect_symbols(o, out);
}

bool has_negative_sign(const Expr& e) {
  if (e.kind() == Expr::Kind::kConstant) return e.value().sign() < 0;
  if (e.kind() == Expr::Kind::kProduct) {
    const Expr& first = e.operands().front();
    return first.is_constant() && first.value().sign() < 0;
  }
  return false;
}

namespace {

void render(const Expr& e, std::string& out);

void render_factor(const Expr& e, std::string& out) {
  if (e.kind() == Expr::Kind::kSum) {
    out += '(';
    render(e, out);
    out += ')';
  } else {
    render(e, out);
  }
}

void render_product(std::span<const Expr> ops, std::string& out) {
  std::size_t start = 0;
  if (ops.front().is_constant()) {
    const Rational& c = ops.front().value();
    if (c.sign() < 0) out += '-';
    Rational mag = c.abs();
    if (!mag.is_one()) {
      if (mag.is_integer()) {
        out += mag.to_string();
      } else {
        out += '(' + mag.to_string() + ')';
      }
      out += '*';
    }
    start = 1;
  }
  // "c*(s)*t" would reparse as (c*s)*t, and c*s alone distributes into the
  // sum. Grouping the non-constant factors keeps the constant separate.
  bool group = start == 1 && ops.size() > 2 && ops[1].kind() == Expr::Kind::kSum;
  if (group) out += '(';
  for (std::size_t i = start; i < ops.size(); ++i) {
    if (i > start) out += '*';
    render_factor(ops[i], out);
  }
  if (group) out += ')';
}

void render(const Expr& e, std::string& out) {
  switch (e.kind()) {
    case Expr::Kind::kConstant:
      out += e.value().to_string();
      return;
    case Expr::Kind::kSymbol:
      out += e.name();
      return;
    case Expr::Kind::kPower:
      render_factor(e.base(), out);
      out += '^';
      if (e.exponent() < 0) {
        out += '(' + std::to_string(e.exponent()) + ')';
      } else {
        out += std::to_string(e.exponent());
      }
      return;
    case Expr::Kind::kProduct:
      render_product(e.operands(), out);
      return;
    case Expr::Kind::kSum: {
      bool first = true;
      for (const Expr& t : e.operands()) {
        if (first) {
          render(t, out);
          first = false;
        } else if (has_negative_sign(t)) {
          out += " - ";
          render(-t, out);
        } else {
          out += " + ";
          render(t, out);
        }
      }
      return;
    }
  }
}

}  // namespace

std::string to_infix(const Expr& e) {
  std::string out;
  render(e, out);
  return out;
}

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << to_infix(e); }

}  // namespace pfrac
