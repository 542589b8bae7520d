#include "pfrac/exact_arith.hpp"

#include <cctype>
#include <ostream>

namespace pfrac {

Rational::Rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DivisionByZero();
  value_.get_num() = num;
  value_.get_den() = den;
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view digits, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && i < digits.size() && (digits[i] == '-' || digits[i] == '+')) ++i;
    if (i == digits.size()) throw Error("malformed rational: '" + std::string(text) + "'");
    for (std::size_t j = i; j < digits.size(); ++j) {
      if (!std::isdigit(static_cast<unsigned char>(digits[j]))) {
        throw Error("malformed rational: '" + std::string(text) + "'");
      }
    }
    std::string s(digits.substr(digits[0] == '+' ? 1 : 0));
    return Integer(s, 10);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, true));
  return Rational(parse_int(text.substr(0, slash), true),
                  parse_int(text.substr(slash + 1), false));
}

Rational Rational::operator-() const {
  Rational r;
  r.value_ = -value_;
  return r;
}

Rational& Rational::operator+=(const Rational& rhs) {
  value_ += rhs.value_;
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  value_ -= rhs.value_;
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  value_ *= rhs.value_;
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.is_zero()) throw DivisionByZero();
  value_ /= rhs.value_;
  return *this;
}

Rational Rational::abs() const {
  Rational r;
  r.value_ = ::abs(value_);
  return r;
}

std::string Rational::to_string() const {
  if (is_integer()) return numerator().get_str();
  return numerator().get_str() + "/" + denominator().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.to_string();
}

Rational pow(const Rational& base, long exponent) {
  if (exponent == 0) return Rational(1);
  if (base.is_zero()) {
    if (exponent < 0) throw DivisionByZero("zero raised to a negative power");
    return Rational(0);
  }
  unsigned long e = exponent < 0 ? 0UL - static_cast<unsigned long>(exponent)
                                 : static_cast<unsigned long>(exponent);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.numerator().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.denominator().get_mpz_t(), e);
  if (exponent < 0) std::swap(num, den);
  return Rational(num, den);
}

Integer binomial(unsigned long n, long k) {
  if (k < 0 || static_cast<unsigned long>(k) > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, static_cast<unsigned long>(k));
  return out;
}

Integer multinomial(unsigned long m, std::span<const unsigned> parts) {
  unsigned long running = 0;
  Integer out = 1;
  for (unsigned p : parts) {
    running += p;
    if (running > m) break;
    out *= binomial(running, p);
  }
  if (running != m) {
    throw ContractViolation("multinomial: parts sum to " + std::to_string(running) +
                            ", expected " + std::to_string(m));
  }
  return out;
}

CompositionRange::CompositionRange(unsigned total, unsigned parts)
    : total_(total), parts_(parts) {
  if (parts == 0) throw ContractViolation("compositions: need at least one part");
}

CompositionRange::Iterator::Iterator(unsigned total, unsigned parts)
    : current_(parts, 0), done_(false) {
  current_.back() = total;
}

CompositionRange::Iterator& CompositionRange::Iterator::operator++() {
  // Advance the rightmost slot that still has mass to its right, then push
  // the remainder of that mass (minus one) into the last slot.
  unsigned suffix = current_.back();
  for (std::size_t i = current_.size() - 1; i-- > 0;) {
    if (suffix > 0) {
      ++current_[i];
      current_.back() = suffix - 1;
      return *this;
    }
    suffix += current_[i];
    current_[i] = 0;
  }
  done_ = true;
  return *this;
}

}  // namespace pfrac
