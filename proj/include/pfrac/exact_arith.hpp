#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "pfrac/errors.hpp"

namespace pfrac {

using Integer = mpz_class;

// Exact fraction, always stored reduced with a positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(const Integer& value) : value_(value) {}  // NOLINT
  Rational(const Integer& num, const Integer& den);

  // Accepts "n" or "n/d" with an optional leading sign.
  static Rational parse(std::string_view text);

  const Integer& numerator() const { return value_.get_num(); }
  const Integer& denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rational abs() const;

  // "n" for integers, "n/d" otherwise.
  std::string to_string() const;

 private:
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

// Integer power; a zero base with a negative exponent throws DivisionByZero.
Rational pow(const Rational& base, long exponent);

// n!/(k!(n-k)!) for 0 <= k <= n, zero outside that range.
Integer binomial(unsigned long n, long k);

// m!/(p_1! ... p_r!). Throws ContractViolation unless the parts sum to m.
Integer multinomial(unsigned long m, std::span<const unsigned> parts);

using Composition = std::vector<unsigned>;

// All k-tuples of non-negative integers summing to m, in lexicographic order.
//
//   for (const Composition& c : CompositionRange(2, 3)) ...
//
// yields (0,0,2), (0,1,1), (0,2,0), (1,0,1), (1,1,0), (2,0,0).
class CompositionRange {
 public:
  struct Sentinel {};

  class Iterator {
   public:
    using value_type = Composition;
    using difference_type = std::ptrdiff_t;

    Iterator() = default;
    const Composition& operator*() const { return current_; }
    const Composition* operator->() const { return &current_; }
    Iterator& operator++();
    void operator++(int) { ++*this; }
    friend bool operator==(const Iterator& it, Sentinel) { return it.done_; }

   private:
    friend class CompositionRange;
    Iterator(unsigned total, unsigned parts);

    Composition current_;
    bool done_ = true;
  };

  // Throws ContractViolation if parts == 0.
  CompositionRange(unsigned total, unsigned parts);

  Iterator begin() const { return Iterator(total_, parts_); }
  Sentinel end() const { return {}; }

 private:
  unsigned total_;
  unsigned parts_;
};

inline CompositionRange compositions(unsigned total, unsigned parts) {
  return CompositionRange(total, parts);
}

}  // namespace pfrac
