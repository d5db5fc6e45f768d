#pragma once

#include <gmpxx.h>

#include <map>
#include <string>

#include "tuttebraid/cyc20.hpp"

namespace tuttebraid {

/// Integer Laurent polynomial in the Kauffman variable A. Zero coefficients are never stored.
class LaurentA {
 public:
  using Terms = std::map<int, mpz_class>;

  LaurentA() = default;
  LaurentA(int constant);  // NOLINT(google-explicit-constructor)
  explicit LaurentA(Terms terms);

  static LaurentA monomial(int exponent, const mpz_class& coeff = 1);
  /// δ = −A² − A⁻², the bracket loop value.
  static LaurentA loop_value();

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int min_exponent() const;
  int max_exponent() const;
  mpz_class coeff(int exponent) const;

  /// Exact quotient when `*this = ±Aᵏ · other`; returns false otherwise.
  bool monomial_ratio(const LaurentA& other, int& exponent, int& sign) const;

  /// Substitute A ↦ A^k (k may be negative).
  LaurentA substitute_power(int k) const;

  std::string str() const;

  LaurentA& operator+=(const LaurentA& o);
  LaurentA& operator-=(const LaurentA& o);
  LaurentA& operator*=(const LaurentA& o);

  friend LaurentA operator+(LaurentA x, const LaurentA& y) { return x += y; }
  friend LaurentA operator-(LaurentA x, const LaurentA& y) { return x -= y; }
  friend LaurentA operator*(LaurentA x, const LaurentA& y) { return x *= y; }
  LaurentA operator-() const;

  friend bool operator==(const LaurentA& x, const LaurentA& y) { return x.terms_ == y.terms_; }

 private:
  void add_term(int exponent, const mpz_class& c);
  Terms terms_;
};

LaurentA pow(const LaurentA& base, unsigned exponent);

/// Ring-homomorphic substitution of a Cyc20 value for A.
Cyc20 eval_laurent(const LaurentA& p, const Cyc20& a);

}  // namespace tuttebraid
