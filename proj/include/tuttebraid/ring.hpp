#pragma once

#include <map>
#include <string>
#include <utility>

#include <gmpxx.h>

#include "tuttebraid/cyc20.hpp"
#include "tuttebraid/golden.hpp"
#include "tuttebraid/laurent.hpp"
#include "tuttebraid/rat.hpp"

namespace tuttebraid {

/// Integer polynomial in two variables, used to carry the full Tutte coefficient matrix.
class BiPoly {
 public:
  using Terms = std::map<std::pair<int, int>, mpz_class>;
  BiPoly() = default;
  BiPoly(int c);  // NOLINT(google-explicit-constructor)
  static BiPoly x() { return monomial(1, 0); }
  static BiPoly y() { return monomial(0, 1); }
  static BiPoly monomial(int i, int j, const mpz_class& c = 1);
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  mpz_class coeff(int i, int j) const;
  BiPoly& operator+=(const BiPoly& o);
  BiPoly& operator*=(const BiPoly& o);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator*(BiPoly a, const BiPoly& b) { return a *= b; }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

inline bool ring_is_zero(const Rat& v) { return v.is_zero(); }
inline bool ring_is_zero(const Golden& v) { return v.is_zero(); }
inline bool ring_is_zero(const Cyc20& v) { return v.is_zero(); }
inline bool ring_is_zero(const LaurentA& v) { return v.is_zero(); }
inline bool ring_is_zero(const BiPoly& v) { return v.is_zero(); }
inline bool ring_is_zero(const CDouble& v) { return v == CDouble(0.0, 0.0); }

template <class R>
R ring_from_mpz(const mpz_class& c);
template <>
inline Rat ring_from_mpz(const mpz_class& c) { return Rat(c); }
template <>
inline Golden ring_from_mpz(const mpz_class& c) { return Golden(Rat(c)); }
template <>
inline Cyc20 ring_from_mpz(const mpz_class& c) { return Cyc20(Rat(c)); }
template <>
inline LaurentA ring_from_mpz(const mpz_class& c) { return LaurentA::monomial(0, c); }
template <>
inline BiPoly ring_from_mpz(const mpz_class& c) { return BiPoly::monomial(0, 0, c); }
template <>
inline CDouble ring_from_mpz(const mpz_class& c) { return {c.get_d(), 0.0}; }

template <class R>
R ring_pow(R base, long e) {
  R out(1);
  while (e > 0) {
    if (e & 1) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

}  // namespace tuttebraid
