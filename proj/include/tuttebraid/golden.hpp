#pragma once

#include <string>

#include "tuttebraid/rat.hpp"

namespace tuttebraid {

/// Element a + b·τ of ℚ(√5), τ the golden ratio (τ² = τ + 1).
class Golden {
 public:
  Golden() = default;
  Golden(int v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Golden(const Rat& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Golden(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {}

  static Golden tau() { return Golden(0, 1); }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_rational() const { return b_.is_zero(); }

  /// Exact sign of the real embedding.
  int sign() const;
  /// Galois conjugate τ ↦ 1 − τ.
  Golden conjugate() const { return Golden(a_ + b_, -b_); }
  /// Field norm a² + ab − b².
  Rat norm() const { return a_ * a_ + a_ * b_ - b_ * b_; }
  Golden inverse() const;
  double to_double() const;
  std::string str() const;

  Golden& operator+=(const Golden& o) { a_ += o.a_; b_ += o.b_; return *this; }
  Golden& operator-=(const Golden& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
  Golden& operator*=(const Golden& o);
  Golden& operator/=(const Golden& o) { return *this *= o.inverse(); }

  friend Golden operator+(Golden x, const Golden& y) { return x += y; }
  friend Golden operator-(Golden x, const Golden& y) { return x -= y; }
  friend Golden operator*(Golden x, const Golden& y) { return x *= y; }
  friend Golden operator/(Golden x, const Golden& y) { return x /= y; }
  Golden operator-() const { return Golden(-a_, -b_); }

  friend bool operator==(const Golden& x, const Golden& y) = default;

 private:
  Rat a_;
  Rat b_;
};

int compare(const Golden& x, const Golden& y);
Golden pow(const Golden& base, long exponent);
Golden abs(const Golden& x);

struct GoldenConstants {
  Golden tau;        // (1+√5)/2
  Golden B5;         // 1 + τ
  Golden B10;        // τ√5 = τ + 2
  Golden sqrt5;      // 2τ − 1
  Golden bracket_d;  // 2cos(π/5) = τ
};

GoldenConstants golden_constants();

}  // namespace tuttebraid
