#pragma once

#include <array>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "tuttebraid/golden.hpp"
#include "tuttebraid/rat.hpp"

namespace tuttebraid {

using CDouble = std::complex<double>;

/// Element Σ cᵢζⁱ (i < 8) of ℚ(ζ), ζ = e^{iπ/10} a primitive 20th root of unity.
/// Products are reduced modulo Φ₂₀(x) = x⁸ − x⁶ + x⁴ − x² + 1.
class Cyc20 {
 public:
  static constexpr int kDegree = 8;

  Cyc20() = default;
  Cyc20(int v) { c_[0] = Rat(v); }  // NOLINT(google-explicit-constructor)
  Cyc20(const Rat& v) { c_[0] = v; }  // NOLINT(google-explicit-constructor)
  Cyc20(const Golden& g);  // NOLINT(google-explicit-constructor)
  explicit Cyc20(std::array<Rat, kDegree> coeffs) : c_(std::move(coeffs)) {}

  /// ζᵏ for any integer k.
  static Cyc20 zeta_pow(long k);

  const std::array<Rat, kDegree>& coeffs() const { return c_; }
  const Rat& operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

  bool is_zero() const;
  bool is_rational() const;

  /// Automorphism ζ ↦ ζʲ, j coprime to 20.
  Cyc20 galois(int j) const;
  Cyc20 conj() const { return galois(19); }
  Cyc20 inverse() const;
  /// Rational norm N(z) = ∏ over the 8 embeddings.
  Rat norm() const;

  CDouble embed() const;
  std::string str() const;

  Cyc20& operator+=(const Cyc20& o);
  Cyc20& operator-=(const Cyc20& o);
  Cyc20& operator*=(const Cyc20& o);
  Cyc20& operator/=(const Cyc20& o) { return *this *= o.inverse(); }

  friend Cyc20 operator+(Cyc20 x, const Cyc20& y) { return x += y; }
  friend Cyc20 operator-(Cyc20 x, const Cyc20& y) { return x -= y; }
  friend Cyc20 operator*(Cyc20 x, const Cyc20& y) { return x *= y; }
  friend Cyc20 operator/(Cyc20 x, const Cyc20& y) { return x /= y; }
  Cyc20 operator-() const;

  friend bool operator==(const Cyc20& x, const Cyc20& y) = default;

 private:
  std::array<Rat, kDegree> c_{};
};

/// Canonical degree ≤ 7 representative of Σ raw[i]·ζⁱ.
Cyc20 cyc_reduce(std::span<const Rat> raw);

Cyc20 pow(const Cyc20& base, long exponent);

/// Exact real part of a Cyc20 element, written p + q·cos(π/10) with p, q ∈ ℚ(√5).
struct RealCyc {
  Golden p;
  Golden q;

  int sign() const;
  double to_double() const;
  RealCyc operator-(const Golden& g) const { return RealCyc{p - g, q}; }
};

RealCyc real_part(const Cyc20& z);

inline CDouble embed(const Golden& g) { return {g.to_double(), 0.0}; }
inline CDouble embed(const Cyc20& z) { return z.embed(); }

}  // namespace tuttebraid
