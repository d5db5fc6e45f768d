#include "tuttebraid/golden.hpp"

#include <cmath>

#include "tuttebraid/errors.hpp"

namespace tuttebraid {

namespace {
const double kTau = (1.0 + std::sqrt(5.0)) / 2.0;
}

Golden& Golden::operator*=(const Golden& o) {
  // (a + bτ)(c + dτ) = ac + bd + (ad + bc + bd)τ
  Rat bd = b_ * o.b_;
  Rat na = a_ * o.a_ + bd;
  Rat nb = a_ * o.b_ + b_ * o.a_ + bd;
  a_ = std::move(na);
  b_ = std::move(nb);
  return *this;
}

Golden Golden::inverse() const {
  require(!is_zero(), "division by zero in golden field");
  const Rat n = norm();
  const Golden c = conjugate();
  return Golden(c.a() / n, c.b() / n);
}

int Golden::sign() const {
  // a + bτ = p + q√5 with p = a + b/2, q = b/2.
  const Rat p = a_ + b_ / Rat(2);
  const Rat q = b_ / Rat(2);
  const int sp = p.sign();
  const int sq = q.sign();
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  const Rat lhs = p * p;
  const Rat rhs = Rat(5) * q * q;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sp : sq;
}

double Golden::to_double() const { return a_.to_double() + b_.to_double() * kTau; }

std::string Golden::str() const {
  if (b_.is_zero()) return a_.str();
  std::string out = a_.is_zero() ? "" : a_.str();
  if (b_.sign() < 0) {
    out += "-" + (-b_).str();
  } else {
    if (!out.empty()) out += "+";
    out += b_.str();
  }
  return out + "τ";
}

int compare(const Golden& x, const Golden& y) { return (x - y).sign(); }

Golden pow(const Golden& base, long exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  Golden result(1);
  Golden b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    exponent >>= 1;
    if (exponent > 0) b *= b;
  }
  return result;
}

Golden abs(const Golden& x) { return x.sign() < 0 ? -x : x; }

GoldenConstants golden_constants() {
  const Golden tau = Golden::tau();
  return GoldenConstants{
      .tau = tau,
      .B5 = Golden(1) + tau,
      .B10 = tau * (Golden(2) * tau - Golden(1)),
      .sqrt5 = Golden(2) * tau - Golden(1),
      .bracket_d = tau,
  };
}

}  // namespace tuttebraid
