#include "tuttebraid/cyc20.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "tuttebraid/errors.hpp"

namespace tuttebraid {

Cyc20 cyc_reduce(std::span<const Rat> raw) {
  std::vector<Rat> work(raw.begin(), raw.end());
  // ζ⁸ = ζ⁶ − ζ⁴ + ζ² − 1
  for (std::size_t k = work.size(); k-- > Cyc20::kDegree;) {
    if (work[k].is_zero()) continue;
    const Rat c = work[k];
    work[k] = Rat(0);
    work[k - 2] += c;
    work[k - 4] -= c;
    work[k - 6] += c;
    work[k - 8] -= c;
  }
  std::array<Rat, Cyc20::kDegree> out{};
  for (std::size_t i = 0; i < work.size() && i < out.size(); ++i) out[i] = work[i];
  return Cyc20(out);
}

Cyc20::Cyc20(const Golden& g) {
  // τ = 2cos(π/5) = ζ² + ζ⁻² = ζ² + ζ¹⁸
  static const Cyc20 tau = zeta_pow(2) + zeta_pow(18);
  Cyc20 v = tau;
  for (auto& c : v.c_) c *= g.b();
  v.c_[0] += g.a();
  c_ = v.c_;
}

Cyc20 Cyc20::zeta_pow(long k) {
  long e = k % 20;
  if (e < 0) e += 20;
  std::vector<Rat> raw(static_cast<std::size_t>(e) + 1);
  raw[static_cast<std::size_t>(e)] = Rat(1);
  return cyc_reduce(raw);
}

bool Cyc20::is_zero() const {
  for (const auto& c : c_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

bool Cyc20::is_rational() const {
  for (int i = 1; i < kDegree; ++i) {
    if (!c_[static_cast<std::size_t>(i)].is_zero()) return false;
  }
  return true;
}

Cyc20& Cyc20::operator+=(const Cyc20& o) {
  for (int i = 0; i < kDegree; ++i) c_[static_cast<std::size_t>(i)] += o.c_[static_cast<std::size_t>(i)];
  return *this;
}

Cyc20& Cyc20::operator-=(const Cyc20& o) {
  for (int i = 0; i < kDegree; ++i) c_[static_cast<std::size_t>(i)] -= o.c_[static_cast<std::size_t>(i)];
  return *this;
}

Cyc20 Cyc20::operator-() const {
  Cyc20 r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Cyc20& Cyc20::operator*=(const Cyc20& o) {
  std::array<Rat, 2 * kDegree - 1> raw{};
  for (int i = 0; i < kDegree; ++i) {
    if (c_[static_cast<std::size_t>(i)].is_zero()) continue;
    for (int j = 0; j < kDegree; ++j) {
      if (o.c_[static_cast<std::size_t>(j)].is_zero()) continue;
      raw[static_cast<std::size_t>(i + j)] += c_[static_cast<std::size_t>(i)] * o.c_[static_cast<std::size_t>(j)];
    }
  }
  *this = cyc_reduce(raw);
  return *this;
}

Cyc20 Cyc20::galois(int j) const {
  require(std::gcd(j, 20) == 1, "galois automorphism index must be coprime to 20");
  std::vector<Rat> raw(20);
  for (int i = 0; i < kDegree; ++i) {
    long e = (static_cast<long>(i) * j) % 20;
    if (e < 0) e += 20;
    raw[static_cast<std::size_t>(e)] += c_[static_cast<std::size_t>(i)];
  }
  return cyc_reduce(raw);
}

namespace {
constexpr int kOtherUnits[] = {3, 7, 9, 11, 13, 17, 19};
}

Rat Cyc20::norm() const {
  Cyc20 prod = *this;
  for (int j : kOtherUnits) prod *= galois(j);
  return prod[0];
}

Cyc20 Cyc20::inverse() const {
  require(!is_zero(), "division by zero in cyclotomic field");
  Cyc20 others(1);
  for (int j : kOtherUnits) others *= galois(j);
  const Rat n = (*this * others)[0];
  for (auto& c : others.c_) c /= n;
  return others;
}

CDouble Cyc20::embed() const {
  CDouble acc{0.0, 0.0};
  for (int i = 0; i < kDegree; ++i) {
    const double angle = std::numbers::pi * i / 10.0;
    acc += c_[static_cast<std::size_t>(i)].to_double() * CDouble(std::cos(angle), std::sin(angle));
  }
  return acc;
}

std::string Cyc20::str() const {
  std::string out;
  for (int i = 0; i < kDegree; ++i) {
    const Rat& c = c_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    if (!out.empty()) out += c.sign() > 0 ? " + " : " - ";
    else if (c.sign() < 0) out += "-";
    out += abs(c).str();
    if (i > 0) out += "ζ^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

Cyc20 pow(const Cyc20& base, long exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  Cyc20 result(1);
  Cyc20 b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    exponent >>= 1;
    if (exponent > 0) b *= b;
  }
  return result;
}

namespace {

// cos²(π/10) = (5 + √5)/8 = (2 + τ)/4
const Golden& cos_sq() {
  static const Golden v = Golden(Rat(1, 2), Rat(1, 4));
  return v;
}

}  // namespace

RealCyc real_part(const Cyc20& z) {
  // cos(kπ/10) = T_k(C), C = cos(π/10); track T_k as p + q·C.
  RealCyc prev{Golden(1), Golden(0)};
  RealCyc cur{Golden(0), Golden(1)};
  RealCyc acc{z[0], Golden(0)};
  for (int k = 1; k < Cyc20::kDegree; ++k) {
    const Golden c(z[k]);
    acc.p += c * cur.p;
    acc.q += c * cur.q;
    RealCyc next{Golden(2) * cur.q * cos_sq() - prev.p, Golden(2) * cur.p - prev.q};
    prev = std::move(cur);
    cur = std::move(next);
  }
  return acc;
}

int RealCyc::sign() const {
  const int sp = p.sign();
  const int sq = q.sign();
  if (sq == 0) return sp;
  if (sp == 0 || sp == sq) return sq;
  const int c = compare(p * p, q * q * cos_sq());
  if (c == 0) return 0;
  return c > 0 ? sp : sq;
}

double RealCyc::to_double() const {
  return p.to_double() + q.to_double() * std::cos(std::numbers::pi / 10.0);
}

}  // namespace tuttebraid
