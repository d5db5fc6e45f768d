#include "tuttebraid/laurent.hpp"

#include "tuttebraid/errors.hpp"

namespace tuttebraid {

LaurentA::LaurentA(int constant) {
  if (constant != 0) terms_.emplace(0, constant);
}

LaurentA::LaurentA(Terms terms) {
  for (auto& [e, c] : terms) {
    if (c != 0) terms_.emplace(e, std::move(c));
  }
}

LaurentA LaurentA::monomial(int exponent, const mpz_class& coeff) {
  LaurentA p;
  p.add_term(exponent, coeff);
  return p;
}

LaurentA LaurentA::loop_value() { return monomial(2, -1) + monomial(-2, -1); }

int LaurentA::min_exponent() const {
  require(!terms_.empty(), "zero Laurent polynomial has no exponents");
  return terms_.begin()->first;
}

int LaurentA::max_exponent() const {
  require(!terms_.empty(), "zero Laurent polynomial has no exponents");
  return terms_.rbegin()->first;
}

mpz_class LaurentA::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void LaurentA::add_term(int exponent, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exponent, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

LaurentA& LaurentA::operator+=(const LaurentA& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentA& LaurentA::operator-=(const LaurentA& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentA& LaurentA::operator*=(const LaurentA& o) {
  LaurentA out;
  for (const auto& [e1, c1] : terms_) {
    for (const auto& [e2, c2] : o.terms_) out.add_term(e1 + e2, c1 * c2);
  }
  *this = std::move(out);
  return *this;
}

LaurentA LaurentA::operator-() const {
  LaurentA out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

bool LaurentA::monomial_ratio(const LaurentA& other, int& exponent, int& sign) const {
  if (is_zero() || other.is_zero()) return false;
  const mpz_class& lead = terms_.begin()->second;
  const mpz_class& other_lead = other.terms_.begin()->second;
  if (abs(lead) != abs(other_lead)) return false;
  const int k = min_exponent() - other.min_exponent();
  const int s = sgn(lead) * sgn(other_lead);
  if (*this != monomial(k, s) * other) return false;
  exponent = k;
  sign = s;
  return true;
}

LaurentA LaurentA::substitute_power(int k) const {
  LaurentA out;
  for (const auto& [e, c] : terms_) out.add_term(e * k, c);
  return out;
}

std::string LaurentA::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    const bool neg = c < 0;
    const mpz_class mag = abs(c);
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    if (e == 0) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += "A^" + std::to_string(e);
    }
  }
  return out;
}

LaurentA pow(const LaurentA& base, unsigned exponent) {
  LaurentA result(1);
  LaurentA b = base;
  while (exponent > 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1u;
    if (exponent > 0) b *= b;
  }
  return result;
}

Cyc20 eval_laurent(const LaurentA& p, const Cyc20& a) {
  if (p.is_zero()) return Cyc20(0);
  const Cyc20 a_inv = a.inverse();
  Cyc20 acc(0);
  for (const auto& [e, c] : p.terms()) {
    const Cyc20 power = e >= 0 ? pow(a, e) : pow(a_inv, -e);
    acc += power * Cyc20(Rat(c));
  }
  return acc;
}

}  // namespace tuttebraid
