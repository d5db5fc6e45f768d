#include "tuttebraid/ring.hpp"

namespace tuttebraid {

BiPoly::BiPoly(int c) {
  if (c != 0) terms_[{0, 0}] = c;
}

BiPoly BiPoly::monomial(int i, int j, const mpz_class& c) {
  BiPoly p;
  if (c != 0) p.terms_[{i, j}] = c;
  return p;
}

mpz_class BiPoly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? mpz_class(0) : it->second;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
  for (const auto& [k, c] : o.terms_) {
    auto& slot = terms_[k];
    slot += c;
    if (slot == 0) terms_.erase(k);
  }
  return *this;
}

BiPoly& BiPoly::operator*=(const BiPoly& o) {
  Terms out;
  for (const auto& [ka, ca] : terms_)
    for (const auto& [kb, cb] : o.terms_) out[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  terms_ = std::move(out);
  return *this;
}

}  // namespace tuttebraid
