#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tuttebraid/aa_core.hpp"
#include "tuttebraid/cyc20.hpp"
#include "tuttebraid/errors.hpp"
#include "tuttebraid/graph.hpp"
#include "tuttebraid/laurent.hpp"
#include "tuttebraid/ring.hpp"

namespace tuttebraid {

struct Crossing {
  int i = 1;     // σᵢ acts on strands i, i+1 (1-based)
  int sign = 1;  // +1 or −1
  friend bool operator==(const Crossing&, const Crossing&) = default;
};

/// Braid on m strands; word[0] is applied first, directly above the bottom cups.
struct BraidWord {
  int m = 2;
  std::vector<Crossing> word;

  void validate() const;
  BraidWord inverse() const;
  BraidWord shifted(int k, int new_m) const;
  BraidWord operator*(const BraidWord& o) const;  // this, then o
  std::string str() const;
  static BraidWord parse(const std::string& text);
  nlohmann::json to_json() const;
  static BraidWord from_json(const nlohmann::json& j);
  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

BraidWord random_braid(int m, int length, std::uint64_t seed);

// ---- Temperley–Lieb link-pattern space

/// partner[j] for points j = 0..m−1 of a non-crossing perfect matching.
using Matching = std::vector<int>;
template <class R>
using TLVector = std::map<Matching, R>;

long tl_dim(int m);
Matching cup_state(int m);
std::vector<Matching> matchings(int m);
bool is_noncrossing(const Matching& p);
/// Closed loops formed by gluing two matchings on the same points.
int loops_between(const Matching& p, const Matching& q);

template <class R>
struct TLParams {
  R A, A_inv, loop;
};

template <class R>
void tl_add(TLVector<R>& v, const Matching& p, const R& c) {
  auto [it, fresh] = v.try_emplace(p, c);
  if (!fresh) it->second = it->second + c;
  if (ring_is_zero(it->second)) v.erase(it);
}

/// eᵢ (1-based): factor `loop` if i, i+1 are paired, otherwise re-pair (i, i+1) and their old partners.
template <class R>
TLVector<R> apply_e(const TLVector<R>& v, int i, const R& loop) {
  const int j = i - 1;
  TLVector<R> out;
  for (const auto& [p, c] : v) {
    require(j >= 0 && j + 1 < static_cast<int>(p.size()), "generator index out of range");
    if (p[j] == j + 1) {
      tl_add(out, p, c * loop);
    } else {
      Matching q = p;
      const int a = p[j], b = p[j + 1];
      q[j] = j + 1;
      q[j + 1] = j;
      q[a] = b;
      q[b] = a;
      tl_add(out, q, c);
    }
  }
  return out;
}

/// σᵢ ↦ A·1 + A⁻¹eᵢ, σᵢ⁻¹ ↦ A⁻¹·1 + A·eᵢ.
template <class R>
TLVector<R> apply_gen(const TLVector<R>& v, int i, int sign, const TLParams<R>& prm) {
  const R& id_coeff = sign > 0 ? prm.A : prm.A_inv;
  const R& e_coeff = sign > 0 ? prm.A_inv : prm.A;
  TLVector<R> out;
  for (const auto& [p, c] : v) tl_add(out, p, c * id_coeff);
  for (const auto& [p, c] : apply_e(v, i, prm.loop)) tl_add(out, p, c * e_coeff);
  return out;
}

template <class R>
TLVector<R> apply_word(TLVector<R> v, const BraidWord& b, const TLParams<R>& prm) {
  for (const auto& x : b.word) v = apply_gen(v, x.i, x.sign, prm);
  return v;
}

/// Formal bracket-variable parameters over ℤ[A, A⁻¹].
TLParams<LaurentA> formal_params();
/// Unitary parameters: A = ζ⁴ (so t = A⁻⁴ = e^{2πi/5}), loop d = τ.
TLParams<Cyc20> unitary_params();
TLParams<CDouble> unitary_params_float();
/// Bracket parameters at A = ζ⁻¹, loop δ = −A² − A⁻² = −τ.
TLParams<Cyc20> bracket_params();

// ---- plat closures

struct AmplitudeResult {
  bool exact = true;
  Cyc20 amplitude;  // meaningful when exact
  CDouble amplitude_f;
  double absV = 0;
  double prob0 = 0;
  nlohmann::json to_json() const;
};

struct AmplitudeCaps {
  int exact_crossings = 40;
  int max_crossings = 64;
  int max_strands = 24;
};
/// ⟨c|ρ(b)|c⟩ in the unitary representation with pairing ⟨p|q⟩ = d^{loops(p∪q) − m/2}.
AmplitudeResult plat_amplitude(const BraidWord& b, const AmplitudeCaps& caps = {});

/// Brute-force Kauffman bracket of the plat closure over all 2^crossings states.
LaurentA bracket_state_sum(const BraidWord& b, int max_crossings = 20);
/// The same bracket read off the formal TL action: Σ coeff·δ^{loops(c∪p) − 1}.
LaurentA bracket_from_tl(const BraidWord& b);

struct LinkInvariants {
  int c = 0;
  int w = 0;
  int mL = 0;
  nlohmann::json to_json() const { return {{"c", c}, {"w", w}, {"mL", mL}}; }
};
/// Components oriented from their lowest bottom endpoint upward; components listed in `reversed` flip.
LinkInvariants link_invariants(const BraidWord& b, const std::set<int>& reversed = {});

/// V = δ·(−A³)^{−w}·⟨L⟩ at A = ζ⁻¹: the unreduced Jones value (unknot ↦ δ, |unlink_k| = d^k).
Cyc20 jones_value(const BraidWord& b, const LinkInvariants& inv);
Cyc20 jones_value(const BraidWord& b);

// ---- the FKLW acceptance probability

/// Link on m+2 strands: b shifted by two, the σ₂σ₃σ₃σ₂ clasp, then b⁻¹ shifted by two.
BraidWord build_fklw_link(const BraidWord& b);

/// X = (−1)^{c+w}(−A)^{3w}·V with A = ζ⁻¹; real for pipeline links.
Cyc20 fklw_phase_value(const Cyc20& V, const LinkInvariants& inv);
/// (1 + Re X / d^{mL−2}) / (1 + d²)
double fklw_probability(const Cyc20& V, const LinkInvariants& inv);

struct FklwResult {
  BraidWord link;
  LinkInvariants inv;
  Cyc20 V;
  Cyc20 X;
  double probability = 0;
  double physical = 0;  // ⟨ψ|e₁/d|ψ⟩, ψ = ρ(b)|c⟩
  bool in_range = true;
  nlohmann::json to_json() const;
};
FklwResult fklw_evaluate(const BraidWord& b);
/// Probability that the first qubit reads 0 after ρ(b) acts on the cup state.
double qubit_zero_probability(const BraidWord& b);

// ---- sampling and decisions

struct Outcomes {
  long zeros = 0, ones = 0;
};
Outcomes sample_bernoulli(double p, long shots, std::uint64_t seed);
Outcomes sample_outcomes(const BraidWord& b, long shots, std::uint64_t seed);

/// t = ⌈4ε⁻⁴⌉ + 1 shots per batch, so the zero frequency is within ε² per batch.
long absV_batch_size(double epsilon);
AAResult estimate_absV_from_prob(double prob0, int m, const AAConfig& cfg);
AAResult estimate_absV(const BraidWord& b, const AAConfig& cfg);

enum class Decision { accept, reject, undecided };
std::string to_string(Decision d);

struct DecisionReport {
  Decision decision = Decision::undecided;
  std::string mode;
  double normalized = 0;  // quartile mode: |V̂|/d^{mL}
  int sign = 0;           // sign mode: exact sign of X
  int mL = 0;
  nlohmann::json to_json() const;
};
/// Quartile mode: |V̂|/d^{mL} below 0.39 accepts, above 0.65 rejects.
DecisionReport decide_quartile(const BraidWord& b, int mL, const AAConfig& cfg);
/// Sign mode on the FKLW link of b, exact in ℚ(ζ).
DecisionReport decide_sign(const BraidWord& b);

// ---- Tait graph consistency

struct TaitPair {
  std::string name;
  BraidWord braid;
  Multigraph graph;
  bool expect_monomial = true;
  int expected_exponent = 0;
  int expected_sign = 1;
};
std::vector<TaitPair> curated_tait_pairs();

struct TaitReport {
  std::string name;
  LaurentA jones;  // (−A³)^{−w}⟨L⟩
  LaurentA tutte;  // T(G; −A⁻⁴, −A⁴)
  bool monomial = false;
  int exponent = 0;
  int sign = 0;
  bool residual_zero = false;
  bool as_expected = false;
  nlohmann::json to_json() const;
};
TaitReport tait_consistency(const TaitPair& pair);

}  // namespace tuttebraid
