#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "tuttebraid/aa_core.hpp"
#include "tuttebraid/graph.hpp"
#include "tuttebraid/rat.hpp"

namespace tuttebraid {

using Certificate = std::vector<std::uint64_t>;

/// A #P-style counting problem: certificates are mixed-radix digit strings drawn
/// uniformly; `multiplicity` raw strings map onto each certificate of the true
/// space (used for orderings counted up to reversal).
struct CountingProblem {
  std::string name;
  std::vector<std::uint64_t> radices;
  std::uint64_t multiplicity = 1;
  std::function<bool(const Certificate&)> verify;
  std::function<mpz_class()> exact_oracle;  // optional

  double raw_space() const;
  double u() const { return raw_space() / static_cast<double>(multiplicity); }
  mpz_class space_size() const;
  /// Certificate length in bits, ⌈log₂ space⌉.
  int certificate_bits() const;
  bool has_oracle() const { return static_cast<bool>(exact_oracle); }
  mpz_class exact() const;
  nlohmann::json describe() const;
};

/// Counts accepting certificates by walking the whole space. Refuses spaces over `cap`.
mpz_class count_by_enumeration(const CountingProblem& P, double cap = 1 << 24);

/// Certificate `index` of the stream `seed`, digit by digit.
Certificate draw_certificate(const CountingProblem& P, std::uint64_t seed, std::uint64_t index);
/// One-certificate unbiased estimator: u·[accept].
double single_estimate(const CountingProblem& P, std::uint64_t seed, std::uint64_t index);

AAResult aa_estimate(const CountingProblem& P, const AAConfig& cfg);

// ---- bundled problems

CountingProblem constant_problem(int p, bool accept);
CountingProblem stable_set_problem(const Multigraph& g);
CountingProblem colorings_problem(const Multigraph& g, int k);
struct HamProblems {
  CountingProblem m1, m2;
};
HamProblems ham_problems(const Multigraph& g);

mpz_class count_stable_sets(const Multigraph& g);
mpz_class count_hamiltonian_cycles(const Multigraph& g);

// ---- DIMACS formulas

/// Clauses (CNF) or terms (DNF) of signed 1-based literals.
struct Formula {
  bool dnf = false;
  int n = 0;
  std::vector<std::vector<int>> clauses;
  std::string to_dimacs() const;
};
Formula parse_dimacs(const std::string& text);
Formula random_kcnf(int n, int clauses, int k, std::uint64_t seed);
Formula random_dnf(int n, int terms, int max_width, std::uint64_t seed);
bool satisfies(const Formula& f, std::uint64_t assignment);
mpz_class count_models(const Formula& f);  // n ≤ 24
CountingProblem formula_problem(const Formula& f);

/// Karp–Luby coverage sampler for #DNF.
struct FprasRun {
  double estimate = 0;
  long samples = 0;
};
FprasRun dnf_fpras(const Formula& f, double epsilon, double delta, std::uint64_t seed);

// ---- AA procedures and combinators

/// An AA algorithm for (f, u): run(ε, δ, seed) returns an estimate within ε·u with failure < δ.
struct AAProcedure {
  std::string name;
  double u = 0;
  bool bounded = false;  // |f| ≤ u declared, needed by aa_mul
  std::function<AAResult(double, double, std::uint64_t)> run;
  AAResult operator()(const AAConfig& cfg) const;
};

AAProcedure as_procedure(const CountingProblem& P);
AAProcedure aa_neg(const AAProcedure& f);
AAProcedure aa_add(const AAProcedure& f, const AAProcedure& g);
AAProcedure aa_sub(const AAProcedure& f, const AAProcedure& g);
AAProcedure aa_mul(const AAProcedure& f, const AAProcedure& g);

/// An FPRAS returns a relative-error estimate; the caller declares u ≥ |f|.
using Fpras = std::function<double(double, double, std::uint64_t)>;
AAProcedure fpras_to_aa(const std::string& name, Fpras fpras, double u);
AAProcedure dnf_procedure(const Formula& f);

struct GapProblem {
  CountingProblem g, h;
};
AAResult gap_estimate(const GapProblem& gp, const AAConfig& cfg);

struct SatIdentity {
  int n = 0;
  std::optional<mpz_class> sat, dnf_complement;
  bool identity_holds = false;
  AAResult estimate;  // 2ⁿ − KL(¬F) with u = 2ⁿ
  nlohmann::json to_json() const;
};
Formula negate_cnf(const Formula& f);
SatIdentity sat_via_dnf(const Formula& f, const AAConfig& cfg);

// ---- quartiles

/// Bucket k with count ∈ ((k−1)/r, k/r]·space, clamped to [1, r].
int quartile_bucket(const mpq_class& fraction, int r);
struct QuartileResult {
  std::optional<int> k;  // empty: boundary_uncertain
  double normalized = 0;
  double epsilon = 0;
  AAResult aa;
  nlohmann::json to_json() const;
};
QuartileResult quartile_decide(const CountingProblem& P, int r, const AAConfig& cfg);

struct SsQuartile {
  int k = 0;
  int matching = 0;
  bool matching_shortcut = false;
  std::optional<mpz_class> count;  // absent when the matching bound decides
  nlohmann::json to_json() const;
};
SsQuartile ss_quartile_exact(const Multigraph& g, int r);
int ss_quartile_brute(const Multigraph& g, int r);

// ---- random-cluster samplers

struct RcResult {
  int region = 0;  // 1: x=1,y>1  2: x>1,y=1  3: x>1,y>1
  double stated_u = 0, audited_u = 0;
  double max_term = 0;
  bool audit_ok = true;  // every sampled term ≤ stated u
  AAResult aa;           // normalized by the audited bound
  nlohmann::json to_json() const;
};
int rc_region(const Rat& x, const Rat& y);
RcResult rc_sampler(const Multigraph& g, const Rat& x, const Rat& y, const AAConfig& cfg);

// ---- gadget identities

struct GadgetRow {
  std::string name;
  int n = 0;
  mpz_class p5, p5_plus, p_k, p_h;
  int k = 3, ell = 0;
  bool isolated_ok = false, path_ok = false, rounding_ok = false;
  double log_gap = 0;
  bool gap_ok = false;
};
struct GadgetReport {
  std::vector<GadgetRow> rows;
  bool all_ok() const;
  nlohmann::json to_json() const;
};
/// Checks the isolated-vertex and pendant-path gadgets on `graphs` (default corpus when empty).
GadgetReport gadget_experiments(std::vector<std::pair<std::string, Multigraph>> graphs = {});
/// Recovers P_G(k) from an estimate of P_H(k) within half of (k−1)^ℓ.
mpz_class round_from_path_estimate(double estimate, int k, int ell);

}  // namespace tuttebraid
