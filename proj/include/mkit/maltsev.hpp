#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mkit/algebra.hpp"
#include "mkit/congruence.hpp"
#include "mkit/free_algebra.hpp"

namespace mkit {

/// The free algebra on x,y,z,w together with the three designated
/// congruences: alpha identifies x with w, beta identifies x with y and z
/// with w, gamma identifies y with z.
///
/// Each congruence is carried as a label vector: elements are related iff
/// their labels agree. On a free algebra these congruences are exactly the
/// kernels of the corresponding generator substitutions, which is how the
/// labels are computed; tests cross-check against cg on small instances.
struct ConditionIISetup {
  FreeAlgebra f;
  std::vector<int> alpha_label, beta_label, gamma_label;
  std::vector<int> ab_label;  // meet of alpha and beta
  int x = 0, y = 0, z = 0, w = 0;

  Congruence alpha() const { return Congruence::from_partition(labels_to_rep(alpha_label)); }
  Congruence beta() const { return Congruence::from_partition(labels_to_rep(beta_label)); }
  Congruence gamma() const { return Congruence::from_partition(labels_to_rep(gamma_label)); }

  static std::vector<int> labels_to_rep(const std::vector<int>& labels);
};

ConditionIISetup condition_ii_setup(const FiniteAlgebra& a, long long cap = 500000);

struct DecideResult {
  bool has_k = false;  // false: the chain limit never reaches (x,w); no k exists
  int k = 0;
};

DecideResult decide_condition_ii_from(const ConditionIISetup& setup,
                                      std::optional<int> k_max = {});
DecideResult decide_condition_ii(const FiniteAlgebra& a, std::optional<int> k_max = {},
                                 long long cap = 500000);

/// Tables d_0..d_k over the base algebra, each of length n^4.
struct TermChain {
  int k = 0;
  std::vector<std::vector<std::uint8_t>> tables;
  std::vector<int> element_ids;  // indices in F when extracted, -1 for padding

  /// Extend to a longer chain by repeating the last table; all chain
  /// equations survive repetition.
  TermChain padded_to(int k2) const;
};

/// The alternating witness path x -> w in F, as tables. Deterministic:
/// breadth-first levels with minimum-index predecessor links.
TermChain extract_terms(const ConditionIISetup& setup, int kstar);

struct EquationStatus {
  bool holds = true;
  int chain_index = -1;       // which d_i failed
  std::vector<int> at;        // substitution values at the failure
};

struct TermChainReport {
  EquationStatus a, b, c, d, e;
  bool all_hold() const {
    return a.holds && b.holds && c.holds && d.holds && e.holds;
  }
};

/// Check the chain equations as table identities over the base algebra:
///   (a) d_0(x,y,z,w) = x
///   (b) d_i(x,x,w,w) = d_{i+1}(x,x,w,w)   for i even
///   (c) d_i(x,y,z,x) = d_{i+1}(x,y,z,x)   for i even
///   (d) d_i(x,y,y,w) = d_{i+1}(x,y,y,w)   for i odd
///   (e) d_k(x,y,z,w) = w
TermChainReport verify_term_chain(const FiniteAlgebra& a, const TermChain& chain);

/// d_i(x,y,y,x) = x for every i; follows from (a),(c),(d) by induction.
EquationStatus verify_condition_f(const FiniteAlgebra& a, const TermChain& chain);

struct DayReport {
  TermChainReport chain;
  EquationStatus f;
  bool holds = false;  // (a),(b),(d),(e) and (f) together
};

DayReport verify_day_conditions(const FiniteAlgebra& a, const TermChain& chain);

}  // namespace mkit
