#pragma once

#include <utility>
#include <vector>

#include "mkit/algebra.hpp"
#include "mkit/relation.hpp"

namespace mkit {

/// A congruence carried as a canonical partition: rep[i] is the minimum
/// element of the block containing i. The matrix view is derived on demand.
class Congruence {
 public:
  Congruence() = default;
  /// From a rep vector (canonicalized). No compatibility check.
  static Congruence from_partition(std::vector<int> rep);
  /// From an equivalence relation given as a matrix. Asserts shape only.
  static Congruence from_relation(const BinaryRelation& rel);

  int size() const { return static_cast<int>(rep_.size()); }
  const std::vector<int>& rep() const { return rep_; }
  bool related(int a, int b) const { return rep_[a] == rep_[b]; }
  int block_count() const;

  BinaryRelation to_relation() const;

  bool operator==(const Congruence&) const = default;
  /// Lexicographic order on rep vectors; the deterministic listing order.
  bool operator<(const Congruence& other) const { return rep_ < other.rep_; }

  /// Blockwise intersection, the lattice meet.
  Congruence meet(const Congruence& other) const;

  /// Refinement test: every block of this is inside a block of other.
  bool below(const Congruence& other) const;

  static Congruence identity(int n);
  static Congruence full(int n);

 private:
  std::vector<int> rep_;
};

/// Reflexive symmetric compatible relation; transitivity not required.
struct Tolerance {
  BinaryRelation matrix;
};

/// Reflexive compatible relation; neither symmetry nor transitivity required.
struct AdmissibleRelation {
  BinaryRelation matrix;
};

/// Is rel compatible with every operation of a, componentwise on related
/// argument tuples? (The tuple form; do not assume transitivity.)
bool is_compatible(const FiniteAlgebra& a, const BinaryRelation& rel);

/// Is the partition a congruence of a?
bool is_congruence(const FiniteAlgebra& a, const Congruence& c);

/// Least reflexive relation containing rel that is closed under all
/// operations applied componentwise to related tuples. Iterates to fixpoint.
AdmissibleRelation compatible_closure(const FiniteAlgebra& a, const BinaryRelation& rel);

/// Least congruence of a containing the given pairs.
Congruence cg(const FiniteAlgebra& a, const std::vector<std::pair<int, int>>& pairs);

/// Join in the congruence lattice: equivalence closure of the union.
/// Compatibility of the result is asserted.
Congruence join(const FiniteAlgebra& a, const Congruence& t1, const Congruence& t2);

/// Every congruence of a, ordered lexicographically by rep vector.
/// Computed as the join closure of the principal congruences.
/// Throws CapExceeded when a.size() exceeds max_size.
std::vector<Congruence> all_congruences(const FiniteAlgebra& a, int max_size = 60);

/// R = compatible closure of the pairs; the induced tolerance is R o R~.
struct RepresentableTolerance {
  AdmissibleRelation r;
  Tolerance delta;
};
RepresentableTolerance representable_tolerance(const FiniteAlgebra& a,
                                               const std::vector<std::pair<int, int>>& pairs);

/// Deterministic sample family of representable tolerances: compatible
/// closures of every pair set of size <= max_pairs, pairs (a,b) with a != b
/// enumerated row-major, deduplicated by the induced tolerance.
std::vector<RepresentableTolerance> representable_family(const FiniteAlgebra& a,
                                                         int max_pairs = 2);

}  // namespace mkit
