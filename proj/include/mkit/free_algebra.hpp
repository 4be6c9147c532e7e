#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "mkit/algebra.hpp"

namespace mkit {

/// How an element of the free algebra was first derived.
struct Provenance {
  int op = -1;            // index into base operations; -1 for a generator
  int generator = -1;     // 0..3 when op < 0
  std::vector<int> args;  // element indices when op >= 0
};

/// The subalgebra of A^(A^4) generated by the four projection tables.
///
/// Elements are stored as flat tables A^4 -> A (row-major tuple index) in a
/// contiguous arena. Element order is deterministic: generators x,y,z,w
/// first, then closure round by closure round, each round sorted by
/// value-list lexicographic order.
class FreeAlgebra {
 public:
  const FiniteAlgebra& base() const { return *base_; }
  int count() const { return static_cast<int>(prov_.size()); }
  int table_length() const { return table_len_; }

  std::span<const std::uint8_t> table(int e) const {
    return {arena_.data() + static_cast<size_t>(e) * stride_,
            static_cast<size_t>(table_len_)};
  }
  const Provenance& provenance(int e) const { return prov_[e]; }
  const std::array<int, 4>& generator_ids() const { return gen_ids_; }
  int rounds() const { return rounds_; }

  /// Index of the element with this table, or -1.
  int find(std::span<const std::uint8_t> tbl) const;

  /// The free algebra as a finite algebra on element indices, with the
  /// induced operation tables. Guarded by an index-table size cap.
  FiniteAlgebra as_algebra(long long max_cells = 40'000'000) const;

  friend FreeAlgebra free_algebra(const FiniteAlgebra& a, long long cap);

 private:
  std::shared_ptr<const FiniteAlgebra> base_;
  int table_len_ = 0;
  size_t stride_ = 0;
  std::vector<std::uint8_t> arena_;
  std::vector<Provenance> prov_;
  std::array<int, 4> gen_ids_{};
  int rounds_ = 0;
  std::unordered_map<std::uint64_t, std::vector<std::int32_t>> index_;

  std::uint64_t hash_row(const std::uint8_t* p) const;
};

/// Generate the free algebra on four generators over the variety of a.
/// Throws CapExceeded when the element count passes cap.
FreeAlgebra free_algebra(const FiniteAlgebra& a, long long cap = 500000);

/// A term over variables and the operations of a base algebra.
struct TermExpr {
  std::string var;  // leaf when nonempty
  std::string op;
  std::vector<TermExpr> args;

  std::string str() const;
};

/// Reconstruct a printable term for an element by following provenance.
TermExpr term_expression_of(const FreeAlgebra& f, int element);

/// Evaluate a term under an assignment of universe elements to variables.
int eval_term(const FiniteAlgebra& a, const TermExpr& t,
              const std::map<std::string, int>& env);

/// The full table A^|vars| -> A of a term (row-major tuple index).
std::vector<std::uint8_t> term_table(const FiniteAlgebra& a, const TermExpr& t,
                                     const std::vector<std::string>& vars);

struct EquationCheck {
  bool holds = false;
  std::vector<int> failing_assignment;  // parallel to vars; empty when holds
};

/// Does lhs = rhs hold under every assignment? The first failing assignment
/// (lexicographic) is reported otherwise. Valid for the whole variety the
/// base algebra generates.
EquationCheck check_equation_on_a(const FiniteAlgebra& a, const TermExpr& lhs,
                                  const TermExpr& rhs,
                                  const std::vector<std::string>& vars);

}  // namespace mkit
