#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace mkit {

/// Dense n x n boolean matrix with 64-bit packed rows.
///
/// Rows are padded to whole words; padding bits stay zero so whole-vector
/// comparisons and bit counts are exact.
class BinaryRelation {
 public:
  BinaryRelation() = default;
  explicit BinaryRelation(int n)
      : n_(n), words_((n + 63) / 64), bits_(static_cast<size_t>(n) * words_, 0) {}

  static BinaryRelation identity(int n);
  static BinaryRelation full(int n);

  int size() const { return n_; }

  bool test(int i, int j) const {
    return (row(i)[static_cast<size_t>(j) >> 6] >> (j & 63)) & 1u;
  }
  void set(int i, int j) {
    row(i)[static_cast<size_t>(j) >> 6] |= std::uint64_t{1} << (j & 63);
  }
  void clear(int i, int j) {
    row(i)[static_cast<size_t>(j) >> 6] &= ~(std::uint64_t{1} << (j & 63));
  }

  bool operator==(const BinaryRelation&) const = default;

  bool subset_of(const BinaryRelation& other) const;
  bool is_reflexive() const;
  bool is_symmetric() const;
  bool is_transitive() const;
  bool empty() const;
  int count() const;

  BinaryRelation operator&(const BinaryRelation& other) const;
  BinaryRelation operator|(const BinaryRelation& other) const;

  BinaryRelation reflexive_closure() const;
  /// Least reflexive-symmetric-transitive relation containing this one.
  BinaryRelation equivalence_closure() const;

  /// All set pairs in row-major order.
  std::vector<std::pair<int, int>> pairs() const;
  /// First pair (row-major) present here and absent in `other`.
  std::optional<std::pair<int, int>> first_not_in(const BinaryRelation& other) const;

  std::uint64_t* row(int i) { return bits_.data() + static_cast<size_t>(i) * words_; }
  const std::uint64_t* row(int i) const {
    return bits_.data() + static_cast<size_t>(i) * words_;
  }
  int words_per_row() const { return words_; }

 private:
  int n_ = 0;
  int words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// (a,c) in result iff a R b and b S c for some b.
BinaryRelation compose(const BinaryRelation& r, const BinaryRelation& s);

/// (a,b) in result iff (b,a) in r.
BinaryRelation converse(const BinaryRelation& r);

/// Alternating composition b . g . b . g ... with exactly h factors.
/// h = 1 yields b itself.
BinaryRelation circ_h(const BinaryRelation& b, const BinaryRelation& g, int h);

struct ChainFixpoint {
  BinaryRelation limit;
  int k_stab;  // least k with circ_h(k) == circ_h(k+1) == limit
};

/// Stabilization of the alternating chain of two reflexive relations.
/// Termination: the chain is monotone and bounded by the full relation.
ChainFixpoint chain_fixpoint(const BinaryRelation& b, const BinaryRelation& g);

}  // namespace mkit
