#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mkit {

/// Raised when an input algebra or expression fails validation.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a configured resource cap is reached.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One basic operation: a flat table of n^arity universe elements,
/// row-major (the index of (a_1,...,a_r) is a_1*n^(r-1) + ... + a_r).
struct Operation {
  std::string name;
  int arity = 0;
  std::vector<int> table;
};

/// A finite algebra on the universe {0, ..., n-1}.
///
/// Construction validates: size >= 1, table lengths n^arity, entries in
/// range, distinct operation names. Values are immutable afterwards.
class FiniteAlgebra {
 public:
  FiniteAlgebra(std::string name, int size, std::vector<Operation> ops);

  const std::string& name() const { return name_; }
  int size() const { return size_; }
  const std::vector<Operation>& operations() const { return ops_; }
  int operation_index(const std::string& name) const;  // -1 if absent

  /// Table lookup at the flat index of args. Throws on arity or range
  /// mismatch.
  int apply(int op_index, std::span<const int> args) const;

  /// FNV-1a over size and operation tables; used as the report fingerprint.
  std::uint64_t fingerprint() const;

 private:
  std::string name_;
  int size_;
  std::vector<Operation> ops_;
};

}  // namespace mkit
