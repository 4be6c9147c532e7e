#include "mkit/algebra.hpp"

#include <set>

namespace mkit {

namespace {

// n^r with overflow guard; table lengths beyond this are rejected anyway
long long checked_pow(int n, int r) {
  long long v = 1;
  for (int i = 0; i < r; ++i) {
    v *= n;
    if (v > (1LL << 40)) throw ValidationError("operation table too large");
  }
  return v;
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(std::string name, int size, std::vector<Operation> ops)
    : name_(std::move(name)), size_(size), ops_(std::move(ops)) {
  if (size_ < 1) throw ValidationError("size " + std::to_string(size_) + " < 1");
  std::set<std::string> seen;
  for (const Operation& op : ops_) {
    if (op.arity < 0)
      throw ValidationError("operation '" + op.name + "' has negative arity");
    if (!seen.insert(op.name).second)
      throw ValidationError("duplicate operation name '" + op.name + "'");
    long long want = checked_pow(size_, op.arity);
    if (static_cast<long long>(op.table.size()) != want)
      throw ValidationError("table length " + std::to_string(op.table.size()) +
                            " != " + std::to_string(want) + " for operation '" +
                            op.name + "'");
    for (int v : op.table)
      if (v < 0 || v >= size_)
        throw ValidationError("entry " + std::to_string(v) +
                              " out of range in operation '" + op.name + "'");
  }
}

int FiniteAlgebra::operation_index(const std::string& name) const {
  for (size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name == name) return static_cast<int>(i);
  return -1;
}

int FiniteAlgebra::apply(int op_index, std::span<const int> args) const {
  const Operation& op = ops_.at(op_index);
  if (static_cast<int>(args.size()) != op.arity)
    throw ValidationError("arity mismatch for operation '" + op.name + "': got " +
                          std::to_string(args.size()) + " arguments, expected " +
                          std::to_string(op.arity));
  long long idx = 0;
  for (int a : args) {
    if (a < 0 || a >= size_)
      throw ValidationError("element " + std::to_string(a) + " out of range");
    idx = idx * size_ + a;
  }
  return op.table[idx];
}

std::uint64_t FiniteAlgebra::fingerprint() const {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ULL;
  };
  mix(static_cast<std::uint64_t>(size_));
  for (const Operation& op : ops_) {
    mix(static_cast<std::uint64_t>(op.arity));
    for (int v : op.table) mix(static_cast<std::uint64_t>(v) + 0x9e3779b9);
  }
  return h;
}

}  // namespace mkit
