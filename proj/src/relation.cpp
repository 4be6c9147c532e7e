#include "mkit/relation.hpp"

#include <bit>
#include <cassert>
#include <stdexcept>

namespace mkit {

BinaryRelation BinaryRelation::identity(int n) {
  BinaryRelation r(n);
  for (int i = 0; i < n; ++i) r.set(i, i);
  return r;
}

BinaryRelation BinaryRelation::full(int n) {
  BinaryRelation r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r.set(i, j);
  return r;
}

bool BinaryRelation::subset_of(const BinaryRelation& other) const {
  assert(n_ == other.n_);
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~other.bits_[i]) return false;
  return true;
}

bool BinaryRelation::is_reflexive() const {
  for (int i = 0; i < n_; ++i)
    if (!test(i, i)) return false;
  return true;
}

bool BinaryRelation::is_symmetric() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (test(i, j) != test(j, i)) return false;
  return true;
}

bool BinaryRelation::is_transitive() const {
  return compose(*this, *this).subset_of(*this);
}

bool BinaryRelation::empty() const {
  for (auto w : bits_)
    if (w) return false;
  return true;
}

int BinaryRelation::count() const {
  int c = 0;
  for (auto w : bits_) c += std::popcount(w);
  return c;
}

BinaryRelation BinaryRelation::operator&(const BinaryRelation& other) const {
  assert(n_ == other.n_);
  BinaryRelation out(n_);
  for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] & other.bits_[i];
  return out;
}

BinaryRelation BinaryRelation::operator|(const BinaryRelation& other) const {
  assert(n_ == other.n_);
  BinaryRelation out(n_);
  for (size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] | other.bits_[i];
  return out;
}

BinaryRelation BinaryRelation::reflexive_closure() const {
  BinaryRelation out = *this;
  for (int i = 0; i < n_; ++i) out.set(i, i);
  return out;
}

BinaryRelation BinaryRelation::equivalence_closure() const {
  // union-find over the set pairs
  std::vector<int> parent(n_);
  for (int i = 0; i < n_; ++i) parent[i] = i;
  auto find = [&](int u) {
    while (parent[u] != u) u = parent[u] = parent[parent[u]];
    return u;
  };
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (test(i, j)) {
        int a = find(i), b = find(j);
        if (a != b) parent[a] = b;
      }
  BinaryRelation out(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (find(i) == find(j)) out.set(i, j);
  return out;
}

std::vector<std::pair<int, int>> BinaryRelation::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      if (test(i, j)) out.emplace_back(i, j);
  return out;
}

std::optional<std::pair<int, int>> BinaryRelation::first_not_in(
    const BinaryRelation& other) const {
  assert(n_ == other.n_);
  for (int i = 0; i < n_; ++i) {
    const std::uint64_t* a = row(i);
    const std::uint64_t* b = other.row(i);
    for (int w = 0; w < words_; ++w) {
      std::uint64_t diff = a[w] & ~b[w];
      if (diff) return std::make_pair(i, w * 64 + std::countr_zero(diff));
    }
  }
  return std::nullopt;
}

BinaryRelation compose(const BinaryRelation& r, const BinaryRelation& s) {
  if (r.size() != s.size()) throw std::invalid_argument("compose: size mismatch");
  int n = r.size();
  int words = r.words_per_row();
  BinaryRelation out(n);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t* ri = r.row(i);
    std::uint64_t* oi = out.row(i);
    for (int w = 0; w < words; ++w) {
      std::uint64_t m = ri[w];
      while (m) {
        int j = w * 64 + std::countr_zero(m);
        m &= m - 1;
        const std::uint64_t* sj = s.row(j);
        for (int v = 0; v < words; ++v) oi[v] |= sj[v];
      }
    }
  }
  return out;
}

BinaryRelation converse(const BinaryRelation& r) {
  int n = r.size();
  BinaryRelation out(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (r.test(i, j)) out.set(j, i);
  return out;
}

BinaryRelation circ_h(const BinaryRelation& b, const BinaryRelation& g, int h) {
  if (h < 1) throw std::invalid_argument("circ_h: factor count must be >= 1");
  if (b.size() != g.size()) throw std::invalid_argument("circ_h: size mismatch");
  BinaryRelation acc = b;
  for (int i = 2; i <= h; ++i) acc = compose(acc, (i % 2 == 0) ? g : b);
  return acc;
}

ChainFixpoint chain_fixpoint(const BinaryRelation& b, const BinaryRelation& g) {
  assert(b.is_reflexive() && g.is_reflexive());
  assert(b.size() == g.size());
  // reflexivity makes the chain monotone, so two consecutive repeats mean
  // the factor alternation can never grow it again
  long cap = static_cast<long>(b.size()) * b.size() + 2;
  BinaryRelation cur = b;  // circ_h(..., 1)
  int k = 1;
  int stable = 0;
  while (stable < 2) {
    BinaryRelation next = compose(cur, (k % 2 == 1) ? g : b);
    if (next == cur) {
      ++stable;
    } else {
      stable = 0;
      cur = next;
    }
    ++k;
    assert(k <= cap);
    (void)cap;
  }
  ChainFixpoint out{cur, k - 2};
#ifndef NDEBUG
  // for a pair of equivalences the limit is exactly their join
  if (b.is_symmetric() && b.is_transitive() && g.is_symmetric() && g.is_transitive())
    assert(out.limit == (b | g).equivalence_closure());
#endif
  return out;
}

}  // namespace mkit
