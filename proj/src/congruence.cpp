#include "mkit/congruence.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace mkit {

namespace {

void canonicalize(std::vector<int>& rep) {
  // rep[i] must be the least element of i's block; resolve chains first
  int n = static_cast<int>(rep.size());
  for (int i = 0; i < n; ++i) {
    int r = i;
    while (rep[r] != r) r = rep[r];
    rep[i] = r;
  }
  std::vector<int> least(n, -1);
  for (int i = 0; i < n; ++i)
    if (least[rep[i]] < 0) least[rep[i]] = i;
  for (int i = 0; i < n; ++i) rep[i] = least[rep[i]];
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int u) {
    while (parent[u] != u) u = parent[u] = parent[parent[u]];
    return u;
  }
  // returns true when two blocks were merged
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);  // keep smaller index as root
    parent[b] = a;
    return true;
  }
  std::vector<int> reps() {
    std::vector<int> out(parent.size());
    for (size_t i = 0; i < parent.size(); ++i) out[i] = find(static_cast<int>(i));
    return out;
  }
};

}  // namespace

Congruence Congruence::from_partition(std::vector<int> rep) {
  canonicalize(rep);
  Congruence c;
  c.rep_ = std::move(rep);
  return c;
}

Congruence Congruence::from_relation(const BinaryRelation& rel) {
  int n = rel.size();
  UnionFind uf(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rel.test(i, j)) uf.unite(i, j);
  return from_partition(uf.reps());
}

int Congruence::block_count() const {
  int c = 0;
  for (size_t i = 0; i < rep_.size(); ++i)
    if (rep_[i] == static_cast<int>(i)) ++c;
  return c;
}

BinaryRelation Congruence::to_relation() const {
  int n = size();
  BinaryRelation m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rep_[i] == rep_[j]) m.set(i, j);
  return m;
}

Congruence Congruence::meet(const Congruence& other) const {
  assert(size() == other.size());
  int n = size();
  std::map<std::pair<int, int>, int> blocks;
  std::vector<int> rep(n);
  for (int i = 0; i < n; ++i) {
    auto key = std::make_pair(rep_[i], other.rep_[i]);
    auto [it, fresh] = blocks.try_emplace(key, i);
    rep[i] = it->second;
  }
  return from_partition(std::move(rep));
}

bool Congruence::below(const Congruence& other) const {
  for (int i = 0; i < size(); ++i)
    if (other.rep_[rep_[i]] != other.rep_[i]) return false;
  return true;
}

Congruence Congruence::identity(int n) {
  std::vector<int> rep(n);
  for (int i = 0; i < n; ++i) rep[i] = i;
  return from_partition(std::move(rep));
}

Congruence Congruence::full(int n) {
  return from_partition(std::vector<int>(n, 0));
}

bool is_compatible(const FiniteAlgebra& a, const BinaryRelation& rel) {
  int n = a.size();
  for (const Operation& op : a.operations()) {
    int r = op.arity;
    if (r == 0) continue;
    // walk all pairs of argument tuples related componentwise
    std::vector<int> xs(r, 0), ys(r, 0);
    while (true) {
      // advance ys within the rel-neighborhoods of xs
      long long ix = 0;
      for (int v : xs) ix = ix * n + v;
      std::vector<int> cur(r, 0);
      bool carry_out = false;
      auto ok_tuple = [&](const std::vector<int>& t) {
        for (int i = 0; i < r; ++i)
          if (!rel.test(xs[i], t[i])) return false;
        return true;
      };
      while (!carry_out) {
        if (ok_tuple(cur)) {
          long long iy = 0;
          for (int v : cur) iy = iy * n + v;
          if (!rel.test(op.table[ix], op.table[iy])) return false;
        }
        int p = r - 1;
        while (p >= 0 && ++cur[p] == n) {
          cur[p] = 0;
          --p;
        }
        if (p < 0) carry_out = true;
      }
      int p = r - 1;
      while (p >= 0 && ++xs[p] == n) {
        xs[p] = 0;
        --p;
      }
      if (p < 0) break;
    }
  }
  return true;
}

bool is_congruence(const FiniteAlgebra& a, const Congruence& c) {
  return c.size() == a.size() && is_compatible(a, c.to_relation());
}

AdmissibleRelation compatible_closure(const FiniteAlgebra& a, const BinaryRelation& rel) {
  if (rel.size() != a.size())
    throw ValidationError("compatible_closure: relation size mismatch");
  int n = a.size();
  BinaryRelation cur = rel.reflexive_closure();
  bool grew = true;
  while (grew) {
    grew = false;
    BinaryRelation next = cur;
    for (const Operation& op : a.operations()) {
      int r = op.arity;
      if (r == 0) continue;
      std::vector<int> xs(r, 0);
      while (true) {
        long long ix = 0;
        for (int v : xs) ix = ix * n + v;
        std::vector<int> ys(r, 0);
        bool done = false;
        while (!done) {
          bool rel_ok = true;
          for (int i = 0; i < r && rel_ok; ++i) rel_ok = cur.test(xs[i], ys[i]);
          if (rel_ok) {
            long long iy = 0;
            for (int v : ys) iy = iy * n + v;
            if (!next.test(op.table[ix], op.table[iy])) {
              next.set(op.table[ix], op.table[iy]);
              grew = true;
            }
          }
          int p = r - 1;
          while (p >= 0 && ++ys[p] == n) {
            ys[p] = 0;
            --p;
          }
          done = p < 0;
        }
        int p = r - 1;
        while (p >= 0 && ++xs[p] == n) {
          xs[p] = 0;
          --p;
        }
        if (p < 0) break;
      }
    }
    cur = next;
  }
  return AdmissibleRelation{cur};
}

Congruence cg(const FiniteAlgebra& a, const std::vector<std::pair<int, int>>& pairs) {
  int n = a.size();
  for (auto [x, y] : pairs)
    if (x < 0 || x >= n || y < 0 || y >= n)
      throw ValidationError("cg: pair element out of range");

  // merge-driven propagation: whenever two blocks merge, push the merged
  // pair through every operation one coordinate at a time; transitivity is
  // maintained by the union-find, and single-coordinate substitution
  // suffices for an equivalence
  UnionFind uf(n);
  std::vector<std::pair<int, int>> work;
  for (auto [x, y] : pairs)
    if (uf.unite(x, y)) work.emplace_back(x, y);

  std::vector<int> args;
  while (!work.empty()) {
    auto [u, v] = work.back();
    work.pop_back();
    for (const Operation& op : a.operations()) {
      int r = op.arity;
      if (r == 0) continue;
      args.assign(r, 0);
      for (int pos = 0; pos < r; ++pos) {
        // args ranges over all tuples of the remaining coordinates
        std::fill(args.begin(), args.end(), 0);
        while (true) {
          long long iu = 0, iv = 0;
          for (int i = 0; i < r; ++i) {
            int au = (i == pos) ? u : args[i];
            int av = (i == pos) ? v : args[i];
            iu = iu * n + au;
            iv = iv * n + av;
          }
          int fu = op.table[iu], fv = op.table[iv];
          if (uf.unite(fu, fv)) work.emplace_back(fu, fv);
          int p = r - 1;
          while (p >= 0) {
            if (p == pos) {
              --p;
              continue;
            }
            if (++args[p] < n) break;
            args[p] = 0;
            --p;
          }
          if (p < 0) break;
        }
      }
    }
  }
  return Congruence::from_partition(uf.reps());
}

Congruence join(const FiniteAlgebra& a, const Congruence& t1, const Congruence& t2) {
  assert(t1.size() == a.size() && t2.size() == a.size());
  UnionFind uf(a.size());
  for (int i = 0; i < a.size(); ++i) {
    uf.unite(i, t1.rep()[i]);
    uf.unite(i, t2.rep()[i]);
  }
  Congruence out = Congruence::from_partition(uf.reps());
  assert(is_congruence(a, out));
  return out;
}

std::vector<Congruence> all_congruences(const FiniteAlgebra& a, int max_size) {
  if (a.size() > max_size)
    throw CapExceeded("all_congruences: size " + std::to_string(a.size()) +
                      " exceeds bound " + std::to_string(max_size));
  int n = a.size();
  std::set<std::vector<int>> seen;
  std::vector<Congruence> out;
  auto push = [&](const Congruence& c) {
    if (seen.insert(c.rep()).second) {
      out.push_back(c);
      return true;
    }
    return false;
  };
  push(Congruence::identity(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) push(cg(a, {{i, j}}));
  // close under joins; every congruence is a join of principal ones
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = 0; j < i; ++j) push(join(a, out[i], out[j]));
  std::sort(out.begin(), out.end());
  return out;
}

RepresentableTolerance representable_tolerance(
    const FiniteAlgebra& a, const std::vector<std::pair<int, int>>& pairs) {
  BinaryRelation seed(a.size());
  for (auto [x, y] : pairs) {
    if (x < 0 || x >= a.size() || y < 0 || y >= a.size())
      throw ValidationError("representable_tolerance: pair out of range");
    seed.set(x, y);
  }
  AdmissibleRelation r = compatible_closure(a, seed);
  Tolerance delta{compose(r.matrix, converse(r.matrix))};
  assert(delta.matrix.is_reflexive());
  assert(delta.matrix.is_symmetric());
  assert(is_compatible(a, delta.matrix));
  return RepresentableTolerance{std::move(r), std::move(delta)};
}

std::vector<RepresentableTolerance> representable_family(const FiniteAlgebra& a,
                                                         int max_pairs) {
  int n = a.size();
  std::vector<std::pair<int, int>> all;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) all.emplace_back(i, j);

  std::vector<RepresentableTolerance> out;
  std::set<std::vector<std::pair<int, int>>> seen_delta;
  auto offer = [&](const std::vector<std::pair<int, int>>& ps) {
    RepresentableTolerance rt = representable_tolerance(a, ps);
    if (seen_delta.insert(rt.delta.matrix.pairs()).second) out.push_back(std::move(rt));
  };
  offer({});
  if (max_pairs >= 1)
    for (auto p : all) offer({p});
  if (max_pairs >= 2)
    for (size_t i = 0; i < all.size(); ++i)
      for (size_t j = i + 1; j < all.size(); ++j) offer({all[i], all[j]});
  if (max_pairs >= 3)
    throw ValidationError("representable_family: pair sets larger than 2 not supported");
  return out;
}

}  // namespace mkit
