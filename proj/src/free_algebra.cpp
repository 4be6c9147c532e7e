#include "mkit/free_algebra.hpp"

#include <algorithm>
#include <cassert>
#include <cstring>
#include <numeric>

namespace mkit {

namespace {

std::uint64_t hash_bytes(const std::uint8_t* p, size_t padded_words) {
  std::uint64_t h = 1469598103934665603ULL;
  const std::uint64_t* q = reinterpret_cast<const std::uint64_t*>(p);
  for (size_t i = 0; i < padded_words; ++i) {
    h ^= q[i];
    h *= 1099511628211ULL;
    h ^= h >> 29;
  }
  return h;
}

// grows a round-local arena of fresh tables with first-derivation provenance
struct RoundBuffer {
  size_t stride;
  int table_len;
  std::vector<std::uint8_t> arena;
  std::vector<Provenance> prov;
  std::unordered_map<std::uint64_t, std::vector<std::int32_t>> index;

  int count() const { return static_cast<int>(prov.size()); }
  const std::uint8_t* row(int i) const { return arena.data() + static_cast<size_t>(i) * stride; }

  bool contains(std::uint64_t h, const std::uint8_t* p) const {
    auto it = index.find(h);
    if (it == index.end()) return false;
    for (int32_t cand : it->second)
      if (std::memcmp(row(cand), p, table_len) == 0) return true;
    return false;
  }
  void add(std::uint64_t h, const std::uint8_t* p, Provenance pr) {
    int32_t id = count();
    arena.resize(arena.size() + stride, 0);
    std::memcpy(arena.data() + static_cast<size_t>(id) * stride, p, table_len);
    prov.push_back(std::move(pr));
    index[h].push_back(id);
  }
};

}  // namespace

std::uint64_t FreeAlgebra::hash_row(const std::uint8_t* p) const {
  return hash_bytes(p, stride_ / 8);
}

int FreeAlgebra::find(std::span<const std::uint8_t> tbl) const {
  if (static_cast<int>(tbl.size()) != table_len_) return -1;
  std::vector<std::uint8_t> padded(stride_, 0);
  std::memcpy(padded.data(), tbl.data(), table_len_);
  auto it = index_.find(hash_row(padded.data()));
  if (it == index_.end()) return -1;
  for (int32_t cand : it->second)
    if (std::memcmp(arena_.data() + static_cast<size_t>(cand) * stride_, padded.data(),
                    table_len_) == 0)
      return cand;
  return -1;
}

FiniteAlgebra FreeAlgebra::as_algebra(long long max_cells) const {
  int n = count();
  std::vector<Operation> ops;
  for (size_t oi = 0; oi < base_->operations().size(); ++oi) {
    const Operation& op = base_->operations()[oi];
    long long cells = 1;
    for (int i = 0; i < op.arity; ++i) cells *= n;
    if (cells > max_cells)
      throw CapExceeded("as_algebra: induced table for '" + op.name +
                        "' would have " + std::to_string(cells) + " cells");
    Operation induced{op.name, op.arity, std::vector<int>(cells)};
    std::vector<int> tuple(op.arity, 0);
    std::vector<std::uint8_t> tmp(table_len_);
    for (long long idx = 0; idx < cells; ++idx) {
      for (int t = 0; t < table_len_; ++t) {
        int v;
        switch (op.arity) {
          case 0:
            v = op.table[0];
            break;
          case 1:
            v = op.table[table(tuple[0])[t]];
            break;
          case 2:
            v = op.table[table(tuple[0])[t] * base_->size() + table(tuple[1])[t]];
            break;
          default: {
            long long f = 0;
            for (int i = 0; i < op.arity; ++i) f = f * base_->size() + table(tuple[i])[t];
            v = op.table[f];
            break;
          }
        }
        tmp[t] = static_cast<std::uint8_t>(v);
      }
      int e = find(tmp);
      assert(e >= 0 && "free algebra must be closed");
      induced.table[idx] = e;
      for (int p = op.arity - 1; p >= 0; --p) {
        if (++tuple[p] < n) break;
        tuple[p] = 0;
      }
    }
    ops.push_back(std::move(induced));
  }
  return FiniteAlgebra(base_->name() + ".free4", n, std::move(ops));
}

FreeAlgebra free_algebra(const FiniteAlgebra& a, long long cap) {
  int n = a.size();
  // each element stores an n^4 table; past this point a handful of
  // elements already dwarfs the element cap
  if (n > 40) throw ValidationError("free_algebra: base size too large");
  long long len = static_cast<long long>(n) * n * n * n;
  FreeAlgebra f;
  f.base_ = std::make_shared<FiniteAlgebra>(a);
  f.table_len_ = static_cast<int>(len);
  f.stride_ = (len + 7) / 8 * 8;

  auto append = [&](const std::uint8_t* p, Provenance pr) {
    std::uint64_t h = hash_bytes(p, f.stride_ / 8);
    int32_t id = f.count();
    f.arena_.insert(f.arena_.end(), p, p + f.stride_);
    f.prov_.push_back(std::move(pr));
    f.index_[h].push_back(id);
    return id;
  };

  // the four projections, in generator order
  std::vector<std::uint8_t> tmp(f.stride_, 0);
  for (int g = 0; g < 4; ++g) {
    for (int t = 0; t < f.table_len_; ++t) {
      int div = 1;
      for (int i = 0; i < 3 - g; ++i) div *= n;
      tmp[t] = static_cast<std::uint8_t>((t / div) % n);
    }
    std::uint64_t h = hash_bytes(tmp.data(), f.stride_ / 8);
    auto it = f.index_.find(h);
    int found = -1;
    if (it != f.index_.end())
      for (int32_t cand : it->second)
        if (std::memcmp(f.arena_.data() + static_cast<size_t>(cand) * f.stride_,
                        tmp.data(), f.table_len_) == 0)
          found = cand;
    f.gen_ids_[g] =
        found >= 0 ? found : append(tmp.data(), Provenance{-1, g, {}});
  }

  std::vector<bool> commutative(a.operations().size(), false);
  for (size_t oi = 0; oi < a.operations().size(); ++oi) {
    const Operation& op = a.operations()[oi];
    if (op.arity == 2) {
      bool sym = true;
      for (int x = 0; x < n && sym; ++x)
        for (int y = 0; y < n && sym; ++y) sym = op.table[x * n + y] == op.table[y * n + x];
      commutative[oi] = sym;
    }
  }

  int prev_start = 0;
  bool first_round = true;
  while (true) {
    int count = f.count();
    RoundBuffer fresh{f.stride_, f.table_len_, {}, {}, {}};

    auto offer = [&](const std::uint8_t* p, int op, std::vector<int> args) {
      std::uint64_t h = hash_bytes(p, f.stride_ / 8);
      auto it = f.index_.find(h);
      if (it != f.index_.end())
        for (int32_t cand : it->second)
          if (std::memcmp(f.arena_.data() + static_cast<size_t>(cand) * f.stride_, p,
                          f.table_len_) == 0)
            return;
      if (!fresh.contains(h, p)) {
        // the cap also bounds the in-round buffer, or a single round could
        // exhaust memory before any append happens
        if (count + fresh.count() >= cap)
          throw CapExceeded("free_algebra: element cap " + std::to_string(cap) +
                            " exceeded during closure");
        fresh.add(h, p, Provenance{op, -1, std::move(args)});
      }
    };

    for (size_t oi = 0; oi < a.operations().size(); ++oi) {
      const Operation& op = a.operations()[oi];
      const int* tbl = op.table.data();
      switch (op.arity) {
        case 0: {
          if (!first_round) break;
          std::fill(tmp.begin(), tmp.end(), 0);
          std::fill_n(tmp.begin(), f.table_len_, static_cast<std::uint8_t>(tbl[0]));
          offer(tmp.data(), static_cast<int>(oi), {});
          break;
        }
        case 1: {
          int lo = first_round ? 0 : prev_start;
          for (int i = lo; i < count; ++i) {
            const std::uint8_t* e = f.arena_.data() + static_cast<size_t>(i) * f.stride_;
            for (int t = 0; t < f.table_len_; ++t)
              tmp[t] = static_cast<std::uint8_t>(tbl[e[t]]);
            offer(tmp.data(), static_cast<int>(oi), {i});
          }
          break;
        }
        case 2: {
          int ps = first_round ? 0 : prev_start;
          for (int i = 0; i < count; ++i) {
            const std::uint8_t* ei = f.arena_.data() + static_cast<size_t>(i) * f.stride_;
            int jlo = commutative[oi] ? std::max(i, ps) : (i >= ps ? 0 : ps);
            for (int j = jlo; j < count; ++j) {
              const std::uint8_t* ej =
                  f.arena_.data() + static_cast<size_t>(j) * f.stride_;
              for (int t = 0; t < f.table_len_; ++t)
                tmp[t] = static_cast<std::uint8_t>(tbl[ei[t] * n + ej[t]]);
              offer(tmp.data(), static_cast<int>(oi), {i, j});
            }
          }
          break;
        }
        default: {
          // generic odometer over argument tuples with at least one fresh
          int r = op.arity;
          std::vector<int> args(r, 0);
          int ps = first_round ? 0 : prev_start;
          while (true) {
            bool any_new = false;
            for (int v : args) any_new = any_new || v >= ps;
            if (any_new || first_round) {
              for (int t = 0; t < f.table_len_; ++t) {
                long long flat = 0;
                for (int i = 0; i < r; ++i)
                  flat = flat * n +
                         f.arena_[static_cast<size_t>(args[i]) * f.stride_ + t];
                tmp[t] = static_cast<std::uint8_t>(tbl[flat]);
              }
              offer(tmp.data(), static_cast<int>(oi), args);
            }
            int p = r - 1;
            while (p >= 0 && ++args[p] == count) {
              args[p] = 0;
              --p;
            }
            if (p < 0) break;
          }
          break;
        }
      }
    }
    first_round = false;
    if (fresh.count() == 0) break;
    ++f.rounds_;

    // append this round's elements in value-list lexicographic order
    std::vector<int32_t> order(fresh.count());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int32_t x, int32_t y) {
      return std::memcmp(fresh.row(x), fresh.row(y), f.table_len_) < 0;
    });
    prev_start = count;
    for (int32_t id : order) {
      append(fresh.row(id), std::move(fresh.prov[id]));
      if (f.count() > cap)
        throw CapExceeded("free_algebra: element cap " + std::to_string(cap) +
                          " exceeded (at " + std::to_string(f.count()) + " elements)");
    }
  }
  return f;
}

std::string TermExpr::str() const {
  if (!var.empty()) return var;
  std::string out = op;
  out += '(';
  for (size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += args[i].str();
  }
  out += ')';
  return out;
}

TermExpr term_expression_of(const FreeAlgebra& f, int element) {
  static const char* kGen[4] = {"x", "y", "z", "w"};
  const Provenance& p = f.provenance(element);
  if (p.op < 0) return TermExpr{kGen[p.generator], "", {}};
  TermExpr out{"", f.base().operations()[p.op].name, {}};
  for (int arg : p.args) out.args.push_back(term_expression_of(f, arg));
  return out;
}

int eval_term(const FiniteAlgebra& a, const TermExpr& t,
              const std::map<std::string, int>& env) {
  if (!t.var.empty()) {
    auto it = env.find(t.var);
    if (it == env.end()) throw ValidationError("unknown variable '" + t.var + "'");
    return it->second;
  }
  int oi = a.operation_index(t.op);
  if (oi < 0) throw ValidationError("unknown operation '" + t.op + "'");
  std::vector<int> vals;
  vals.reserve(t.args.size());
  for (const TermExpr& sub : t.args) vals.push_back(eval_term(a, sub, env));
  return a.apply(oi, vals);
}

std::vector<std::uint8_t> term_table(const FiniteAlgebra& a, const TermExpr& t,
                                     const std::vector<std::string>& vars) {
  int n = a.size();
  long long len = 1;
  for (size_t i = 0; i < vars.size(); ++i) len *= n;
  std::vector<std::uint8_t> out(len);
  std::map<std::string, int> env;
  std::vector<int> tuple(vars.size(), 0);
  for (long long idx = 0; idx < len; ++idx) {
    for (size_t i = 0; i < vars.size(); ++i) env[vars[i]] = tuple[i];
    out[idx] = static_cast<std::uint8_t>(eval_term(a, t, env));
    for (int p = static_cast<int>(vars.size()) - 1; p >= 0; --p) {
      if (++tuple[p] < n) break;
      tuple[p] = 0;
    }
  }
  return out;
}

EquationCheck check_equation_on_a(const FiniteAlgebra& a, const TermExpr& lhs,
                                  const TermExpr& rhs,
                                  const std::vector<std::string>& vars) {
  int n = a.size();
  std::vector<int> tuple(vars.size(), 0);
  std::map<std::string, int> env;
  while (true) {
    for (size_t i = 0; i < vars.size(); ++i) env[vars[i]] = tuple[i];
    if (eval_term(a, lhs, env) != eval_term(a, rhs, env))
      return EquationCheck{false, tuple};
    int p = static_cast<int>(vars.size()) - 1;
    while (p >= 0 && ++tuple[p] == n) {
      tuple[p] = 0;
      --p;
    }
    if (p < 0) break;
  }
  return EquationCheck{true, {}};
}

}  // namespace mkit
