#include <algorithm>
#include <atomic>
#include <cassert>
#include <thread>

#include "mkit/identity.hpp"

namespace mkit {

namespace {

bool contains_join(const RelExpr& e) {
  if (e.kind == RelExpr::Kind::Join) return true;
  if (e.a && contains_join(*e.a)) return true;
  if (e.b && contains_join(*e.b)) return true;
  return false;
}

bool param_occurs(const RelExpr& e, const std::string& name) {
  if (e.kind == RelExpr::Kind::CompK && e.count_param == name) return true;
  if (e.a && param_occurs(*e.a, name)) return true;
  if (e.b && param_occurs(*e.b, name)) return true;
  return false;
}

}  // namespace

BinaryRelation evaluate(const RelExpr& e, const Binding& binding,
                        const ParamValues& params, bool limit_for_missing,
                        int* max_k_stab) {
  switch (e.kind) {
    case RelExpr::Kind::Var: {
      auto it = binding.find(e.name);
      if (it == binding.end())
        throw ValidationError("no relation bound to '" + e.name + "'");
      return it->second;
    }
    case RelExpr::Kind::Meet: {
      BinaryRelation l = evaluate(*e.a, binding, params, limit_for_missing, max_k_stab);
      BinaryRelation r = evaluate(*e.b, binding, params, limit_for_missing, max_k_stab);
      if (l.size() != r.size()) throw ValidationError("meet: size mismatch");
      return l & r;
    }
    case RelExpr::Kind::Join: {
      BinaryRelation l = evaluate(*e.a, binding, params, limit_for_missing, max_k_stab);
      BinaryRelation r = evaluate(*e.b, binding, params, limit_for_missing, max_k_stab);
      if (l.size() != r.size()) throw ValidationError("join: size mismatch");
      return (l | r).equivalence_closure();
    }
    case RelExpr::Kind::Comp: {
      BinaryRelation l = evaluate(*e.a, binding, params, limit_for_missing, max_k_stab);
      BinaryRelation r = evaluate(*e.b, binding, params, limit_for_missing, max_k_stab);
      return compose(l, r);
    }
    case RelExpr::Kind::CompK: {
      BinaryRelation l = evaluate(*e.a, binding, params, limit_for_missing, max_k_stab);
      BinaryRelation r = evaluate(*e.b, binding, params, limit_for_missing, max_k_stab);
      int count = e.count;
      if (count < 0) {
        auto it = params.find(e.count_param);
        if (it == params.end()) {
          if (!limit_for_missing)
            throw ValidationError("parameter '" + e.count_param + "' has no value");
          // monotonicity of the alternating chain needs reflexive operands
          assert(l.is_reflexive() && r.is_reflexive());
          ChainFixpoint fp = chain_fixpoint(l, r);
          if (max_k_stab) *max_k_stab = std::max(*max_k_stab, fp.k_stab);
          return fp.limit;
        }
        count = it->second;
      }
      if (count < 1) throw ValidationError("composition count must be >= 1");
      return circ_h(l, r, count);
    }
    case RelExpr::Kind::Conv:
      return converse(evaluate(*e.a, binding, params, limit_for_missing, max_k_stab));
  }
  throw ValidationError("corrupt expression");
}

Verdict check_quantified(const FiniteAlgebra& a, const IdentityAST& ast,
                         const ParamValues& params, const CheckOptions& opts) {
  // resolve one relation family per quantifier, in quantifier order
  std::vector<std::vector<BinaryRelation>> families;
  bool non_congruence_sort = false;
  for (const Quantifier& q : ast.quantifiers) {
    switch (q.sort) {
      case Sort::Congruence: {
        std::vector<BinaryRelation> fam;
        for (const Congruence& c : all_congruences(a, opts.congruence_bound))
          fam.push_back(c.to_relation());
        families.push_back(std::move(fam));
        break;
      }
      case Sort::Tolerance:
      case Sort::Representable: {
        non_congruence_sort = true;
        std::vector<BinaryRelation> fam;
        for (const RepresentableTolerance& rt :
             representable_family(a, opts.tolerance_max_pairs))
          fam.push_back(rt.delta.matrix);
        families.push_back(std::move(fam));
        break;
      }
      case Sort::Relation:
        throw ValidationError("sort 'relation' unsupported");
    }
  }
  if (non_congruence_sort && (contains_join(ast.lhs) || contains_join(ast.rhs)))
    throw ValidationError(
        "join is only defined for congruence quantifiers; tolerance sorts are "
        "rejected");

  ParamValues all_params = params;
  for (const ParamDecl& p : ast.params)
    if (p.value && !all_params.count(p.name)) all_params[p.name] = *p.value;

  long long total = 1;
  for (const auto& fam : families) {
    if (fam.empty()) return Verdict{VerdictStatus::Holds, std::nullopt, "empty family"};
    total *= static_cast<long long>(fam.size());
  }

  size_t nq = families.size();
  auto binding_at = [&](long long index) {
    Binding b = opts.fixed;
    long long rest = index;
    for (size_t qi = nq; qi-- > 0;) {
      long long sz = static_cast<long long>(families[qi].size());
      b[ast.quantifiers[qi].name] = families[qi][rest % sz];
      rest /= sz;
    }
    return b;
  };

  auto check_range = [&](long long lo, long long hi) -> long long {
    // first failing binding index in [lo, hi), or -1
    for (long long i = lo; i < hi; ++i) {
      Binding b = binding_at(i);
      BinaryRelation lhs = evaluate(ast.lhs, b, all_params);
      BinaryRelation rhs = evaluate(ast.rhs, b, all_params);
      if (!lhs.subset_of(rhs)) return i;
    }
    return -1;
  };

  long long fail_index = -1;
  int jobs = std::max(1, opts.jobs);
  if (jobs == 1 || total < 2 * jobs) {
    fail_index = check_range(0, total);
  } else {
    // workers race over disjoint chunks; the winner is decided by binding
    // order, not by arrival
    std::atomic<long long> best{-1};
    std::vector<std::thread> pool;
    long long chunk = (total + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
      pool.emplace_back([&, w]() {
        long long lo = w * chunk, hi = std::min<long long>(total, lo + chunk);
        if (lo >= hi) return;
        long long local = check_range(lo, hi);
        if (local >= 0) {
          long long cur = best.load();
          while ((cur < 0 || local < cur) &&
                 !best.compare_exchange_weak(cur, local)) {
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    fail_index = best.load();
  }

  if (fail_index < 0) return Verdict{VerdictStatus::Holds, std::nullopt, ""};

  Binding b = binding_at(fail_index);
  BinaryRelation lhs = evaluate(ast.lhs, b, all_params);
  BinaryRelation rhs = evaluate(ast.rhs, b, all_params);
  auto pair = lhs.first_not_in(rhs);
  assert(pair.has_value());
  Counterexample cex;
  for (const Quantifier& q : ast.quantifiers) cex.binding.emplace_back(q.name, b[q.name]);
  cex.pair = *pair;
  return Verdict{VerdictStatus::Fails, std::move(cex), ""};
}

MinParameter find_min_parameter(const FiniteAlgebra& a, const IdentityAST& ast,
                                std::optional<int> k_max, const CheckOptions& opts) {
  std::string sym;
  for (const ParamDecl& p : ast.params)
    if (!p.value) {
      if (!sym.empty())
        throw ValidationError("exactly one symbolic parameter expected");
      sym = p.name;
    }
  if (sym.empty()) throw ValidationError("no symbolic parameter to search");
  if (param_occurs(ast.lhs, sym))
    throw ValidationError("parameter '" + sym +
                          "' occurs on the left-hand side; the search needs it "
                          "only in monotone (right-hand) positions");

  ParamValues fixed_params;
  for (const ParamDecl& p : ast.params)
    if (p.value) fixed_params[p.name] = *p.value;

  // families and binding order exactly as in check_quantified
  std::vector<std::vector<BinaryRelation>> families;
  for (const Quantifier& q : ast.quantifiers) {
    switch (q.sort) {
      case Sort::Congruence: {
        std::vector<BinaryRelation> fam;
        for (const Congruence& c : all_congruences(a, opts.congruence_bound))
          fam.push_back(c.to_relation());
        families.push_back(std::move(fam));
        break;
      }
      case Sort::Tolerance:
      case Sort::Representable: {
        std::vector<BinaryRelation> fam;
        for (const RepresentableTolerance& rt :
             representable_family(a, opts.tolerance_max_pairs))
          fam.push_back(rt.delta.matrix);
        families.push_back(std::move(fam));
        break;
      }
      case Sort::Relation:
        throw ValidationError("sort 'relation' unsupported");
    }
  }

  long long total = 1;
  for (const auto& fam : families) total *= std::max<size_t>(1, fam.size());

  // if the containment fails with every parameterized composition pushed to
  // its chain limit, no finite count can ever work
  int max_stab = 1;
  for (long long i = 0; i < total; ++i) {
    Binding b = opts.fixed;
    long long rest = i;
    for (size_t qi = families.size(); qi-- > 0;) {
      long long sz = static_cast<long long>(families[qi].size());
      b[ast.quantifiers[qi].name] = families[qi][rest % sz];
      rest /= sz;
    }
    BinaryRelation lhs = evaluate(ast.lhs, b, fixed_params);
    BinaryRelation rhs = evaluate(ast.rhs, b, fixed_params, true, &max_stab);
    if (!lhs.subset_of(rhs)) return MinParameter{false, 0};
  }

  int bound = k_max.value_or(max_stab);
  for (int k = 1; k <= bound; ++k) {
    ParamValues pv = fixed_params;
    pv[sym] = k;
    if (check_quantified(a, ast, pv, opts).holds()) return MinParameter{true, k};
  }
  throw CapExceeded("find_min_parameter: the chain limit admits the containment "
                    "but no k <= " +
                    std::to_string(bound) + " was found");
}

}  // namespace mkit
