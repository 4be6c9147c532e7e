#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mkit/algebra.hpp"
#include "mkit/congruence.hpp"
#include "mkit/relation.hpp"

namespace mkit {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int line_, int col_, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(line_) + ":" +
                           std::to_string(col_) + ": " + msg),
        line(line_),
        col(col_) {}
};

/// Expression over relation variables.
///
/// o[k] is the alternating composition of the two operands with k factors,
/// so a o[1] b = a and a o[2] b = a o b.
struct RelExpr {
  enum class Kind { Var, Meet, Join, Comp, CompK, Conv };
  Kind kind = Kind::Var;
  std::string name;             // Var
  std::unique_ptr<RelExpr> a, b;
  int count = -1;               // CompK with a fixed count
  std::string count_param;      // CompK with a symbolic count

  RelExpr clone() const;
  bool equals(const RelExpr& other) const;
};

enum class Sort { Congruence, Tolerance, Representable, Relation };
std::string sort_name(Sort s);

struct Quantifier {
  std::string name;
  Sort sort;
  bool operator==(const Quantifier&) const = default;
};

struct ParamDecl {
  std::string name;
  std::optional<int> value;
  bool operator==(const ParamDecl&) const = default;
};

struct IdentityAST {
  RelExpr lhs, rhs;
  std::vector<Quantifier> quantifiers;
  std::vector<ParamDecl> params;

  bool equals(const IdentityAST& other) const;
};

/// Parse the containment DSL:
///
///   identity := expr "<=" expr quant* param*
///   quant    := ";" "forall" name ("," name)* ":" sort
///   param    := ";" "param" name ("=" INT)?
///   expr     := joinexpr
///   joinexpr := compexpr ("+" compexpr)*
///   compexpr := meetexpr (("o" | "o" "[" (INT|name) "]") meetexpr)*
///   meetexpr := atom ("&" atom)*
///   atom     := name | "conv(" expr ")" | "(" expr ")"
///
/// Precedence: & binds tightest, then o, then +; all left-associative.
/// Every variable must be quantified exactly once, except names listed in
/// free_names (bound externally). Symbolic counts must be declared params.
IdentityAST parse_identity(const std::string& text,
                           const std::set<std::string>& free_names = {});

std::string pretty_print(const RelExpr& e);
std::string pretty_print(const IdentityAST& ast);

using Binding = std::map<std::string, BinaryRelation>;
using ParamValues = std::map<std::string, int>;

/// Structural evaluation. Join is the equivalence closure of the union.
/// When limit_for_missing is set, a CompK whose parameter has no value
/// evaluates to the chain fixpoint limit of its operands; max_k_stab, when
/// given, accumulates the largest stabilization index seen.
BinaryRelation evaluate(const RelExpr& e, const Binding& binding,
                        const ParamValues& params, bool limit_for_missing = false,
                        int* max_k_stab = nullptr);

enum class VerdictStatus { Holds, Fails, HypothesisNotMet };

struct Counterexample {
  std::vector<std::pair<std::string, BinaryRelation>> binding;  // quantifier order
  std::pair<int, int> pair;                                     // in lhs, not in rhs
};

struct Verdict {
  VerdictStatus status = VerdictStatus::Holds;
  std::optional<Counterexample> counterexample;
  std::string note;

  bool holds() const { return status == VerdictStatus::Holds; }
};

struct CheckOptions {
  int jobs = 1;
  int congruence_bound = 60;   // all_congruences size bound
  int tolerance_max_pairs = 2; // sampling depth for tolerance sorts
  Binding fixed;               // externally bound names, added to every binding
};

/// Quantified containment check over an algebra. Bindings iterate in
/// deterministic order (leftmost quantifier outermost, each family in its
/// listing order); a failing verdict carries the first counterexample in
/// that order.
Verdict check_quantified(const FiniteAlgebra& a, const IdentityAST& ast,
                         const ParamValues& params, const CheckOptions& opts = {});

struct MinParameter {
  bool found = false;  // false: no k exists at all (the chain limit fails)
  int k = 0;
};

/// Smallest k making the single symbolic parameter of ast hold, searching
/// k = 1.. upward. The parameter must occur only on the right-hand side.
MinParameter find_min_parameter(const FiniteAlgebra& a, const IdentityAST& ast,
                                std::optional<int> k_max = {},
                                const CheckOptions& opts = {});

}  // namespace mkit
