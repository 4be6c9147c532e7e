#include "mkit/commands.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "mkit/bounds.hpp"
#include "mkit/builtins.hpp"
#include "mkit/maltsev.hpp"

namespace mkit {

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

Json fingerprint(const FiniteAlgebra& a) {
  std::ostringstream hex;
  hex << "0x" << std::hex << a.fingerprint();
  return Json{{"size", a.size()}, {"table_hash", hex.str()}};
}

Json base_report(const char* command, const CommonArgs& args) {
  Json report;
  report["command"] = Json{{"name", command}, {"algebra", args.algebra_ref}};
  report["algebra"] = algebra_to_json(args.algebra);
  report["fingerprint"] = fingerprint(args.algebra);
  return report;
}

Json verdict_to_json(const Verdict& v) {
  Json out;
  switch (v.status) {
    case VerdictStatus::Holds: out["status"] = "holds"; break;
    case VerdictStatus::Fails: out["status"] = "fails"; break;
    case VerdictStatus::HypothesisNotMet: out["status"] = "hypothesis-not-met"; break;
  }
  if (!v.note.empty()) out["note"] = v.note;
  if (v.counterexample) {
    Json cex;
    cex["binding"] = Json::array();
    for (const auto& [var, rel] : v.counterexample->binding)
      cex["binding"].push_back(Json{{"var", var}, {"relation", relation_to_json(rel)}});
    cex["pair"] = Json::array({v.counterexample->pair.first, v.counterexample->pair.second});
    out["counterexample"] = std::move(cex);
  }
  return out;
}

Json equation_status_json(const EquationStatus& st) {
  Json out;
  out["holds"] = st.holds;
  if (!st.holds) {
    out["chain_index"] = st.chain_index;
    out["at"] = st.at;
  }
  return out;
}

}  // namespace

CommandResult cmd_congruences(const CommonArgs& args) {
  Timer timer;
  Json report = base_report("congruences", args);
  std::vector<Congruence> cs = all_congruences(args.algebra);
  Json list = Json::array();
  for (const Congruence& c : cs) list.push_back(partition_to_string(c));
  // refinement order as index pairs i <= j, the congruence-lattice order
  Json order = Json::array();
  for (size_t i = 0; i < cs.size(); ++i)
    for (size_t j = 0; j < cs.size(); ++j)
      if (i != j && cs[i].below(cs[j])) order.push_back(Json::array({i, j}));
  report["result"] = Json{{"count", cs.size()},
                          {"congruences", std::move(list)},
                          {"lattice_order", std::move(order)}};
  report["timings"] = Json{{"total_ms", timer.ms()}};
  return CommandResult{std::move(report), 0};
}

CommandResult cmd_check(const CommonArgs& args, const std::string& identity_text,
                        const ParamValues& params) {
  Timer timer;
  Json report = base_report("check", args);
  report["command"]["identity"] = identity_text;
  report["command"]["params"] = params;

  IdentityAST ast = parse_identity(identity_text);
  CheckOptions opts;
  opts.jobs = args.jobs;
  Verdict v = check_quantified(args.algebra, ast, params, opts);
  report["result"] = verdict_to_json(v);
  report["result"]["canonical_identity"] = pretty_print(ast);
  report["timings"] = Json{{"total_ms", timer.ms()}};
  return CommandResult{std::move(report), v.holds() ? 0 : 1};
}

CommandResult cmd_min_k(const CommonArgs& args) {
  Timer timer;
  Json report = base_report("min-k", args);
  ConditionIISetup setup = condition_ii_setup(args.algebra, args.cap);
  DecideResult d = decide_condition_ii_from(setup);
  Json result;
  result["free_size"] = setup.f.count();
  result["decision"] = d.has_k ? "MinK" : "NoK";
  if (d.has_k) result["k"] = d.k;
  report["result"] = std::move(result);
  report["timings"] = Json{{"total_ms", timer.ms()}};
  return CommandResult{std::move(report), 0};
}

CommandResult cmd_terms(const CommonArgs& args) {
  Timer timer;
  Json report = base_report("terms", args);
  ConditionIISetup setup = condition_ii_setup(args.algebra, args.cap);
  DecideResult d = decide_condition_ii_from(setup);
  Json result;
  result["free_size"] = setup.f.count();
  result["decision"] = d.has_k ? "MinK" : "NoK";
  if (d.has_k) {
    result["k"] = d.k;
    TermChain chain = extract_terms(setup, d.k);
    Json terms = Json::array();
    for (int id : chain.element_ids)
      terms.push_back(term_expression_of(setup.f, id).str());
    result["terms"] = std::move(terms);
    TermChainReport rep = verify_term_chain(args.algebra, chain);
    result["equations"] = Json{{"a", equation_status_json(rep.a)},
                               {"b", equation_status_json(rep.b)},
                               {"c", equation_status_json(rep.c)},
                               {"d", equation_status_json(rep.d)},
                               {"e", equation_status_json(rep.e)}};
    DayReport day = verify_day_conditions(args.algebra, chain);
    result["fixed_point_family"] = equation_status_json(day.f);
    result["day_conditions"] = day.holds;
  }
  report["result"] = std::move(result);
  report["timings"] = Json{{"total_ms", timer.ms()}};
  return CommandResult{std::move(report), 0};
}

CommandResult cmd_free(const CommonArgs& args, bool dump) {
  Timer timer;
  Json report = base_report("free", args);
  FreeAlgebra f = free_algebra(args.algebra, args.cap);
  Json result;
  result["size"] = f.count();
  result["rounds"] = f.rounds();
  result["generators"] = f.generator_ids();
  if (dump) {
    Json elems = Json::array();
    for (int e = 0; e < f.count(); ++e) elems.push_back(term_expression_of(f, e).str());
    result["elements"] = std::move(elems);
  }
  report["result"] = std::move(result);
  report["timings"] = Json{{"total_ms", timer.ms()}};
  return CommandResult{std::move(report), 0};
}

CommandResult cmd_bounds(const CommonArgs& args, std::optional<int> k,
                         std::optional<int> p, int ell,
                         std::optional<std::pair<int, int>> r_table) {
  Timer timer;
  Json report = base_report("bounds", args);
  Json result;
  bool any_fails = false;
  CheckOptions opts;
  opts.jobs = args.jobs;

  if (r_table) {
    Json table = Json::object();
    for (int kk = r_table->first; kk <= r_table->second; ++kk)
      table[std::to_string(kk)] = alternation_bound(kk);
    result["r_table"] = std::move(table);
  }
  if (k) {
    Json part;
    part["k"] = *k;
    part["r"] = alternation_bound(*k);
    Verdict level = check_level_identity(args.algebra, *k, opts);
    part["level"] = verdict_to_json(level);
    any_fails = any_fails || level.status == VerdictStatus::Fails;
    part["bip_exponent"] = doubling_exponent(*k, ell);
    Verdict bip = check_bip(args.algebra, *k, ell, opts);
    part["bip"] = verdict_to_json(bip);
    any_fails = any_fails || bip.status == VerdictStatus::Fails;
    Verdict nte = check_nte(args.algebra, *k, 2, opts);
    part["nte"] = verdict_to_json(nte);
    any_fails = any_fails || nte.status == VerdictStatus::Fails;
    result["at_k"] = std::move(part);
  }
  if (p) {
    Json part;
    part["p"] = *p;
    part["ell"] = ell;
    part["s"] = exponent_s(*p, ell);
    part["t"] = exponent_t(*p);
    Verdict cor = check_cor(args.algebra, *p, ell, opts);
    part["cor"] = verdict_to_json(cor);
    any_fails = any_fails || cor.status == VerdictStatus::Fails;
    result["at_p"] = std::move(part);
  }
  report["result"] = std::move(result);
  report["timings"] = Json{{"total_ms", timer.ms()}};
  return CommandResult{std::move(report), any_fails ? 1 : 0};
}

CommandResult verify_report_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open report file '" + path + "'");
  Json report;
  try {
    in >> report;
  } catch (const std::exception& e) {
    throw ValidationError("invalid JSON report: " + std::string(e.what()));
  }
  if (!report.contains("command") || report["command"].value("name", "") != "check")
    throw ValidationError("verify-report: only 'check' reports are supported");
  if (!report.contains("result") || report["result"].value("status", "") != "fails")
    throw ValidationError("verify-report: the report carries no counterexample");

  FiniteAlgebra a = algebra_from_json(report["algebra"]);
  IdentityAST ast = parse_identity(report["command"]["identity"].get<std::string>());
  ParamValues params;
  for (auto& [key, val] : report["command"]["params"].items())
    params[key] = val.get<int>();
  for (const ParamDecl& pd : ast.params)
    if (pd.value && !params.count(pd.name)) params[pd.name] = *pd.value;

  Json out;
  out["command"] = Json{{"name", "verify-report"}, {"source", path}};
  bool ok = true;
  std::string reason;

  Binding binding;
  const Json& cex = report["result"]["counterexample"];
  for (const auto& entry : cex["binding"]) {
    BinaryRelation rel = relation_from_json(entry["relation"]);
    if (rel.size() != a.size()) {
      ok = false;
      reason = "bound relation size mismatch";
      break;
    }
    binding[entry["var"].get<std::string>()] = std::move(rel);
  }

  if (ok) {
    // sorts must still be respected by the embedded relations
    for (const Quantifier& q : ast.quantifiers) {
      auto it = binding.find(q.name);
      if (it == binding.end()) {
        ok = false;
        reason = "missing binding for '" + q.name + "'";
        break;
      }
      const BinaryRelation& rel = it->second;
      bool sort_ok = true;
      switch (q.sort) {
        case Sort::Congruence:
          sort_ok = rel.is_reflexive() && rel.is_symmetric() && rel.is_transitive() &&
                    is_compatible(a, rel);
          break;
        case Sort::Tolerance:
        case Sort::Representable:
          sort_ok = rel.is_reflexive() && rel.is_symmetric() && is_compatible(a, rel);
          break;
        case Sort::Relation:
          sort_ok = false;
          break;
      }
      if (!sort_ok) {
        ok = false;
        reason = "relation bound to '" + q.name + "' is not a " + sort_name(q.sort);
        break;
      }
    }
  }

  if (ok) {
    int i = cex["pair"][0].get<int>(), j = cex["pair"][1].get<int>();
    BinaryRelation lhs = evaluate(ast.lhs, binding, params);
    BinaryRelation rhs = evaluate(ast.rhs, binding, params);
    if (i < 0 || i >= a.size() || j < 0 || j >= a.size()) {
      ok = false;
      reason = "pair out of range";
    } else if (!lhs.test(i, j)) {
      ok = false;
      reason = "pair is not in the left-hand side";
    } else if (rhs.test(i, j)) {
      ok = false;
      reason = "pair is in the right-hand side";
    }
  }

  out["result"] = Json{{"verified", ok}};
  if (!ok) out["result"]["reason"] = reason;
  return CommandResult{std::move(out), ok ? 0 : 1};
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  const Json& cmd = report["command"];
  out << cmd.value("name", "?");
  if (cmd.contains("algebra")) out << " " << cmd["algebra"].get<std::string>();
  out << "\n";
  if (report.contains("fingerprint"))
    out << "  algebra: size " << report["fingerprint"]["size"] << ", hash "
        << report["fingerprint"]["table_hash"].get<std::string>() << "\n";
  if (!report.contains("result")) return out.str();
  const Json& res = report["result"];
  if (res.contains("status")) {
    out << "  status: " << res["status"].get<std::string>() << "\n";
    if (res.contains("counterexample")) {
      const Json& cex = res["counterexample"];
      out << "  counterexample pair: (" << cex["pair"][0] << "," << cex["pair"][1]
          << ")\n";
      for (const auto& b : cex["binding"]) {
        out << "    " << b["var"].get<std::string>() << " =";
        for (const auto& row : b["relation"]) out << " " << row.get<std::string>();
        out << "\n";
      }
    }
  }
  if (res.contains("count")) out << "  congruences: " << res["count"] << "\n";
  if (res.contains("congruences"))
    for (const auto& c : res["congruences"]) out << "    " << c.get<std::string>() << "\n";
  if (res.contains("decision")) {
    out << "  decision: " << res["decision"].get<std::string>();
    if (res.contains("k")) out << "(" << res["k"] << ")";
    out << "  [free algebra size " << res["free_size"] << "]\n";
  }
  if (res.contains("terms")) {
    out << "  terms:\n";
    for (const auto& t : res["terms"]) out << "    " << t.get<std::string>() << "\n";
    out << "  day conditions: " << (res["day_conditions"].get<bool>() ? "hold" : "fail")
        << "\n";
  }
  if (res.contains("size")) out << "  free algebra size: " << res["size"] << "\n";
  if (res.contains("r_table")) {
    out << "  r:";
    for (const auto& [kk, r] : res["r_table"].items()) out << " r(" << kk << ")=" << r;
    out << "\n";
  }
  if (res.contains("at_k")) {
    const Json& part = res["at_k"];
    out << "  k=" << part["k"] << " r=" << part["r"] << " level "
        << part["level"]["status"].get<std::string>() << ", bip "
        << part["bip"]["status"].get<std::string>() << ", nte "
        << part["nte"]["status"].get<std::string>() << "\n";
  }
  if (res.contains("at_p")) {
    const Json& part = res["at_p"];
    out << "  p=" << part["p"] << " ell=" << part["ell"] << " s=" << part["s"]
        << " t=" << part["t"] << " cor " << part["cor"]["status"].get<std::string>()
        << "\n";
  }
  if (res.contains("verified"))
    out << "  verified: " << (res["verified"].get<bool>() ? "yes" : "NO") << "\n";
  return out.str();
}

}  // namespace mkit
