#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mkit/builtins.hpp"
#include "mkit/commands.hpp"

namespace {

struct Options {
  std::string algebra_file;
  std::string builtin;
  std::string identity;
  std::vector<std::string> params;
  int ell = 2;
  std::optional<int> k;
  std::optional<int> p;
  std::string r_table;
  int jobs = 1;
  bool as_json = false;
  bool as_text = false;
  bool dump = false;
  std::string verify_report;
};

mkit::CommonArgs resolve_algebra(const Options& opt) {
  mkit::CommonArgs args{mkit::builtin_algebra("set2"), "", opt.jobs, 500000};
  if (const char* cap = std::getenv("MALTSEVKIT_CAP")) args.cap = std::atoll(cap);
  if (!opt.builtin.empty() && !opt.algebra_file.empty())
    throw mkit::ValidationError("give either --algebra or --builtin, not both");
  if (!opt.builtin.empty()) {
    args.algebra = mkit::builtin_algebra(opt.builtin);
    args.algebra_ref = "builtin:" + opt.builtin;
  } else if (!opt.algebra_file.empty()) {
    args.algebra = mkit::load_algebra_file(opt.algebra_file);
    args.algebra_ref = opt.algebra_file;
  } else {
    throw mkit::ValidationError("an algebra is required: --algebra FILE or --builtin NAME");
  }
  return args;
}

mkit::ParamValues parse_params(const std::vector<std::string>& entries) {
  mkit::ParamValues out;
  for (const std::string& entry : entries) {
    auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0)
      throw mkit::ValidationError("--param expects NAME=INT, got '" + entry + "'");
    try {
      out[entry.substr(0, eq)] = std::stoi(entry.substr(eq + 1));
    } catch (const std::exception&) {
      throw mkit::ValidationError("--param expects NAME=INT, got '" + entry + "'");
    }
  }
  return out;
}

std::optional<std::pair<int, int>> parse_range(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      int v = std::stoi(text);
      return std::make_pair(v, v);
    }
    return std::make_pair(std::stoi(text.substr(0, dots)),
                          std::stoi(text.substr(dots + 2)));
  } catch (const std::exception&) {
    throw mkit::ValidationError("--r-table expects K or K1..K2, got '" + text + "'");
  }
}

void emit(const mkit::CommandResult& result, const Options& opt) {
  if (opt.as_text && !opt.as_json)
    std::cout << mkit::render_text(result.report);
  else
    std::cout << result.report.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maltsev-kit: congruence identities and term conditions on finite algebras"};
  app.require_subcommand(0, 1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--algebra", opt.algebra_file, "algebra JSON file");
    sub->add_option("--builtin", opt.builtin, "built-in algebra name");
    sub->add_option("--jobs", opt.jobs, "worker threads for quantified sweeps");
    sub->add_flag("--json", opt.as_json, "JSON report output (default)");
    sub->add_flag("--text", opt.as_text, "plain text report output");
  };

  CLI::App* congruences = app.add_subcommand("congruences", "list all congruences");
  add_common(congruences);

  CLI::App* check = app.add_subcommand("check", "check a quantified containment");
  add_common(check);
  check->add_option("--identity", opt.identity, "identity text");
  check->add_option("--param", opt.params, "parameter value NAME=INT");
  check->add_option("--verify-report", opt.verify_report,
                    "re-verify the counterexample embedded in a report file");

  CLI::App* min_k = app.add_subcommand("min-k", "least alternation depth in the free algebra");
  add_common(min_k);

  CLI::App* terms = app.add_subcommand("terms", "extract and verify the witness terms");
  add_common(terms);

  CLI::App* free_cmd = app.add_subcommand("free", "four-generated free algebra");
  add_common(free_cmd);
  free_cmd->add_flag("--dump", opt.dump, "also print every element as a term");

  CLI::App* bounds = app.add_subcommand("bounds", "quantitative bound checks");
  add_common(bounds);
  bounds->add_option("--param", opt.params, "k=INT for the depth-k checks");
  bounds->add_option("--p", opt.p, "exponent p for the power-form checks");
  bounds->add_option("--ell", opt.ell, "composition level (default 2)");
  bounds->add_option("--r-table", opt.r_table, "print the bound table for K1..K2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!opt.verify_report.empty()) {
      mkit::CommandResult result = mkit::verify_report_file(opt.verify_report);
      emit(result, opt);
      return result.exit_code;
    }
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return 2;
    }
    CLI::App* sub = app.get_subcommands().front();
    mkit::CommonArgs args = resolve_algebra(opt);
    mkit::CommandResult result;
    if (sub == congruences) {
      result = mkit::cmd_congruences(args);
    } else if (sub == check) {
      if (opt.identity.empty())
        throw mkit::ValidationError("check needs --identity TEXT");
      result = mkit::cmd_check(args, opt.identity, parse_params(opt.params));
    } else if (sub == min_k) {
      result = mkit::cmd_min_k(args);
    } else if (sub == terms) {
      result = mkit::cmd_terms(args);
    } else if (sub == free_cmd) {
      result = mkit::cmd_free(args, opt.dump);
    } else if (sub == bounds) {
      mkit::ParamValues params = parse_params(opt.params);
      std::optional<int> k;
      if (params.count("k")) k = params["k"];
      result = mkit::cmd_bounds(args, k, opt.p, opt.ell, parse_range(opt.r_table));
    }
    emit(result, opt);
    return result.exit_code;
  } catch (const mkit::CapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 3;
  } catch (const mkit::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
