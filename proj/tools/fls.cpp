// fls: validate factor systems, list limits, build function spaces, evaluate
// terms and run the reflection sweep.
//
// Exit codes: 0 pass, 1 check failure, 2 usage, parse or other error.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fls/error.hpp"
#include "fls/evaluate.hpp"
#include "fls/faults.hpp"
#include "fls/fixtures.hpp"
#include "fls/funspace.hpp"
#include "fls/interp.hpp"
#include "fls/laws.hpp"
#include "fls/limits.hpp"
#include "fls/sysfile.hpp"

using namespace fls;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kError = 2;

/// A file path, or the name of a built-in fixture.
FactorSystem load_system(const std::string& source) {
  if (std::filesystem::exists(source)) return read_system_file(source);
  try {
    return fixtures::by_name(source);
  } catch (const Error&) {
    throw Error(ErrorKind::ParseError, source + ": no such file or fixture");
  }
}

/// "base=source" pairs.
std::vector<std::pair<std::string, FactorSystem>> parse_bindings(const std::vector<std::string>& binds) {
  std::vector<std::pair<std::string, FactorSystem>> out;
  for (const auto& b : binds) {
    const auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::ParseError, "expected base=file, got '" + b + "'");
    out.emplace_back(b.substr(0, eq), load_system(b.substr(eq + 1)));
  }
  return out;
}

TypeInterpretation interpretation(const std::vector<std::string>& binds) {
  TypeInterpretation ti = TypeInterpretation::standard(fixtures::NatVariant::Direct, 3);
  for (auto& [name, fs] : parse_bindings(binds)) ti.bind(name, std::move(fs));
  return ti;
}

void print_report(const std::vector<CheckResult>& results, const std::string& subject, bool json) {
  std::cout << (json ? render_jsonl(results, subject) : render_text(results, subject));
}

// -- subcommands -------------------------------------------------------------

struct ValidateArgs {
  std::string file;
  std::vector<std::string> laws{"all"};
  bool json = false;
};

int cmd_validate(const ValidateArgs& a) {
  const FactorSystem fs = load_system(a.file);
  const auto results = run_laws(fs, a.laws);
  print_report(results, fs.name, a.json);
  return all_ok(results) ? kPass : kFail;
}

int cmd_limit(const std::string& file) {
  const FactorSystem fs = load_system(file);
  const auto elements = elem(fs.sys);
  for (const auto& e : elements) std::cout << render(fs.sys, e) << "\n";
  std::cout << elements.size() << " element" << (elements.size() == 1 ? "" : "s") << " in the limit of " << fs.name
            << "\n";
  return kPass;
}

struct FunspaceArgs {
  std::string dom, cod, out;
  std::size_t cap = 0;
};

int cmd_funspace(const FunspaceArgs& a) {
  const FunctionSpace space =
      build_funspace(load_system(a.dom), load_system(a.cod), a.cap ? a.cap : default_size_cap());
  if (a.out.empty()) {
    std::cout << write_system(space.system);
  } else {
    write_system_file(space.system, a.out);
    const IndexPoset& p = space.system.poset();
    std::cout << "wrote " << space.system.name << " to " << a.out << ":";
    for (Index k = 0; k < p.size(); ++k) std::cout << " " << p.id(k) << "=" << space.system.sys.carrier_size(k);
    std::cout << "\n";
  }
  return kPass;
}

struct EvalArgs {
  EvalRequest request;
  std::vector<std::string> binds;
  std::string mode = "both";
};

int cmd_eval(EvalArgs a) {
  Interpreter in(interpretation(a.binds));
  a.request.stage_value = a.mode != "limit";
  a.request.limit_value = a.mode != "stage";
  const EvalOutcome r = evaluate(in, a.request);
  std::cout << "judgement: " << r.judgement << "\n";
  if (a.request.stage_value) {
    std::cout << "state judgement: " << r.state_judgement << "\n";
    std::cout << "stage: " << r.stage << "\n";
  }
  if (a.request.limit_value) std::cout << "limit: " << r.limit << "\n";
  if (r.reflection) std::cout << "reflection: " << (*r.reflection ? "ok" : "VIOLATED") << "\n";
  return r.reflection.value_or(true) ? kPass : kFail;
}

struct ReflectArgs {
  std::size_t max_term_size = 4;
  std::size_t max_context = 2;
  std::vector<std::string> binds;
  std::uint64_t seed = 0;
  std::string inject;
  std::string inject_base = "nat";
  bool json = false;
};

int cmd_reflect(const ReflectArgs& a) {
  TypeInterpretation ti = interpretation(a.binds);
  std::string subject;
  if (!a.inject.empty()) {
    FactorSystem fs = *ti.base(a.inject_base);
    const std::string what = inject_fault(fs, a.inject, a.seed);
    subject = "; injected into " + fs.name + ": " + what;
    ti.bind(a.inject_base, std::move(fs), false);
  }
  subject = ti.describe() + "; max term size " + std::to_string(a.max_term_size) + "; contexts up to " +
            std::to_string(a.max_context) + subject;
  Interpreter in(ti);
  SweepOptions o;
  o.max_term_size = a.max_term_size;
  o.max_context = a.max_context;
  const auto results = sweep_results(sweep(in, o));
  print_report(results, subject, a.json);
  return all_ok(results) ? kPass : kFail;
}

int cmd_fixture(const std::string& name, const std::string& out, const std::string& dir) {
  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
    std::vector<std::string> names{"prop"};
    for (const char* v : {"nat_dir_", "nat_inv_", "nat_chaos_"})
      for (int n = 2; n <= 4; ++n) names.push_back(v + std::to_string(n));
    for (const auto& n : names) write_system_file(fixtures::by_name(n), dir + "/" + n + ".fs");
    std::cout << "wrote " << names.size() << " fixtures to " << dir << "\n";
    return kPass;
  }
  if (name.empty()) throw Error(ErrorKind::ParseError, "give a fixture name or --dir");
  const FactorSystem fs = fixtures::by_name(name);
  if (out.empty()) {
    std::cout << write_system(fs);
  } else {
    write_system_file(fs, out);
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite factor systems, their limits and the stage/limit interpreter"};
  app.require_subcommand(1);

  ValidateArgs va;
  auto* validate = app.add_subcommand("validate", "Check factor-system laws of a system file");
  validate->add_option("file", va.file, "System file or built-in fixture name")->required();
  validate->add_option("--laws", va.laws, "system, fun, factor, stab, emb, proj, ep, dir, inv, polarity, all")
      ->delimiter(',');
  validate->add_flag("--json", va.json, "One JSON record per line");

  std::string limit_file;
  auto* limit = app.add_subcommand("limit", "List the dynamic elements of the limit");
  limit->add_option("file", limit_file, "System file or built-in fixture name")->required();

  FunspaceArgs fa;
  auto* funspace = app.add_subcommand("funspace", "Build the function space [M -> N]");
  funspace->add_option("dom", fa.dom, "Domain system")->required();
  funspace->add_option("cod", fa.cod, "Codomain system")->required();
  funspace->add_option("-o,--out", fa.out, "Output file (stdout when absent)");
  funspace->add_option("--cap", fa.cap, "Maximum carrier size per index (default FLS_SIZE_CAP or 10^6)");

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate a term at a stage and in the limit");
  eval->add_option("term", ea.request.term, "Term, e.g. \"\\x0:prop. x0\"")->required();
  eval->add_option("--context", ea.request.context, "Comma-separated context types");
  eval->add_option("--stage", ea.request.stage, "Comma-separated stage indices (default: top indices)");
  eval->add_option("--at", ea.request.at, "Result index (default: top or last derivable)");
  eval->add_option("--bind", ea.binds, "base=file or base=fixture, e.g. nat=nat_inv_3");
  eval->add_option("--value", ea.request.values, "Stage value per context entry, elem or elem@index");
  eval->add_option("--mode", ea.mode, "stage, limit or both")->check(CLI::IsMember({"stage", "limit", "both"}));

  ReflectArgs ra;
  auto* reflect = app.add_subcommand("reflect", "Exhaustive reflection, monotonicity and prop sweep");
  reflect->add_option("--max-term-size", ra.max_term_size, "Largest term size in nodes");
  reflect->add_option("--max-context", ra.max_context, "Longest context");
  reflect->add_option("--bind", ra.binds, "base=file or base=fixture (default nat=nat_dir_3)");
  reflect->add_option("--inject", ra.inject, "Corrupt the bound system: system, factor, stab, emb, proj, ep");
  reflect->add_option("--inject-base", ra.inject_base, "Base type whose system --inject corrupts");
  reflect->add_option("--seed", ra.seed, "Selects the corrupted entry for --inject");
  reflect->add_flag("--json", ra.json, "One JSON record per line");

  std::string fixture_name, fixture_out, fixture_dir;
  auto* fixture = app.add_subcommand("fixture", "Write a built-in fixture as a system file");
  fixture->add_option("name", fixture_name, "prop, nat_dir_N, nat_inv_N or nat_chaos_N");
  fixture->add_option("-o,--out", fixture_out, "Output file (stdout when absent)");
  fixture->add_option("--dir", fixture_dir, "Write every shipped fixture into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    if (*validate) return cmd_validate(va);
    if (*limit) return cmd_limit(limit_file);
    if (*funspace) return cmd_funspace(fa);
    if (*eval) return cmd_eval(ea);
    if (*reflect) return cmd_reflect(ra);
    if (*fixture) return cmd_fixture(fixture_name, fixture_out, fixture_dir);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
