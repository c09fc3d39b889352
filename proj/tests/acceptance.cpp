// Acceptance run: one PASS/FAIL line per criterion, exit status 1 when any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fls/error.hpp"
#include "fls/faults.hpp"
#include "fls/funspace.hpp"
#include "fls/interp.hpp"
#include "fls/laws.hpp"
#include "fls/limits.hpp"
#include "support.hpp"

using namespace fls;
using namespace fls::fixtures;
namespace ft = fls::testing;

namespace {

/// Collects failures of one criterion; the first few are printed.
struct Verdict {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ < 3) notes.push_back(what);
  }
};

Verdict law_suite() {
  Verdict v;
  std::vector<FactorSystem> all{prop()};
  for (int n : {2, 3, 4})
    for (auto var : {NatVariant::Direct, NatVariant::Inverse, NatVariant::Chaos}) all.push_back(nat(var, n));
  for (const auto& fs : all) {
    const bool is_chaos = fs.name.rfind("nat_chaos_", 0) == 0;
    const bool is_inv = fs.name.rfind("nat_inv_", 0) == 0;
    const bool is_dir = fs.name.rfind("nat_dir_", 0) == 0;
    for (const char* law : {"system", "factor", "stab", "emb", "proj", "ep"}) {
      const auto r = run_laws(fs, {law});
      v.expect(r[0].ok, fs.name + " fails " + law + ": " + r[0].witness);
    }
    v.expect(check_fun(fs.sys) == !is_chaos, fs.name + " fun verdict");
    v.expect(check_direct(fs) == (is_dir || is_chaos || fs.name == "prop"), fs.name + " direct verdict");
    v.expect(check_inverse(fs) == (is_inv || is_chaos || fs.name == "prop"), fs.name + " inverse verdict");
  }
  return v;
}

Verdict limit_counts() {
  Verdict v;
  for (int n : {2, 3, 4})
    for (auto var : {NatVariant::Direct, NatVariant::Inverse, NatVariant::Chaos}) {
      const FactorSystem fs = nat(var, n);
      const std::size_t expected = var == NatVariant::Chaos ? 1 : static_cast<std::size_t>(n);
      const auto found = elem(fs.sys);
      std::set<StateSet> lib, oracle;
      for (const auto& e : found) lib.insert(e.members);
      for (const auto& s : ft::oracle_elem(fs.sys)) oracle.insert(StateSet(s));
      v.expect(found.size() == expected, fs.name + ": " + std::to_string(found.size()) + " elements");
      v.expect(lib == oracle, fs.name + ": elem differs from subset search");
    }
  return v;
}

Verdict lemma_suites() {
  Verdict v;
  std::vector<FactorSystem> systems = ft::small_fixtures();
  ft::Rng rng(2024);
  while (systems.size() < 60) {
    auto fs = ft::random_system(rng, ft::random_poset(rng, 4), ft::Kind(ft::pick(rng, 0, 2)), 4);
    bool small = fs.sys.state_count() <= 16;
    for (Index k = 0; k < fs.poset().size(); ++k) small = small && fs.sys.carrier_size(k) <= 4;
    if (small) systems.push_back(std::move(fs));
  }
  for (const auto& fs : systems) {
    const auto a = ft::elemlem_suite(fs.sys);
    const auto b = ft::elemlem2_suite(fs.sys);
    v.expect(a.disagreements == 0 && a.cases > 0, fs.name + " element lemma: " + a.first);
    v.expect(b.disagreements == 0 && b.cases > 0, fs.name + " equivalence lemma: " + b.first);
  }
  return v;
}

Verdict funspace_laws(std::size_t& built, std::size_t& skipped) {
  Verdict v;
  for (const auto& m : ft::small_fixtures())
    for (const auto& n : ft::small_fixtures()) {
      std::optional<FunctionSpace> space;
      try {
        space.emplace(build_funspace(m, n));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::SizeLimitExceeded) throw;
        ++skipped;
        continue;
      }
      ++built;
      const FunctionSpace& fs = *space;
      const std::string name = fs.system.name;
      std::string why;
      v.expect(is_factor_system(fs.system, &why), name + ": " + why);
      if (check_inverse(m) && check_direct(n)) v.expect(check_direct(fs.system), name + " not direct");
      if (check_direct(m) && check_inverse(n)) v.expect(check_inverse(fs.system), name + " not inverse");
      if (check_stable(n.sys)) v.expect(check_stable(fs.system.sys), name + " not stable");
      if (check_fun(n.sys)) v.expect(check_fun(fs.system.sys), name + " lost (Fun)");
    }
  return v;
}

Verdict isomorphism() {
  Verdict v;
  struct Case {
    FactorSystem m, n;
    std::size_t count;
  };
  for (const auto& c : {Case{nat_dir(2), prop(), 4}, Case{prop(), prop(), 4}, Case{nat_chaos(2), prop(), 2}}) {
    const IsoReport r = check_limit_funspace_iso(c.m, c.n);
    const std::string name = c.m.name + "->" + c.n.name;
    v.expect(r.limit_count == c.count && r.function_count == c.count,
             name + ": " + std::to_string(r.limit_count) + " vs " + std::to_string(r.function_count));
    v.expect(r.bijective, name + " not bijective: " + r.witness);
    v.expect(r.hom_forward && r.hom_backward, name + " not a homomorphism both ways: " + r.witness);
  }
  return v;
}

struct Sweeps {
  SweepReport dir, inv;
};

Sweeps run_sweeps(std::size_t max_term_size) {
  SweepOptions o;
  o.max_term_size = max_term_size;
  o.max_context = 2;
  Interpreter d(TypeInterpretation::standard(NatVariant::Direct, 3));
  Interpreter i(TypeInterpretation::standard(NatVariant::Inverse, 3));
  return {sweep(d, o), sweep(i, o)};
}

Verdict fault_injection(std::uint64_t seed, std::size_t sweep_size, std::string& caught_by) {
  Verdict v;
  const FactorSystem clean = nat_dir(3);
  for (const auto& family : fault_families()) {
    FactorSystem broken = clean;
    const std::string what = inject_fault(broken, family, seed);
    std::string by;
    for (const auto& law : newly_failing(clean, broken)) by += (by.empty() ? "" : ",") + law;
    TypeInterpretation ti;
    ti.bind("nat", broken, false);
    Interpreter in(ti);
    SweepOptions o;
    o.max_term_size = sweep_size;
    if (sweep(in, o).violations() > 0) by += (by.empty() ? "" : ",") + std::string("sweep");
    caught_by += (caught_by.empty() ? "" : "; ") + family + " by " + (by.empty() ? "nothing" : by);
    v.expect(!by.empty(), family + " fault not caught: " + what);
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::size_t max_term_size = 4;
  std::uint64_t seed = 1;
  app.add_option("--max-term-size", max_term_size, "Term size bound of the reflection sweep");
  app.add_option("--seed", seed, "Selects the corrupted entry of each fault family");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  auto report = [&](int number, const std::string& title, const std::function<Verdict(std::string&)>& body) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    Verdict v;
    try {
      v = body(detail);
    } catch (const std::exception& e) {
      v.expect(false, std::string("error: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = v.failures == 0 && v.checks > 0;
    failed += !ok;
    std::printf("criterion %d %s: %s [%zu checks, %.1f s]%s%s\n", number, ok ? "PASS" : "FAIL", title.c_str(),
                v.checks, secs, detail.empty() ? "" : " ", detail.c_str());
    for (const auto& n : v.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
  };

  report(1, "law suite on prop and nat_{dir,inv,chaos}_{2,3,4}", [](std::string&) { return law_suite(); });
  report(2, "limit counts N, N, 1 against subset search", [](std::string&) { return limit_counts(); });
  report(3, "element and equivalence lemma suites", [](std::string&) { return lemma_suites(); });
  report(4, "function-space laws and transfer", [](std::string& d) {
    std::size_t built = 0, skipped = 0;
    Verdict v = funspace_laws(built, skipped);
    d = "(" + std::to_string(built) + " pairs built, " + std::to_string(skipped) + " over the cap)";
    return v;
  });
  report(5, "limit/function-space isomorphism, sizes 4, 4, 2", [](std::string&) { return isomorphism(); });

  Sweeps sweeps;
  const auto sweep_start = std::chrono::steady_clock::now();
  std::string sweep_error;
  try {
    sweeps = run_sweeps(max_term_size);
  } catch (const std::exception& e) {
    sweep_error = e.what();
  }
  const double sweep_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - sweep_start).count();
  auto describe = [](const SweepReport& r) {
    return r.binding + ": " + std::to_string(r.terms) + " terms, " + std::to_string(r.derivations) + " derivations, " +
           std::to_string(r.env_pairs) + " environment pairs";
  };
  const std::string size_note = "size <= " + std::to_string(max_term_size) + ", contexts <= 2";

  report(6, "reflection sweep, " + size_note, [&](std::string& d) {
    Verdict v;
    v.expect(sweep_error.empty(), sweep_error);
    for (const SweepReport* r : {&sweeps.dir, &sweeps.inv}) {
      v.expect(r->reflection_checks > 0, r->binding + ": no reflection checks");
      v.expect(r->reflection_violations == 0, r->binding + ": " + r->first_reflection);
      v.expect(r->errors == 0, r->binding + ": " + r->first_error);
    }
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.1f", sweep_secs);
    d = "(" + describe(sweeps.dir) + "; " + describe(sweeps.inv) + "; " + std::to_string(sweeps.dir.reflection_checks) +
        " + " + std::to_string(sweeps.inv.reflection_checks) + " reflection checks; both sweeps " + secs + " s)";
    return v;
  });
  report(7, "monotonicity and derivation independence over the same sweep", [&](std::string& d) {
    Verdict v;
    v.expect(sweep_error.empty(), sweep_error);
    for (const SweepReport* r : {&sweeps.dir, &sweeps.inv}) {
      v.expect(r->monotone_checks > 0 && r->independence_checks > 0, r->binding + ": nothing checked");
      v.expect(r->monotone_violations == 0, r->binding + ": " + r->first_monotone);
      v.expect(r->independence_violations == 0, r->binding + ": " + r->first_independence);
    }
    d = "(" + std::to_string(sweeps.dir.monotone_checks + sweeps.inv.monotone_checks) + " monotone, " +
        std::to_string(sweeps.dir.independence_checks + sweeps.inv.independence_checks) + " independence)";
    return v;
  });
  report(8, "propositional coincidence over the same sweep", [&](std::string& d) {
    Verdict v;
    v.expect(sweep_error.empty(), sweep_error);
    for (const SweepReport* r : {&sweeps.dir, &sweeps.inv}) {
      v.expect(r->prop_checks > 0, r->binding + ": no prop terms");
      v.expect(r->prop_violations == 0, r->binding + ": " + r->first_prop);
    }
    d = "(" + std::to_string(sweeps.dir.prop_checks + sweeps.inv.prop_checks) + " prop checks)";
    return v;
  });
  report(9, "seeded single-entry faults on nat_dir_3, seed " + std::to_string(seed), [&](std::string& d) {
    std::string by;
    Verdict v = fault_injection(seed, 2, by);
    d = "(" + by + ")";
    return v;
  });

  std::printf("%s\n", failed == 0 ? "all criteria pass" : (std::to_string(failed) + " criteria fail").c_str());
  return failed == 0 ? 0 : 1;
}
