#pragma once

// Interpretation of types as factor systems with their limits, of terms at
// a stage (along a state derivation) and in the limit, and the checks that
// connect the two.
//
// Values are kept structurally: a base value is an element position, an
// arrow value is a table indexed by the positions of the domain carrier (at
// a stage) or of the domain limit.  Only domain carriers are ever
// enumerated, so terms of large arrow types can be evaluated without
// materialising their function spaces.  The materialised route
// (build_funspace, elem, app) remains available for conversion and for
// cross-checking on small types.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fls/factor_core.hpp"
#include "fls/fixtures.hpp"
#include "fls/funspace.hpp"
#include "fls/lambda.hpp"
#include "fls/limits.hpp"
#include "fls/report.hpp"

namespace fls {

/// A base element or an immutable, shared function table.  A table taken
/// from a carrier or a limit keeps its position there in `leaf`; comparisons
/// ignore it.
struct Value {
  std::size_t leaf = 0;
  std::shared_ptr<const std::vector<Value>> rows;

  static Value of(std::size_t leaf) { return Value{leaf, nullptr}; }
  static Value table(std::vector<Value> rows) {
    return Value{0, std::make_shared<const std::vector<Value>>(std::move(rows))};
  }

  std::size_t size() const noexcept { return rows ? rows->size() : 0; }
  const Value& operator[](std::size_t k) const { return (*rows)[k]; }
  const Value& at(std::size_t k) const;
};

bool operator==(const Value& a, const Value& b);
bool operator<(const Value& a, const Value& b);

/// Base-type bindings.  prop is always bound to the Boolean system; other
/// bases are positive when bound to a direct factor system and negative when
/// bound to an inverse one.
class TypeInterpretation {
 public:
  /// prop plus nat bound to the given nat fixture.
  static TypeInterpretation standard(fixtures::NatVariant nat = fixtures::NatVariant::Direct, int n = 4);

  TypeInterpretation();

  /// Binds a base type.  With `validate` the system must be a factor system
  /// that is direct or inverse (InvalidSystem otherwise); prop cannot be
  /// rebound.
  void bind(const std::string& name, FactorSystem fs, bool validate = true);

  std::shared_ptr<const FactorSystem> base(const std::string& name) const;  // UnboundBaseType
  const std::map<std::string, std::shared_ptr<const FactorSystem>>& bases() const noexcept { return bases_; }
  BaseClass base_class(const std::string& name) const;
  BaseClassifier classifier() const;
  TypeIndexing indexing() const;

  /// "nat=nat_dir_3" style summary of the bindings other than prop.
  std::string describe() const;

 private:
  std::map<std::string, std::shared_ptr<const FactorSystem>> bases_;
  std::map<std::string, BaseClass> classes_;
};

/// Stage carriers, relations and limit of one type.
class TypeModel {
 public:
  virtual ~TypeModel() = default;

  const Type& type() const noexcept { return type_; }
  const IndexPoset& poset() const noexcept { return poset_; }

  /// Every state at index k, in the order of the materialised system.
  virtual const std::vector<Value>& carrier(Index k) const = 0;
  virtual std::size_t position(Index k, const Value& v) const;

  /// later ~> earlier
  virtual bool pred(Index later, const Value& a, Index earlier, const Value& b) const = 0;
  /// Consistency of two carrier members at one index, by position.
  virtual bool consistent(Index k, std::size_t a, std::size_t b) const = 0;
  virtual Value emb(Index from, const Value& v, Index to) const = 0;
  virtual Value proj(Index from, const Value& v, Index to) const = 0;

  /// The limit elements.
  virtual const std::vector<Value>& limit() const = 0;
  virtual std::size_t limit_position(const Value& v) const;
  /// The limit value `a` is related to the state v at index k.
  virtual bool relates(const Value& a, Index k, const Value& v) const = 0;

  /// Positions of carrier and limit members read off the value itself;
  /// nullopt for values built elsewhere.
  virtual std::optional<std::size_t> fast_position(Index k, const Value& v) const = 0;
  virtual std::optional<std::size_t> fast_limit_position(const Value& a) const = 0;
  /// The carrier (limit) member equal to the value, or the value itself.
  virtual Value canonical(Index, const Value& v) const { return v; }
  /// Upper bound on carrier(k).size() that does not build large carriers.
  virtual double carrier_bound(Index k) const { return static_cast<double>(carrier(k).size()); }
  virtual Value canonical_limit(const Value& a) const { return a; }

  virtual std::string render_stage(Index k, const Value& v) const = 0;
  virtual std::string render_limit(const Value& a) const = 0;

 protected:
  TypeModel(Type type, IndexPoset poset) : type_(std::move(type)), poset_(std::move(poset)) {}

  Type type_;
  IndexPoset poset_;

 private:
  mutable std::map<Index, std::map<Value, std::size_t>> positions_;
  mutable std::map<Value, std::size_t> limit_positions_;
};

class Interpreter {
 public:
  explicit Interpreter(TypeInterpretation ti, std::size_t cap = default_size_cap());
  ~Interpreter();
  Interpreter(const Interpreter&) = delete;
  Interpreter& operator=(const Interpreter&) = delete;

  const TypeInterpretation& interpretation() const noexcept { return ti_; }
  const TypeIndexing& indexing() const noexcept { return ix_; }
  std::size_t cap() const noexcept { return cap_; }

  const TypeModel& model(const Type& t) const;

  /// The materialised factor system of a type.  Throws SizeLimitExceeded.
  std::shared_ptr<const FactorSystem> interp_type(const Type& t) const;
  /// Its limit elem(interp_type(t)).
  const std::vector<DynamicElement>& interp_type_limit(const Type& t) const;
  /// The function space behind an arrow type.
  const FunctionSpace& function_space(const Type& arrow) const;

  // Conversions between structural values and materialised states/elements.
  Value from_state(const Type& t, State s) const;
  State to_state(const Type& t, Index k, const Value& v) const;
  Value from_element(const Type& t, const DynamicElement& e) const;
  /// Ext(a) as a set of states; NotInLimit when it is not an element of
  /// interp_type_limit(t).
  DynamicElement to_element(const Type& t, const Value& a) const;

  /// Values of sub-derivations keyed by the values of their free variables.
  /// The derivations must outlive the memo.
  class StageMemo {
   public:
    StageMemo();
    ~StageMemo();
    StageMemo(const StageMemo&) = delete;
    StageMemo& operator=(const StageMemo&) = delete;

   private:
    friend class Interpreter;
    struct Impl;
    std::unique_ptr<Impl> impl_;
  };

  Value eval_stage_value(const StateDerivation& d, const std::vector<Value>& env, StageMemo* memo = nullptr) const;
  /// StateMismatch when the environment does not sit at the derivation's
  /// stage.
  State eval_stage(const StateDerivation& d, const std::vector<State>& env) const;

  Value eval_limit_value(const Context& ctx, const Term& term, const std::vector<Value>& env) const;
  DynamicElement eval_limit(const Context& ctx, const Term& term, const std::vector<DynamicElement>& env) const;

  /// Emb_C(a): each stage value embedded into the limit.
  std::vector<Value> embed_env(const Context& ctx, const std::vector<Index>& stage,
                               const std::vector<Value>& env) const;

  /// eval_limit(A) is related to eval_stage(d, a).  Requires A related to a
  /// pointwise (StateMismatch otherwise).
  bool check_reflection(const StateDerivation& d, const std::vector<Value>& stage_env,
                        const std::vector<Value>& limit_env) const;

  /// Every derivation at `later` is a ~> successor of every derivation at
  /// `earlier`, for the same stage environment.
  bool check_monotone(const Context& ctx, const Term& term, const std::vector<Index>& stage,
                      const std::vector<Value>& env, Index earlier, Index later) const;

  /// Direct with emb-absorption for positive types, inverse with
  /// proj-absorption for negative ones.
  bool check_embpmap(const Type& t, std::string* witness = nullptr) const;

 private:
  struct Cache;

  TypeInterpretation ti_;
  TypeIndexing ix_;
  std::size_t cap_;
  std::unique_ptr<Cache> cache_;
};

// -- exhaustive sweep ----------------------------------------------------------

struct SweepOptions {
  std::size_t max_term_size = 4;
  std::size_t max_context = 2;
  /// Annotation and context types; empty means nat, prop, nat->prop, prop->prop.
  std::vector<Type> pool;
  std::size_t derivation_cap = 256;
  bool monotone = true;
};

struct SweepReport {
  std::string binding;
  std::size_t contexts = 0;
  std::size_t terms = 0;
  std::size_t core_terms = 0;
  std::size_t judgements = 0;      // derivable (C, i)
  std::size_t underivable = 0;     // (C, i) without a derivation
  std::size_t derivations = 0;
  std::size_t env_pairs = 0;
  std::size_t reflection_checks = 0;
  std::size_t reflection_violations = 0;
  std::size_t monotone_checks = 0;
  std::size_t monotone_violations = 0;
  std::size_t independence_checks = 0;
  std::size_t independence_violations = 0;
  std::size_t prop_checks = 0;
  std::size_t prop_violations = 0;
  std::size_t errors = 0;
  std::string first_reflection;
  std::string first_monotone;
  std::string first_independence;
  std::string first_prop;
  std::string first_error;
  double millis = 0.0;

  std::size_t violations() const {
    return reflection_violations + monotone_violations + independence_violations + prop_violations + errors;
  }
};

std::vector<Type> default_pool();

/// Every term of at most `max_size` nodes whose variables are bound in a
/// context of length `context_length` and whose annotations come from the
/// pool.  Untyped; callers filter by infer_type.
std::vector<Term> enumerate_terms(std::size_t context_length, std::size_t max_size, const std::vector<Type>& pool);

/// Every context of length <= max_length over the pool.
std::vector<Context> enumerate_contexts(std::size_t max_length, const std::vector<Type>& pool);

SweepReport sweep(const Interpreter& in, const SweepOptions& options = {});

/// reflection, monotone, independence, prop and errors as report records;
/// passing records carry their check counts.
std::vector<CheckResult> sweep_results(const SweepReport& report);

}  // namespace fls
