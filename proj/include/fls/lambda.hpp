#pragma once

// Simply typed lambda terms over de Bruijn levels, their typing judgements,
// the positive/negative type classes and the search for state judgements.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fls/index_poset.hpp"

namespace fls {

class Type {
 public:
  static Type base(std::string name);
  static Type arrow(Type dom, Type cod);

  bool is_base() const noexcept { return node_->dom == nullptr; }
  bool is_arrow() const noexcept { return !is_base(); }
  const std::string& name() const { return node_->name; }
  const Type& dom() const { return *node_->dom; }
  const Type& cod() const { return *node_->cod; }

  /// Canonical rendering, e.g. "(nat -> prop) -> prop".
  const std::string& str() const { return node_->text; }

  /// Types are interned: equal types share one node, so this identifies the
  /// type for the lifetime of the process.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Type& a, const Type& b) { return a.node_ == b.node_; }
  friend bool operator<(const Type& a, const Type& b) { return a.str() < b.str(); }

 private:
  struct Node {
    std::string name;
    std::unique_ptr<Type> dom;
    std::unique_ptr<Type> cod;
    std::string text;
  };
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

using Context = std::vector<Type>;

class Term {
 public:
  enum class Kind { Var, App, Abs };

  static Term var(std::size_t level);
  static Term app(Term fun, Term arg);
  static Term abs(std::size_t level, Type annot, Term body);

  Kind kind() const noexcept { return node_->kind; }
  /// Var: the variable; Abs: the bound variable.
  std::size_t level() const { return node_->level; }
  const Term& fun() const { return *node_->left; }
  const Term& arg() const { return *node_->right; }
  const Type& annot() const { return *node_->annot; }
  const Term& body() const { return *node_->left; }

  /// Number of Var, App and Abs nodes.
  std::size_t size() const { return node_->size; }
  std::string str() const;

  /// Identity of the node, used as a memo key.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    std::size_t level = 0;
    std::unique_ptr<Term> left;
    std::unique_ptr<Term> right;
    std::unique_ptr<Type> annot;
    std::size_t size = 1;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// -- syntax ------------------------------------------------------------------

/// type ::= base | type '->' type | '(' type ')', arrows to the right.
Type parse_type(std::string_view text);
/// term ::= '\' x<k> ':' type '.' term | atom+ ; atom ::= x<k> | '(' term ')'.
Term parse_term(std::string_view text);
/// Comma-separated types; the empty string is the empty context.
Context parse_context(std::string_view text);
std::string render_context(const Context& ctx);

// -- typing ------------------------------------------------------------------

Type infer_type(const Context& ctx, const Term& term);

struct TypingDerivation {
  enum class Rule { Var, App, Abs };
  Rule rule;
  Context context;
  Term term;
  Type type;
  std::vector<TypingDerivation> premises;
};

TypingDerivation derive_typing(const Context& ctx, const Term& term);

/// G -> r as a type:  () -> s = s  and  G.r -> s = G -> (r -> s).
Type context_arrow(const Context& ctx, const Type& result);

// -- polarity ----------------------------------------------------------------

enum class Polarity { Positive, Negative, Both, Neither };
std::string_view to_string(Polarity p);

/// Which of the two classes a base type belongs to.  By default "prop" is
/// in both and every other base type is positive.
struct BaseClass {
  bool positive = true;
  bool negative = false;
};
using BaseClassifier = std::function<BaseClass(const std::string&)>;

BaseClass default_base_class(const std::string& name);

bool is_positive(const Type& t, const BaseClassifier& bc = default_base_class);
bool is_negative(const Type& t, const BaseClassifier& bc = default_base_class);
Polarity polarity(const Type& t, const BaseClassifier& bc = default_base_class);
/// rho^c ::= iota | rho+ -> rho^c | rho- -> rho^c
bool is_core_type(const Type& t, const BaseClassifier& bc = default_base_class);
/// Every context in the typing derivation holds only positive or negative
/// types.
bool contexts_restricted(const Context& ctx, const Term& term, const BaseClassifier& bc = default_base_class);
/// Both characterisations: restricted contexts and G -> rho in type^c.
bool is_core_judgement(const Context& ctx, const Term& term, const BaseClassifier& bc = default_base_class);

// -- state judgements --------------------------------------------------------

/// Index posets of types: base posets are given, arrows are products.
class TypeIndexing {
 public:
  TypeIndexing(std::map<std::string, IndexPoset> bases, BaseClassifier classes);

  const IndexPoset& poset(const Type& t) const;
  const ProductPoset& product(const Type& arrow) const;
  const BaseClassifier& classes() const noexcept { return classes_; }
  bool has_base(const std::string& name) const { return bases_.count(name) != 0; }

  /// Parses a state context, one index id per context entry, comma-separated.
  std::vector<Index> parse_stage(const Context& ctx, std::string_view text) const;
  std::string render_stage(const Context& ctx, const std::vector<Index>& stage) const;

 private:
  std::map<std::string, IndexPoset> bases_;
  BaseClassifier classes_;
  mutable std::map<const void*, std::shared_ptr<const ProductPoset>> products_;
};

struct StateDerivation {
  enum class Rule { VarPos, VarNeg, App, Abs };
  Rule rule;
  Context context;
  Term term;
  Type type;
  std::vector<Index> stage;
  Index result = 0;
  std::vector<std::shared_ptr<const StateDerivation>> premises;
};
using StateDerivationPtr = std::shared_ptr<const StateDerivation>;

std::string_view to_string(StateDerivation::Rule r);
/// One line per node, indented by depth.
std::string render(const TypeIndexing& ix, const StateDerivation& d);

/// A derivation of C |- r => i.  Throws NotCoreFragment for judgements
/// outside the core fragment and Underivable when none exists.
StateDerivationPtr derive_state(const TypeIndexing& ix, const Context& ctx, const Term& term,
                                const std::vector<Index>& stage, Index result);

/// Every derivable result index with one witness each, in index order.
/// Throws NotCoreFragment.
std::vector<std::pair<Index, StateDerivationPtr>> enumerate_states(const TypeIndexing& ix, const Context& ctx,
                                                                   const Term& term,
                                                                   const std::vector<Index>& stage);

/// Derivation search for one judgement G |- r that keeps its memo across
/// stages and result indices.  Throws NotCoreFragment on construction.
class StateSearch {
 public:
  StateSearch(const TypeIndexing& ix, Context ctx, Term term, std::size_t cap = 4096);
  ~StateSearch();
  StateSearch(const StateSearch&) = delete;
  StateSearch& operator=(const StateSearch&) = delete;

  const Type& type() const noexcept { return type_; }
  /// Up to `cap` derivations of C |- r => i.
  const std::vector<StateDerivationPtr>& derivations(const std::vector<Index>& stage, Index result);

 private:
  class Impl;
  const TypeIndexing& ix_;
  Context ctx_;
  Term term_;
  Type type_;
  std::unique_ptr<Impl> impl_;
};

/// Every derivation of C |- r => i, up to `cap` of them.
std::vector<StateDerivationPtr> enumerate_derivations(const TypeIndexing& ix, const Context& ctx, const Term& term,
                                                      const std::vector<Index>& stage, Index result,
                                                      std::size_t cap = 4096);

/// Replays a derivation against the rules; false with a reason otherwise.
bool validate_derivation(const TypeIndexing& ix, const Context& ctx, const StateDerivation& d,
                         std::string* why = nullptr);

}  // namespace fls
