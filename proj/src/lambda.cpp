#include "fls/lambda.hpp"

#include <cctype>
#include <mutex>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "fls/error.hpp"

namespace fls {

// -- Type / Term -------------------------------------------------------------

namespace {

std::mutex intern_mutex;
std::unordered_map<std::string, std::shared_ptr<const void>>& intern_table() {
  static std::unordered_map<std::string, std::shared_ptr<const void>> table;
  return table;
}

}  // namespace

Type Type::base(std::string name) {
  std::lock_guard lock(intern_mutex);
  auto& table = intern_table();
  if (auto it = table.find(name); it != table.end()) {
    return Type(std::static_pointer_cast<const Node>(it->second));
  }
  auto node = std::make_shared<Node>();
  node->text = name;
  node->name = std::move(name);
  table.emplace(node->text, node);
  return Type(std::move(node));
}

Type Type::arrow(Type dom, Type cod) {
  std::string text = (dom.is_arrow() ? "(" + dom.str() + ")" : dom.str()) + " -> " + cod.str();
  std::lock_guard lock(intern_mutex);
  auto& table = intern_table();
  if (auto it = table.find(text); it != table.end()) {
    return Type(std::static_pointer_cast<const Node>(it->second));
  }
  auto node = std::make_shared<Node>();
  node->text = std::move(text);
  node->dom = std::make_unique<Type>(std::move(dom));
  node->cod = std::make_unique<Type>(std::move(cod));
  table.emplace(node->text, node);
  return Type(std::move(node));
}

Term Term::var(std::size_t level) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Var;
  node->level = level;
  return Term(std::move(node));
}

Term Term::app(Term fun, Term arg) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::App;
  node->size = 1 + fun.size() + arg.size();
  node->left = std::make_unique<Term>(std::move(fun));
  node->right = std::make_unique<Term>(std::move(arg));
  return Term(std::move(node));
}

Term Term::abs(std::size_t level, Type annot, Term body) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Abs;
  node->level = level;
  node->size = 1 + body.size();
  node->annot = std::make_unique<Type>(std::move(annot));
  node->left = std::make_unique<Term>(std::move(body));
  return Term(std::move(node));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var:
      return a.level() == b.level();
    case Term::Kind::App:
      return a.fun() == b.fun() && a.arg() == b.arg();
    case Term::Kind::Abs:
      return a.level() == b.level() && a.annot() == b.annot() && a.body() == b.body();
  }
  return false;
}

namespace {

void print(std::ostringstream& out, const Term& t, bool arg_position) {
  switch (t.kind()) {
    case Term::Kind::Var:
      out << 'x' << t.level();
      return;
    case Term::Kind::App:
      if (arg_position) out << '(';
      print(out, t.fun(), false);
      out << ' ';
      print(out, t.arg(), true);
      if (arg_position) out << ')';
      return;
    case Term::Kind::Abs:
      // A lambda runs to the right, so it needs parentheses anywhere but last.
      out << "(\\x" << t.level() << ':' << t.annot().str() << ". ";
      print(out, t.body(), false);
      out << ')';
      return;
  }
}

}  // namespace

std::string Term::str() const {
  std::ostringstream out;
  if (kind() == Kind::Abs) {
    out << "\\x" << level() << ':' << annot().str() << ". ";
    print(out, body(), false);
  } else {
    print(out, *this, false);
  }
  return out.str();
}

// -- parser ------------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Type type() {
    Type left = type_atom();
    skip();
    if (text_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return Type::arrow(std::move(left), type());
    }
    return left;
  }

  Term term() {
    skip();
    if (lambda()) {
      const std::size_t at = pos_;
      const std::string name = ident();
      const auto level = variable_level(name, at);
      expect(':');
      Type annot = type();
      expect('.');
      return Term::abs(level, std::move(annot), term());
    }
    Term head = atom();
    for (;;) {
      skip();
      if (pos_ >= text_.size() || text_[pos_] == ')') return head;
      head = Term::app(std::move(head), atom());
    }
  }

  void finish() {
    skip();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool lambda() {
    if (pos_ < text_.size() && text_[pos_] == '\\') {
      ++pos_;
      return true;
    }
    if (text_.substr(pos_, 2) == "\xCE\xBB") {  // UTF-8 lambda
      pos_ += 2;
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) {
      if (pos_ >= text_.size()) fail("unexpected end of input");
      fail("expected identifier");
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t variable_level(const std::string& name, std::size_t at) const {
    if (name.size() < 2 || name[0] != 'x' || name.find_first_not_of("0123456789", 1) != std::string::npos) {
      throw Error(ErrorKind::SyntaxError,
                  "'" + name + "' is not a variable x<digits> at position " + std::to_string(at));
    }
    return std::stoul(name.substr(1));
  }

  Type type_atom() {
    skip();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      Type t = type();
      expect(')');
      return t;
    }
    const std::size_t at = pos_;
    std::string name = ident();
    if (!std::islower(static_cast<unsigned char>(name[0]))) {
      throw Error(ErrorKind::SyntaxError,
                  "base type '" + name + "' must start lowercase at position " + std::to_string(at));
    }
    return Type::base(std::move(name));
  }

  Term atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    if (text_[pos_] == '(') {
      ++pos_;
      Term t = term();
      expect(')');
      return t;
    }
    const std::size_t at = pos_;
    if (text_[pos_] == '\\') fail("lambda in argument position needs parentheses");
    return Term::var(variable_level(ident(), at));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Type parse_type(std::string_view text) {
  Parser p(text);
  Type t = p.type();
  p.finish();
  return t;
}

Term parse_term(std::string_view text) {
  Parser p(text);
  Term t = p.term();
  p.finish();
  return t;
}

Context parse_context(std::string_view text) {
  Context ctx;
  if (text.find_first_not_of(" \t") == std::string_view::npos) return ctx;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t k = 0; k <= text.size(); ++k) {
    if (k < text.size() && text[k] == '(') ++depth;
    if (k < text.size() && text[k] == ')') --depth;
    if (k == text.size() || (text[k] == ',' && depth == 0)) {
      ctx.push_back(parse_type(text.substr(start, k - start)));
      start = k + 1;
    }
  }
  return ctx;
}

std::string render_context(const Context& ctx) {
  std::string out = "(";
  for (std::size_t k = 0; k < ctx.size(); ++k) out += (k ? ", " : "") + ctx[k].str();
  return out + ")";
}

// -- typing ------------------------------------------------------------------

TypingDerivation derive_typing(const Context& ctx, const Term& term) {
  switch (term.kind()) {
    case Term::Kind::Var:
      if (term.level() >= ctx.size()) {
        throw Error(ErrorKind::UnboundVariable,
                    "x" + std::to_string(term.level()) + " in context of length " + std::to_string(ctx.size()));
      }
      return {TypingDerivation::Rule::Var, ctx, term, ctx[term.level()], {}};
    case Term::Kind::App: {
      TypingDerivation f = derive_typing(ctx, term.fun());
      TypingDerivation a = derive_typing(ctx, term.arg());
      if (!f.type.is_arrow()) {
        throw Error(ErrorKind::NotAFunction, term.fun().str() + " has type " + f.type.str());
      }
      if (!(f.type.dom() == a.type)) {
        throw Error(ErrorKind::ArgumentMismatch,
                    term.arg().str() + " has type " + a.type.str() + ", expected " + f.type.dom().str());
      }
      Type result = f.type.cod();
      return {TypingDerivation::Rule::App, ctx, term, std::move(result), {std::move(f), std::move(a)}};
    }
    case Term::Kind::Abs: {
      if (term.level() != ctx.size()) {
        throw Error(ErrorKind::AnnotationMismatch, "binder x" + std::to_string(term.level()) +
                                                       " in context of length " + std::to_string(ctx.size()) +
                                                       " must be x" + std::to_string(ctx.size()));
      }
      Context inner = ctx;
      inner.push_back(term.annot());
      TypingDerivation body = derive_typing(inner, term.body());
      Type result = Type::arrow(term.annot(), body.type);
      return {TypingDerivation::Rule::Abs, ctx, term, std::move(result), {std::move(body)}};
    }
  }
  throw Error(ErrorKind::SyntaxError, "malformed term");
}

Type infer_type(const Context& ctx, const Term& term) { return derive_typing(ctx, term).type; }

Type context_arrow(const Context& ctx, const Type& result) {
  Type t = result;
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) t = Type::arrow(*it, t);
  return t;
}

// -- polarity ----------------------------------------------------------------

std::string_view to_string(Polarity p) {
  switch (p) {
    case Polarity::Positive: return "positive";
    case Polarity::Negative: return "negative";
    case Polarity::Both: return "both";
    case Polarity::Neither: return "neither";
  }
  return "?";
}

BaseClass default_base_class(const std::string& name) {
  if (name == "prop") return {true, true};
  return {true, false};
}

bool is_positive(const Type& t, const BaseClassifier& bc) {
  if (t.is_base()) return bc(t.name()).positive;
  return is_negative(t.dom(), bc) && is_positive(t.cod(), bc);
}

bool is_negative(const Type& t, const BaseClassifier& bc) {
  if (t.is_base()) return bc(t.name()).negative;
  return is_positive(t.dom(), bc) && is_negative(t.cod(), bc);
}

Polarity polarity(const Type& t, const BaseClassifier& bc) {
  const bool p = is_positive(t, bc);
  const bool n = is_negative(t, bc);
  if (p && n) return Polarity::Both;
  if (p) return Polarity::Positive;
  if (n) return Polarity::Negative;
  return Polarity::Neither;
}

bool is_core_type(const Type& t, const BaseClassifier& bc) {
  if (t.is_base()) return true;
  return (is_positive(t.dom(), bc) || is_negative(t.dom(), bc)) && is_core_type(t.cod(), bc);
}

namespace {

bool polar(const Type& t, const BaseClassifier& bc) { return is_positive(t, bc) || is_negative(t, bc); }

bool restricted(const TypingDerivation& d, const BaseClassifier& bc) {
  for (const Type& t : d.context)
    if (!polar(t, bc)) return false;
  for (const auto& p : d.premises)
    if (!restricted(p, bc)) return false;
  return true;
}

}  // namespace

bool contexts_restricted(const Context& ctx, const Term& term, const BaseClassifier& bc) {
  return restricted(derive_typing(ctx, term), bc);
}

bool is_core_judgement(const Context& ctx, const Term& term, const BaseClassifier& bc) {
  const TypingDerivation d = derive_typing(ctx, term);
  return restricted(d, bc) && is_core_type(context_arrow(ctx, d.type), bc);
}

// -- indexing ----------------------------------------------------------------

TypeIndexing::TypeIndexing(std::map<std::string, IndexPoset> bases, BaseClassifier classes)
    : bases_(std::move(bases)), classes_(std::move(classes)) {}

const IndexPoset& TypeIndexing::poset(const Type& t) const {
  if (t.is_base()) {
    auto it = bases_.find(t.name());
    if (it == bases_.end()) throw Error(ErrorKind::UnboundBaseType, t.name());
    return it->second;
  }
  return product(t).poset();
}

const ProductPoset& TypeIndexing::product(const Type& arrow) const {
  if (!arrow.is_arrow()) throw Error(ErrorKind::NotAFunction, arrow.str());
  auto it = products_.find(arrow.id());
  if (it != products_.end()) return *it->second;
  auto made = std::make_shared<const ProductPoset>(poset(arrow.dom()), poset(arrow.cod()));
  return *products_.emplace(arrow.id(), std::move(made)).first->second;
}

std::vector<Index> TypeIndexing::parse_stage(const Context& ctx, std::string_view text) const {
  std::vector<std::string> ids;
  if (text.find_first_not_of(" \t") != std::string_view::npos) {
    std::string cur;
    for (char c : text) {
      if (c == ',') {
        ids.push_back(cur);
        cur.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        cur += c;
      }
    }
    ids.push_back(cur);
  }
  if (ids.size() != ctx.size()) {
    throw Error(ErrorKind::StateMismatch, "stage has " + std::to_string(ids.size()) + " entries, context has " +
                                              std::to_string(ctx.size()));
  }
  std::vector<Index> out;
  for (std::size_t k = 0; k < ids.size(); ++k) out.push_back(poset(ctx[k]).find(ids[k]));
  return out;
}

std::string TypeIndexing::render_stage(const Context& ctx, const std::vector<Index>& stage) const {
  std::string out = "(";
  for (std::size_t k = 0; k < stage.size(); ++k) out += (k ? ", " : "") + poset(ctx[k]).id(stage[k]);
  return out + ")";
}

// -- state derivations -------------------------------------------------------

std::string_view to_string(StateDerivation::Rule r) {
  switch (r) {
    case StateDerivation::Rule::VarPos: return "Var+";
    case StateDerivation::Rule::VarNeg: return "Var-";
    case StateDerivation::Rule::App: return "App";
    case StateDerivation::Rule::Abs: return "Abs";
  }
  return "?";
}

namespace {

void render_into(const TypeIndexing& ix, const StateDerivation& d, int depth, std::string& out) {
  out += std::string(static_cast<std::size_t>(depth) * 2, ' ');
  out += std::string(to_string(d.rule)) + "  " + ix.render_stage(d.context, d.stage) + " |- " + d.term.str() +
         " => " + ix.poset(d.type).id(d.result) + "\n";
  for (const auto& p : d.premises) render_into(ix, *p, depth + 1, out);
}

class Search {
 public:
  Search(const TypeIndexing& ix, std::size_t cap) : ix_(ix), cap_(cap) {}

  /// Derivations of C |- r => j where r has type `type` in `ctx`.
  const std::vector<StateDerivationPtr>& all(const Context& ctx, const Term& r, const Type& type,
                                             const std::vector<Index>& stage, Index j) {
    Key key{r.id(), context_id(ctx), stage, j};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<StateDerivationPtr> out = compute(ctx, r, type, stage, j);
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

 private:
  using Key = std::tuple<const void*, int, std::vector<Index>, Index>;

  int context_id(const Context& ctx) {
    std::vector<const void*> ids;
    for (const Type& t : ctx) ids.push_back(t.id());
    return contexts_.emplace(std::move(ids), static_cast<int>(contexts_.size())).first->second;
  }

  std::vector<StateDerivationPtr> compute(const Context& ctx, const Term& r, const Type& type,
                                          const std::vector<Index>& stage, Index j) {
    using Rule = StateDerivation::Rule;
    std::vector<StateDerivationPtr> out;
    auto leaf = [&](Rule rule) {
      out.push_back(std::make_shared<const StateDerivation>(StateDerivation{rule, ctx, r, type, stage, j, {}}));
    };
    switch (r.kind()) {
      case Term::Kind::Var: {
        const std::size_t k = r.level();
        const IndexPoset& p = ix_.poset(ctx[k]);
        const BaseClassifier& bc = ix_.classes();
        const bool pos = is_positive(ctx[k], bc) && p.le(stage[k], j);
        const bool neg = is_negative(ctx[k], bc) && p.le(j, stage[k]);
        if (pos) leaf(Rule::VarPos);
        // On equal indices both rules yield the identity; keep one.
        if (neg && !(pos && j == stage[k])) leaf(Rule::VarNeg);
        break;
      }
      case Term::Kind::App: {
        const Type fun_type = infer_type(ctx, r.fun());
        const Type& arg_type = fun_type.dom();
        const ProductPoset& prod = ix_.product(fun_type);
        for (Index i = 0; i < prod.left().size() && out.size() < cap_; ++i) {
          const auto& args = all(ctx, r.arg(), arg_type, stage, i);
          if (args.empty()) continue;
          const auto& funs = all(ctx, r.fun(), fun_type, stage, prod.pair(i, j));
          for (const auto& f : funs)
            for (const auto& a : args) {
              if (out.size() >= cap_) break;
              out.push_back(std::make_shared<const StateDerivation>(
                  StateDerivation{Rule::App, ctx, r, type, stage, j, {f, a}}));
            }
        }
        break;
      }
      case Term::Kind::Abs: {
        const ProductPoset& prod = ix_.product(type);
        Context inner = ctx;
        inner.push_back(type.dom());
        std::vector<Index> inner_stage = stage;
        inner_stage.push_back(prod.left_of(j));
        for (const auto& b : all(inner, r.body(), type.cod(), inner_stage, prod.right_of(j))) {
          if (out.size() >= cap_) break;
          out.push_back(
              std::make_shared<const StateDerivation>(StateDerivation{Rule::Abs, ctx, r, type, stage, j, {b}}));
        }
        break;
      }
    }
    return out;
  }

  const TypeIndexing& ix_;
  std::size_t cap_;
  std::map<Key, std::vector<StateDerivationPtr>> memo_;
  std::map<std::vector<const void*>, int> contexts_;
};

Type prepare(const TypeIndexing& ix, const Context& ctx, const Term& term, const std::vector<Index>& stage) {
  if (!is_core_judgement(ctx, term, ix.classes())) {
    throw Error(ErrorKind::NotCoreFragment, render_context(ctx) + " |- " + term.str());
  }
  if (stage.size() != ctx.size()) {
    throw Error(ErrorKind::StateMismatch, "stage has " + std::to_string(stage.size()) + " entries, context has " +
                                              std::to_string(ctx.size()));
  }
  for (std::size_t k = 0; k < ctx.size(); ++k) {
    if (stage[k] >= ix.poset(ctx[k]).size()) {
      throw Error(ErrorKind::UnknownIndex, "stage entry " + std::to_string(k) + " out of range");
    }
  }
  return infer_type(ctx, term);
}

}  // namespace

std::string render(const TypeIndexing& ix, const StateDerivation& d) {
  std::string out;
  render_into(ix, d, 0, out);
  return out;
}

StateDerivationPtr derive_state(const TypeIndexing& ix, const Context& ctx, const Term& term,
                                const std::vector<Index>& stage, Index result) {
  const Type type = prepare(ix, ctx, term, stage);
  if (result >= ix.poset(type).size()) throw Error(ErrorKind::UnknownIndex, std::to_string(result));
  Search search(ix, 1);
  const auto& found = search.all(ctx, term, type, stage, result);
  if (found.empty()) {
    throw Error(ErrorKind::Underivable, ix.render_stage(ctx, stage) + " |- " + term.str() + " => " +
                                            ix.poset(type).id(result));
  }
  return found.front();
}

std::vector<std::pair<Index, StateDerivationPtr>> enumerate_states(const TypeIndexing& ix, const Context& ctx,
                                                                   const Term& term,
                                                                   const std::vector<Index>& stage) {
  const Type type = prepare(ix, ctx, term, stage);
  Search search(ix, 1);
  std::vector<std::pair<Index, StateDerivationPtr>> out;
  for (Index j = 0; j < ix.poset(type).size(); ++j) {
    const auto& found = search.all(ctx, term, type, stage, j);
    if (!found.empty()) out.emplace_back(j, found.front());
  }
  return out;
}

class StateSearch::Impl : public Search {
 public:
  using Search::Search;
};

StateSearch::StateSearch(const TypeIndexing& ix, Context ctx, Term term, std::size_t cap)
    : ix_(ix), ctx_(std::move(ctx)), term_(std::move(term)), type_(prepare(ix, ctx_, term_, std::vector<Index>(ctx_.size(), 0))),
      impl_(std::make_unique<Impl>(ix, cap)) {}

StateSearch::~StateSearch() = default;

const std::vector<StateDerivationPtr>& StateSearch::derivations(const std::vector<Index>& stage, Index result) {
  if (stage.size() != ctx_.size()) throw Error(ErrorKind::StateMismatch, "stage length");
  for (std::size_t k = 0; k < ctx_.size(); ++k)
    if (stage[k] >= ix_.poset(ctx_[k]).size()) throw Error(ErrorKind::UnknownIndex, "stage entry out of range");
  if (result >= ix_.poset(type_).size()) throw Error(ErrorKind::UnknownIndex, std::to_string(result));
  return impl_->all(ctx_, term_, type_, stage, result);
}

std::vector<StateDerivationPtr> enumerate_derivations(const TypeIndexing& ix, const Context& ctx, const Term& term,
                                                      const std::vector<Index>& stage, Index result,
                                                      std::size_t cap) {
  const Type type = prepare(ix, ctx, term, stage);
  if (result >= ix.poset(type).size()) throw Error(ErrorKind::UnknownIndex, std::to_string(result));
  Search search(ix, cap);
  return search.all(ctx, term, type, stage, result);
}

namespace {

bool fail(std::string* why, const std::string& text) {
  if (why) *why = text;
  return false;
}

}  // namespace

bool validate_derivation(const TypeIndexing& ix, const Context& ctx, const StateDerivation& d, std::string* why) {
  using Rule = StateDerivation::Rule;
  if (d.context.size() != ctx.size() || !std::equal(ctx.begin(), ctx.end(), d.context.begin())) {
    return fail(why, "context mismatch at " + d.term.str());
  }
  if (d.stage.size() != ctx.size()) return fail(why, "stage length mismatch at " + d.term.str());
  for (std::size_t k = 0; k < ctx.size(); ++k)
    if (d.stage[k] >= ix.poset(ctx[k]).size()) return fail(why, "stage index out of range at " + d.term.str());
  Type type = Type::base("?");
  try {
    type = infer_type(ctx, d.term);
  } catch (const Error& e) {
    return fail(why, e.what());
  }
  if (!(type == d.type)) return fail(why, "type mismatch at " + d.term.str());
  if (d.result >= ix.poset(type).size()) return fail(why, "result index out of range at " + d.term.str());
  const BaseClassifier& bc = ix.classes();
  switch (d.rule) {
    case Rule::VarPos:
    case Rule::VarNeg: {
      if (d.term.kind() != Term::Kind::Var || !d.premises.empty()) return fail(why, "malformed variable node");
      const std::size_t k = d.term.level();
      const IndexPoset& p = ix.poset(ctx[k]);
      if (d.rule == Rule::VarPos && !(is_positive(ctx[k], bc) && p.le(d.stage[k], d.result))) {
        return fail(why, "Var+ side condition fails at " + d.term.str());
      }
      if (d.rule == Rule::VarNeg && !(is_negative(ctx[k], bc) && p.le(d.result, d.stage[k]))) {
        return fail(why, "Var- side condition fails at " + d.term.str());
      }
      return true;
    }
    case Rule::App: {
      if (d.term.kind() != Term::Kind::App || d.premises.size() != 2) return fail(why, "malformed App node");
      const StateDerivation& f = *d.premises[0];
      const StateDerivation& a = *d.premises[1];
      if (!(f.term == d.term.fun()) || !(a.term == d.term.arg())) return fail(why, "App premises mismatch");
      if (f.stage != d.stage || a.stage != d.stage) return fail(why, "App premise stage mismatch");
      const ProductPoset& prod = ix.product(f.type);
      if (f.result != prod.pair(a.result, d.result)) return fail(why, "App indices do not line up");
      return validate_derivation(ix, ctx, f, why) && validate_derivation(ix, ctx, a, why);
    }
    case Rule::Abs: {
      if (d.term.kind() != Term::Kind::Abs || d.premises.size() != 1) return fail(why, "malformed Abs node");
      const StateDerivation& b = *d.premises[0];
      const ProductPoset& prod = ix.product(type);
      Context inner = ctx;
      inner.push_back(type.dom());
      std::vector<Index> inner_stage = d.stage;
      inner_stage.push_back(prod.left_of(d.result));
      if (!(b.term == d.term.body()) || b.stage != inner_stage || b.result != prod.right_of(d.result)) {
        return fail(why, "Abs premise mismatch");
      }
      return validate_derivation(ix, inner, b, why);
    }
  }
  return fail(why, "unknown rule");
}

}  // namespace fls
