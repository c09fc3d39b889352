#include "fls/interp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iterator>
#include <unordered_map>

#include "fls/error.hpp"

namespace fls {

const Value& Value::at(std::size_t k) const {
  if (k >= size()) throw Error(ErrorKind::StateMismatch, "table position " + std::to_string(k) + " out of range");
  return (*rows)[k];
}

bool operator==(const Value& a, const Value& b) {
  if (!a.rows || !b.rows) return !a.rows && !b.rows && a.leaf == b.leaf;
  if (a.rows == b.rows) return true;
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (!(a[k] == b[k])) return false;
  return true;
}

bool operator<(const Value& a, const Value& b) {
  if (!a.rows || !b.rows) {
    if (a.rows || b.rows) return !a.rows;
    return a.leaf < b.leaf;
  }
  if (a.rows == b.rows) return false;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k] < b[k]) return true;
    if (b[k] < a[k]) return false;
  }
  return a.size() < b.size();
}

// -- TypeInterpretation -------------------------------------------------------

TypeInterpretation::TypeInterpretation() {
  bases_["prop"] = std::make_shared<const FactorSystem>(fixtures::prop());
  classes_["prop"] = {true, true};
}

TypeInterpretation TypeInterpretation::standard(fixtures::NatVariant nat, int n) {
  TypeInterpretation ti;
  ti.bind("nat", fixtures::nat(nat, n));
  return ti;
}

void TypeInterpretation::bind(const std::string& name, FactorSystem fs, bool validate) {
  if (name == "prop") {
    if (fs == *bases_.at("prop")) return;
    throw Error(ErrorKind::InvalidSystem, "prop is bound to the Boolean system and cannot be rebound");
  }
  const bool direct = check_direct(fs);
  const bool inverse = check_inverse(fs);
  if (validate) {
    std::string why;
    if (!is_factor_system(fs, &why)) throw Error(ErrorKind::InvalidSystem, name + " = " + fs.name + ": " + why);
    if (!direct && !inverse) {
      throw Error(ErrorKind::InvalidSystem, name + " = " + fs.name + " is neither direct nor inverse");
    }
  }
  // A direct binding makes the base positive, otherwise an inverse one makes
  // it negative.
  classes_[name] = direct || !inverse ? BaseClass{true, false} : BaseClass{false, true};
  bases_[name] = std::make_shared<const FactorSystem>(std::move(fs));
}

std::shared_ptr<const FactorSystem> TypeInterpretation::base(const std::string& name) const {
  auto it = bases_.find(name);
  if (it == bases_.end()) throw Error(ErrorKind::UnboundBaseType, name);
  return it->second;
}

BaseClass TypeInterpretation::base_class(const std::string& name) const {
  auto it = classes_.find(name);
  if (it == classes_.end()) throw Error(ErrorKind::UnboundBaseType, name);
  return it->second;
}

BaseClassifier TypeInterpretation::classifier() const {
  auto classes = classes_;
  return [classes](const std::string& name) {
    auto it = classes.find(name);
    if (it == classes.end()) throw Error(ErrorKind::UnboundBaseType, name);
    return it->second;
  };
}

TypeIndexing TypeInterpretation::indexing() const {
  std::map<std::string, IndexPoset> posets;
  for (const auto& [name, fs] : bases_) posets.emplace(name, fs->poset());
  return TypeIndexing(std::move(posets), classifier());
}

std::string TypeInterpretation::describe() const {
  std::string out;
  for (const auto& [name, fs] : bases_) {
    if (name == "prop") continue;
    if (!out.empty()) out += ' ';
    out += name + "=" + fs->name;
  }
  return out.empty() ? "prop" : out;
}

// -- models ------------------------------------------------------------------

std::size_t TypeModel::position(Index k, const Value& v) const {
  auto& index = positions_[k];
  if (index.empty()) {
    const auto& c = carrier(k);
    for (std::size_t p = 0; p < c.size(); ++p) index.emplace(c[p], p);
  }
  auto it = index.find(v);
  if (it == index.end()) {
    throw Error(ErrorKind::StateMismatch, "value is not in the carrier of " + type_.str() + " at " + poset_.id(k));
  }
  return it->second;
}

std::size_t TypeModel::limit_position(const Value& v) const {
  if (limit_positions_.empty()) {
    const auto& l = limit();
    for (std::size_t p = 0; p < l.size(); ++p) limit_positions_.emplace(l[p], p);
  }
  auto it = limit_positions_.find(v);
  if (it == limit_positions_.end()) throw Error(ErrorKind::NotInLimit, "value is not in the limit of " + type_.str());
  return it->second;
}

namespace {

class BaseModel final : public TypeModel {
 public:
  BaseModel(Type type, std::shared_ptr<const FactorSystem> fs)
      : TypeModel(std::move(type), fs->poset()), fs_(std::move(fs)), elements_(elem(fs_->sys)) {
    const System& sys = fs_->sys;
    const std::size_t n = sys.state_count();
    const std::size_t m = poset_.size();
    for (Index k = 0; k < m; ++k) {
      std::vector<Value> c;
      for (std::size_t e = 0; e < sys.carrier_size(k); ++e) c.push_back(Value::of(e));
      carriers_.push_back(std::move(c));
      offsets_.push_back(sys.state_id({k, 0}));
    }
    for (std::size_t e = 0; e < elements_.size(); ++e) limit_.push_back(Value::of(e));
    pred_.assign(n * n, 0);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) pred_[x * n + y] = sys.pred(sys.state_at(x), sys.state_at(y));
    member_.assign(elements_.size() * n, 0);
    for (std::size_t e = 0; e < elements_.size(); ++e)
      for (State st : elements_[e].members.states()) member_[e * n + sys.state_id(st)] = 1;
    // move_[id * m + to]: emb or proj of the state towards `to`, when ordered.
    move_.assign(n * m, 0);
    for (std::size_t x = 0; x < n; ++x) {
      const State s = sys.state_at(x);
      for (Index to = 0; to < m; ++to) {
        if (poset_.le(s.index, to)) move_[x * m + to] = fs_->emb(s, to).elem;
        else if (poset_.le(to, s.index)) move_[x * m + to] = fs_->proj(s, to).elem;
      }
    }
  }

  const std::vector<Value>& carrier(Index k) const override { return carriers_.at(k); }
  std::size_t position(Index k, const Value& v) const override {
    if (v.rows || v.leaf >= carriers_.at(k).size()) return TypeModel::position(k, v);
    return v.leaf;
  }
  bool pred(Index later, const Value& a, Index earlier, const Value& b) const override {
    return pred_[id(later, a) * fs_->sys.state_count() + id(earlier, b)] != 0;
  }
  bool consistent(Index k, std::size_t a, std::size_t b) const override {
    return fls::consistent(fs_->sys, {k, a}, {k, b});
  }
  Value emb(Index from, const Value& v, Index to) const override {
    if (!poset_.le(from, to)) throw Error(ErrorKind::StateMismatch, "emb needs increasing indices");
    return Value::of(move_[id(from, v) * poset_.size() + to]);
  }
  Value proj(Index from, const Value& v, Index to) const override {
    if (!poset_.le(to, from)) throw Error(ErrorKind::StateMismatch, "proj needs decreasing indices");
    return Value::of(move_[id(from, v) * poset_.size() + to]);
  }
  const std::vector<Value>& limit() const override { return limit_; }
  std::size_t limit_position(const Value& v) const override {
    if (v.rows || v.leaf >= limit_.size()) throw Error(ErrorKind::NotInLimit, "no limit element " + std::to_string(v.leaf));
    return v.leaf;
  }
  bool relates(const Value& a, Index k, const Value& v) const override {
    return member_[limit_position(a) * fs_->sys.state_count() + id(k, v)] != 0;
  }
  std::optional<std::size_t> fast_position(Index k, const Value& v) const override {
    if (v.rows || k >= carriers_.size() || v.leaf >= carriers_[k].size()) return std::nullopt;
    return v.leaf;
  }
  std::optional<std::size_t> fast_limit_position(const Value& a) const override {
    if (a.rows || a.leaf >= limit_.size()) return std::nullopt;
    return a.leaf;
  }
  std::string render_stage(Index k, const Value& v) const override {
    return fs_->sys.carrier(k).at(v.leaf) + "@" + poset_.id(k);
  }
  std::string render_limit(const Value& a) const override { return render(fs_->sys, elements_.at(a.leaf)); }

  const std::string& name(Index k, const Value& v) const { return fs_->sys.carrier(k).at(v.leaf); }

 private:
  std::shared_ptr<const FactorSystem> fs_;
  std::vector<DynamicElement> elements_;
  std::vector<std::vector<Value>> carriers_;
  std::vector<std::size_t> offsets_;
  std::vector<Value> limit_;
  std::vector<char> pred_;
  std::vector<char> member_;
  std::vector<std::size_t> move_;

  std::size_t id(Index k, const Value& v) const {
    if (v.rows || k >= carriers_.size() || v.leaf >= carriers_[k].size()) {
      throw Error(ErrorKind::StateMismatch, "no element " + std::to_string(v.leaf));
    }
    return offsets_[k] + v.leaf;
  }
};

// Finds tables, given by the positions of their rows, in a fixed list.
class TableIndex {
 public:
  TableIndex(const std::vector<Value>& tables, std::size_t radix, const std::function<std::size_t(const Value&)>& pos)
      : radix_(std::max<std::size_t>(radix, 1)) {
    const std::size_t width = tables.empty() ? 0 : tables.front().size();
    double span = 1;
    for (std::size_t r = 0; r < width; ++r) span *= static_cast<double>(radix_);
    narrow_ = span < 1.8e19;
    std::vector<std::size_t> key;
    for (std::size_t p = 0; p < tables.size(); ++p) {
      key.clear();
      for (std::size_t r = 0; r < tables[p].size(); ++r) key.push_back(pos(tables[p][r]));
      insert(key, p);
    }
  }

  std::optional<std::size_t> find(const std::vector<std::size_t>& key) const {
    if (narrow_) {
      auto it = small_.find(pack(key));
      if (it == small_.end()) return std::nullopt;
      return it->second;
    }
    auto it = big_.find(key);
    if (it == big_.end()) return std::nullopt;
    return it->second;
  }

 private:
  std::size_t radix_;
  bool narrow_ = true;
  std::unordered_map<std::uint64_t, std::size_t> small_;
  std::map<std::vector<std::size_t>, std::size_t> big_;

  std::uint64_t pack(const std::vector<std::size_t>& key) const {
    std::uint64_t out = 0;
    for (std::size_t x : key) out = out * radix_ + x;
    return out;
  }
  void insert(const std::vector<std::size_t>& key, std::size_t p) {
    if (narrow_) small_.emplace(pack(key), p);
    else big_.emplace(key, p);
  }
};

// Carrier element names, matching the names given by build_funspace.
std::string value_name(const TypeModel& m, Index k, const Value& v);

// Cells of a lazily filled relation matrix: unknown, false, true.
using Cells = std::vector<signed char>;
constexpr std::size_t kMatrixLimit = std::size_t{1} << 22;

class ArrowModel final : public TypeModel {
 public:
  ArrowModel(Type type, const ProductPoset& prod, const TypeModel& dom, const TypeModel& cod, std::size_t cap)
      : TypeModel(std::move(type), prod.poset()),
        prod_(prod),
        dom_(dom),
        cod_(cod),
        cap_(cap),
        carriers_(prod.poset().size()),
        indexes_(prod.poset().size()),
        comp_(prod.poset().size()),
        pred_cells_(prod.poset().size() * prod.poset().size()),
        relates_cells_(prod.poset().size()),
        dom_pairs_(prod.left().size() * prod.left().size()),
        limit_pairs_(prod.left().size()) {}

  const TypeModel& dom() const { return dom_; }
  const TypeModel& cod() const { return cod_; }
  const ProductPoset& product() const { return prod_; }

  const std::vector<Value>& carrier(Index k) const override {
    auto& slot = carriers_.at(k);
    if (slot) return *slot;
    const Index i = prod_.left_of(k), j = prod_.right_of(k);
    const auto& dc = dom_.carrier(i);
    const auto& cc = cod_.carrier(j);
    auto tables = enumerate_tables(
        dc.size(), cc.size(), [&](std::size_t a, std::size_t b) { return dom_.consistent(i, a, b); },
        [&](std::size_t x, std::size_t y) { return cod_.consistent(j, x, y); }, cap_);
    std::vector<Value> out;
    out.reserve(tables.size());
    for (std::size_t p = 0; p < tables.size(); ++p) {
      std::vector<Value> rows;
      rows.reserve(tables[p].size());
      for (std::size_t x : tables[p]) rows.push_back(cc[x]);
      Value v = Value::table(std::move(rows));
      v.leaf = p;
      out.push_back(std::move(v));
    }
    slot = std::move(out);
    return *slot;
  }

  std::size_t position(Index k, const Value& v) const override {
    if (auto p = fast_position(k, v)) return *p;
    if (auto p = lookup(k, v)) return *p;
    return TypeModel::position(k, v);
  }

  bool pred(Index later, const Value& f2, Index earlier, const Value& f) const override {
    if (!poset_.le(earlier, later)) return false;
    const auto p2 = fast_position(later, f2);
    const auto p = fast_position(earlier, f);
    if (p2 && p) {
      auto& cells = pred_cells_[later * poset_.size() + earlier];
      const std::size_t width = carriers_[earlier]->size();
      if (cells.empty() && carriers_[later]->size() * width <= kMatrixLimit)
        cells.assign(carriers_[later]->size() * width, -1);
      if (!cells.empty()) {
        auto& cell = cells[*p2 * width + *p];
        if (cell < 0) cell = pred_rows(later, f2, earlier, f) ? 1 : 0;
        return cell != 0;
      }
    }
    return pred_rows(later, f2, earlier, f);
  }

  bool consistent(Index k, std::size_t a, std::size_t b) const override {
    auto& slot = comp_.at(k);
    if (!slot) {
      const auto& c = carrier(k);
      std::vector<std::vector<char>> m(c.size(), std::vector<char>(c.size(), 0));
      for (Index k2 : poset_.above(k)) {
        const auto& c2 = carrier(k2);
        for (const Value& top : c2) {
          std::vector<std::size_t> below;
          for (std::size_t p = 0; p < c.size(); ++p)
            if (pred(k2, top, k, c[p])) below.push_back(p);
          for (std::size_t x : below)
            for (std::size_t y : below) m[x][y] = 1;
        }
      }
      slot = std::move(m);
    }
    return slot->at(a).at(b) != 0;
  }

  Value emb(Index from, const Value& f, Index to) const override {
    if (!poset_.le(from, to)) throw Error(ErrorKind::StateMismatch, "emb needs increasing indices");
    const Index i = prod_.left_of(from), j = prod_.right_of(from);
    const Index i2 = prod_.left_of(to), j2 = prod_.right_of(to);
    std::vector<Value> rows;
    for (const Value& a2 : dom_.carrier(i2)) {
      const Value a = dom_.proj(i2, a2, i);
      rows.push_back(cod_.emb(j, f.at(dom_.position(i, a)), j2));
    }
    return canonical(to, Value::table(std::move(rows)));
  }

  Value proj(Index from, const Value& f2, Index to) const override {
    if (!poset_.le(to, from)) throw Error(ErrorKind::StateMismatch, "proj needs decreasing indices");
    const Index i2 = prod_.left_of(from), j2 = prod_.right_of(from);
    const Index i = prod_.left_of(to), j = prod_.right_of(to);
    std::vector<Value> rows;
    for (const Value& a : dom_.carrier(i)) {
      const Value a2 = dom_.emb(i, a, i2);
      rows.push_back(cod_.proj(j2, f2.at(dom_.position(i2, a2)), j));
    }
    return canonical(to, Value::table(std::move(rows)));
  }

  const std::vector<Value>& limit() const override {
    if (limit_) return *limit_;
    const auto& dl = dom_.limit();
    const auto& cl = cod_.limit();
    const double total = candidates();
    if (total > static_cast<double>(cap_)) {
      throw Error(ErrorKind::SizeLimitExceeded, "limit of " + type_.str() + " has up to " +
                                                    std::to_string(static_cast<long double>(total)) + " candidates");
    }
    std::vector<Value> out;
    std::vector<std::size_t> digits(dl.size(), 0);
    while (cl.size() > 0 || dl.empty()) {
      std::vector<Value> rows;
      for (std::size_t d : digits) rows.push_back(cl[d]);
      Value f = Value::table(std::move(rows));
      IndexSet support(poset_.size());
      for (Index k = 0; k < poset_.size(); ++k) {
        for (const Value& g : carrier(k)) {
          if (relates_rows(f, k, g)) {
            support.insert(k);
            break;
          }
        }
      }
      if (in_filter(poset_, support)) {
        f.leaf = out.size();
        out.push_back(std::move(f));
      }
      std::size_t p = digits.size();
      while (p > 0 && ++digits[p - 1] == cl.size()) digits[--p] = 0;
      if (p == 0) break;
    }
    limit_ = std::move(out);
    return *limit_;
  }

  std::size_t limit_position(const Value& F) const override {
    if (auto p = fast_limit_position(F)) return *p;
    if (auto p = lookup_limit(F)) return *p;
    return TypeModel::limit_position(F);
  }

  bool relates(const Value& F, Index k, const Value& g) const override {
    const auto P = fast_limit_position(F);
    const auto p = fast_position(k, g);
    if (P && p) {
      auto& cells = relates_cells_[k];
      const std::size_t width = carriers_[k]->size();
      if (cells.empty() && limit_->size() * width <= kMatrixLimit) cells.assign(limit_->size() * width, -1);
      if (!cells.empty()) {
        auto& cell = cells[*P * width + *p];
        if (cell < 0) cell = relates_rows(F, k, g) ? 1 : 0;
        return cell != 0;
      }
    }
    return relates_rows(F, k, g);
  }

  double carrier_bound(Index k) const override {
    if (carriers_.at(k)) return static_cast<double>(carriers_[k]->size());
    return std::pow(cod_.carrier_bound(prod_.right_of(k)), dom_.carrier_bound(prod_.left_of(k)));
  }

  std::optional<std::size_t> fast_position(Index k, const Value& v) const override {
    if (!v.rows || k >= carriers_.size() || !carriers_[k]) return std::nullopt;
    const auto& c = *carriers_[k];
    if (v.leaf < c.size() && c[v.leaf].rows == v.rows) return v.leaf;
    return std::nullopt;
  }

  std::optional<std::size_t> fast_limit_position(const Value& a) const override {
    if (!a.rows || !limit_) return std::nullopt;
    if (a.leaf < limit_->size() && (*limit_)[a.leaf].rows == a.rows) return a.leaf;
    return std::nullopt;
  }

  Value canonical(Index k, const Value& v) const override {
    if (fast_position(k, v)) return v;
    if (k >= carriers_.size() || (!carriers_[k] && !small_carrier(k))) return v;
    if (auto p = lookup(k, v)) return (*carriers_[k])[*p];
    return v;
  }

  Value canonical_limit(const Value& a) const override {
    if (fast_limit_position(a)) return a;
    if (auto p = lookup_limit(a)) return (*limit_)[*p];
    return a;
  }

  std::string render_stage(Index k, const Value& v) const override {
    return value_name(*this, k, v) + "@" + poset_.id(k);
  }

  std::string render_limit(const Value& F) const override {
    std::string out = "{";
    const auto& dl = dom_.limit();
    for (std::size_t B = 0; B < dl.size(); ++B) {
      if (B) out += ", ";
      out += dom_.render_limit(dl[B]) + " => " + cod_.render_limit(F.at(B));
    }
    return out + "}";
  }

 private:
  using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

  // Carriers cheap enough to build just for canonical values.
  bool small_carrier(Index k) const { return carrier_bound(k) <= 1024.0; }

  double candidates() const {
    double total = 1;
    const double c = static_cast<double>(cod_.limit().size());
    for (std::size_t k = 0; k < dom_.limit().size(); ++k) total *= c;
    return total;
  }

  bool pred_rows(Index later, const Value& f2, Index earlier, const Value& f) const {
    const Index i2 = prod_.left_of(later), i = prod_.left_of(earlier);
    const Index j2 = prod_.right_of(later), j = prod_.right_of(earlier);
    width_check(f2, dom_.carrier(i2).size());
    width_check(f, dom_.carrier(i).size());
    for (auto [a2, a] : dom_pairs(i2, i))
      if (!cod_.pred(j2, f2[a2], j, f[a])) return false;
    return true;
  }

  bool relates_rows(const Value& F, Index k, const Value& g) const {
    const Index i = prod_.left_of(k), j = prod_.right_of(k);
    width_check(F, dom_.limit().size());
    width_check(g, dom_.carrier(i).size());
    for (auto [B, b] : limit_pairs(i))
      if (!cod_.relates(F[B], j, g[b])) return false;
    return true;
  }

  static void width_check(const Value& v, std::size_t width) {
    if (v.size() != width) {
      throw Error(ErrorKind::StateMismatch, "table of width " + std::to_string(v.size()) + " where " +
                                                std::to_string(width) + " rows are expected");
    }
  }

  // Position of a table in carrier(k) by the positions of its rows.
  std::optional<std::size_t> lookup(Index k, const Value& v) const {
    if (!v.rows) return std::nullopt;
    const Index j = prod_.right_of(k);
    const auto& c = carrier(k);
    auto& index = indexes_.at(k);
    if (!index) {
      index.emplace(c, cod_.carrier(j).size(), [&](const Value& row) { return cod_.position(j, row); });
    }
    std::vector<std::size_t> key;
    key.reserve(v.size());
    for (std::size_t r = 0; r < v.size(); ++r) {
      const Value& row = v[r];
      auto p = cod_.fast_position(j, row);
      if (!p) {
        try {
          p = cod_.position(j, row);
        } catch (const Error&) {
          return std::nullopt;
        }
      }
      key.push_back(*p);
    }
    if (!c.empty() && c.front().size() != key.size()) return std::nullopt;
    return index->find(key);
  }

  std::optional<std::size_t> lookup_limit(const Value& F) const {
    if (!F.rows || !limit_) return std::nullopt;
    if (!limit_index_) {
      limit_index_.emplace(*limit_, cod_.limit().size(), [&](const Value& row) { return cod_.limit_position(row); });
    }
    std::vector<std::size_t> key;
    key.reserve(F.size());
    for (std::size_t r = 0; r < F.size(); ++r) {
      auto p = cod_.fast_limit_position(F[r]);
      if (!p) {
        try {
          p = cod_.limit_position(F[r]);
        } catch (const Error&) {
          return std::nullopt;
        }
      }
      key.push_back(*p);
    }
    if (!limit_->empty() && limit_->front().size() != key.size()) return std::nullopt;
    return limit_index_->find(key);
  }

  // Positions (a2, a) of dom carriers at (i2, i) with a2 ~> a.
  const Pairs& dom_pairs(Index i2, Index i) const {
    auto& slot = dom_pairs_[i2 * prod_.left().size() + i];
    if (slot) return *slot;
    Pairs out;
    const auto& c2 = dom_.carrier(i2);
    const auto& c = dom_.carrier(i);
    for (std::size_t a2 = 0; a2 < c2.size(); ++a2)
      for (std::size_t a = 0; a < c.size(); ++a)
        if (dom_.pred(i2, c2[a2], i, c[a])) out.emplace_back(a2, a);
    slot = std::move(out);
    return *slot;
  }

  // Positions (B, b) of dom limit and dom carrier at i with B related to b.
  const Pairs& limit_pairs(Index i) const {
    auto& slot = limit_pairs_[i];
    if (slot) return *slot;
    Pairs out;
    const auto& dl = dom_.limit();
    const auto& c = dom_.carrier(i);
    for (std::size_t B = 0; B < dl.size(); ++B)
      for (std::size_t b = 0; b < c.size(); ++b)
        if (dom_.relates(dl[B], i, c[b])) out.emplace_back(B, b);
    slot = std::move(out);
    return *slot;
  }

  const ProductPoset& prod_;
  const TypeModel& dom_;
  const TypeModel& cod_;
  std::size_t cap_;
  mutable std::vector<std::optional<std::vector<Value>>> carriers_;
  mutable std::vector<std::optional<TableIndex>> indexes_;
  mutable std::vector<std::optional<std::vector<std::vector<char>>>> comp_;
  mutable std::vector<Cells> pred_cells_;
  mutable std::vector<Cells> relates_cells_;
  mutable std::vector<std::optional<Pairs>> dom_pairs_;
  mutable std::vector<std::optional<Pairs>> limit_pairs_;
  mutable std::optional<std::vector<Value>> limit_;
  mutable std::optional<TableIndex> limit_index_;
};

std::string value_name(const TypeModel& m, Index k, const Value& v) {
  if (const auto* b = dynamic_cast<const BaseModel*>(&m)) return b->name(k, v);
  const auto& a = dynamic_cast<const ArrowModel&>(m);
  const Index i = a.product().left_of(k), j = a.product().right_of(k);
  const auto& dc = a.dom().carrier(i);
  std::string out = "{";
  for (std::size_t p = 0; p < dc.size(); ++p) {
    if (p) out += ',';
    out += value_name(a.dom(), i, dc[p]) + ":" + value_name(a.cod(), j, v.at(p));
  }
  return out + "}";
}

}  // namespace

// -- Interpreter -------------------------------------------------------------

struct Interpreter::Cache {
  std::unordered_map<const void*, std::unique_ptr<TypeModel>> models;
  std::map<std::string, std::shared_ptr<const FunctionSpace>> spaces;
  std::map<std::string, std::vector<DynamicElement>> limits;
};

Interpreter::Interpreter(TypeInterpretation ti, std::size_t cap)
    : ti_(std::move(ti)), ix_(ti_.indexing()), cap_(cap), cache_(std::make_unique<Cache>()) {}

Interpreter::~Interpreter() = default;

const TypeModel& Interpreter::model(const Type& t) const {
  auto it = cache_->models.find(t.id());
  if (it != cache_->models.end()) return *it->second;
  std::unique_ptr<TypeModel> m;
  if (t.is_base()) {
    m = std::make_unique<BaseModel>(t, ti_.base(t.name()));
  } else {
    const TypeModel& dom = model(t.dom());
    const TypeModel& cod = model(t.cod());
    m = std::make_unique<ArrowModel>(t, ix_.product(t), dom, cod, cap_);
  }
  return *cache_->models.emplace(t.id(), std::move(m)).first->second;
}

const FunctionSpace& Interpreter::function_space(const Type& arrow) const {
  if (!arrow.is_arrow()) throw Error(ErrorKind::NotAFunction, arrow.str());
  auto it = cache_->spaces.find(arrow.str());
  if (it != cache_->spaces.end()) return *it->second;
  auto space = std::make_shared<const FunctionSpace>(
      build_funspace(interp_type(arrow.dom()), interp_type(arrow.cod()), cap_));
  return *cache_->spaces.emplace(arrow.str(), std::move(space)).first->second;
}

std::shared_ptr<const FactorSystem> Interpreter::interp_type(const Type& t) const {
  if (t.is_base()) return ti_.base(t.name());
  function_space(t);
  auto space = cache_->spaces.at(t.str());
  return std::shared_ptr<const FactorSystem>(space, &space->system);
}

const std::vector<DynamicElement>& Interpreter::interp_type_limit(const Type& t) const {
  auto it = cache_->limits.find(t.str());
  if (it != cache_->limits.end()) return it->second;
  return cache_->limits.emplace(t.str(), elem(interp_type(t)->sys)).first->second;
}

Value Interpreter::from_state(const Type& t, State s) const {
  const TypeModel& m = model(t);
  if (s.index >= m.poset().size()) throw Error(ErrorKind::UnknownIndex, std::to_string(s.index));
  return m.carrier(s.index).at(s.elem);
}

State Interpreter::to_state(const Type& t, Index k, const Value& v) const { return {k, model(t).position(k, v)}; }

Value Interpreter::from_element(const Type& t, const DynamicElement& e) const {
  if (t.is_base()) {
    auto p = position_of(interp_type_limit(t), e);
    if (!p) throw Error(ErrorKind::NotInLimit, "not an element of the limit of " + t.str());
    return Value::of(*p);
  }
  const FunctionSpace& space = function_space(t);
  const TypeModel& dom = model(t.dom());
  std::vector<Value> rows;
  for (const Value& B : dom.limit()) rows.push_back(from_element(t.cod(), app(space, e, to_element(t.dom(), B))));
  return Value::table(std::move(rows));
}

DynamicElement Interpreter::to_element(const Type& t, const Value& a) const {
  if (t.is_base()) return interp_type_limit(t).at(model(t).limit_position(a));
  const TypeModel& m = model(t);
  std::vector<State> states;
  for (Index k = 0; k < m.poset().size(); ++k) {
    const auto& c = m.carrier(k);
    for (std::size_t p = 0; p < c.size(); ++p)
      if (m.relates(a, k, c[p])) states.push_back({k, p});
  }
  DynamicElement e{StateSet(std::move(states))};
  if (!position_of(interp_type_limit(t), e)) {
    throw Error(ErrorKind::NotInLimit, m.render_limit(a) + " has no counterpart in the limit of " + t.str());
  }
  return e;
}

struct Interpreter::StageMemo::Impl {
  struct KeyHash {
    std::size_t operator()(const std::pair<const StateDerivation*, std::uint64_t>& k) const noexcept {
      return std::hash<const void*>()(k.first) ^ (std::hash<std::uint64_t>()(k.second) * 0x9e3779b97f4a7c15ULL);
    }
  };
  std::unordered_map<std::pair<const StateDerivation*, std::uint64_t>, Value, KeyHash> values;
  std::unordered_map<const void*, std::vector<std::size_t>> free;

  const std::vector<std::size_t>& free_levels(const Term& t) {
    auto it = free.find(t.id());
    if (it != free.end()) return it->second;
    std::vector<std::size_t> out;
    switch (t.kind()) {
      case Term::Kind::Var:
        out.push_back(t.level());
        break;
      case Term::Kind::App: {
        const auto& a = free_levels(t.fun());
        const auto& b = free_levels(t.arg());
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        break;
      }
      case Term::Kind::Abs:
        for (std::size_t k : free_levels(t.body()))
          if (k != t.level()) out.push_back(k);
        break;
    }
    return free.emplace(t.id(), std::move(out)).first->second;
  }
};

Interpreter::StageMemo::StageMemo() : impl_(std::make_unique<Impl>()) {}
Interpreter::StageMemo::~StageMemo() = default;

Value Interpreter::eval_stage_value(const StateDerivation& d, const std::vector<Value>& env, StageMemo* memo) const {
  using Rule = StateDerivation::Rule;
  if (env.size() != d.context.size()) throw Error(ErrorKind::StateMismatch, "environment length");
  // The key packs the carrier positions of the free variables, 12 bits each.
  std::optional<std::pair<const StateDerivation*, std::uint64_t>> key;
  if (memo) {
    const auto& levels = memo->impl_->free_levels(d.term);
    std::uint64_t packed = 0;
    bool ok = levels.size() <= 5;
    for (std::size_t p = 0; p < levels.size() && ok; ++p) {
      const std::size_t k = levels[p];
      const auto pos = model(d.context[k]).fast_position(d.stage[k], env[k]);
      ok = pos && *pos < 4096;
      if (ok) packed = (packed << 12) | *pos;
    }
    if (ok) {
      key.emplace(&d, packed);
      if (auto it = memo->impl_->values.find(*key); it != memo->impl_->values.end()) return it->second;
    }
  }
  Value out;
  switch (d.rule) {
    case Rule::VarPos: {
      const std::size_t k = d.term.level();
      out = model(d.context[k]).emb(d.stage[k], env[k], d.result);
      break;
    }
    case Rule::VarNeg: {
      const std::size_t k = d.term.level();
      out = model(d.context[k]).proj(d.stage[k], env[k], d.result);
      break;
    }
    case Rule::App: {
      const StateDerivation& fd = *d.premises[0];
      const StateDerivation& ad = *d.premises[1];
      const Value f = eval_stage_value(fd, env, memo);
      const Value a = eval_stage_value(ad, env, memo);
      out = f.at(model(ad.type).position(ad.result, a));
      break;
    }
    case Rule::Abs: {
      const StateDerivation& body = *d.premises[0];
      const Index i = ix_.product(d.type).left_of(d.result);
      const auto& domain = model(d.type.dom()).carrier(i);
      std::vector<Value> rows;
      rows.reserve(domain.size());
      std::vector<Value> inner = env;
      inner.emplace_back();
      for (const Value& b : domain) {
        inner.back() = b;
        rows.push_back(eval_stage_value(body, inner, memo));
      }
      out = model(d.type).canonical(d.result, Value::table(std::move(rows)));
      break;
    }
  }
  if (key) memo->impl_->values.emplace(*key, out);
  return out;
}

State Interpreter::eval_stage(const StateDerivation& d, const std::vector<State>& env) const {
  if (env.size() != d.context.size()) throw Error(ErrorKind::StateMismatch, "environment length");
  std::vector<Value> values;
  for (std::size_t k = 0; k < env.size(); ++k) {
    if (env[k].index != d.stage[k]) {
      throw Error(ErrorKind::StateMismatch, "environment entry " + std::to_string(k) + " is not at stage " +
                                                ix_.poset(d.context[k]).id(d.stage[k]));
    }
    values.push_back(from_state(d.context[k], env[k]));
  }
  return to_state(d.type, d.result, eval_stage_value(d, values));
}

Value Interpreter::eval_limit_value(const Context& ctx, const Term& term, const std::vector<Value>& env) const {
  if (env.size() != ctx.size()) throw Error(ErrorKind::StateMismatch, "environment length");
  switch (term.kind()) {
    case Term::Kind::Var:
      if (term.level() >= env.size()) throw Error(ErrorKind::UnboundVariable, term.str());
      return env[term.level()];
    case Term::Kind::App: {
      const Type fun_type = infer_type(ctx, term.fun());
      if (!fun_type.is_arrow()) throw Error(ErrorKind::NotAFunction, term.fun().str());
      const Value f = eval_limit_value(ctx, term.fun(), env);
      const Value a = eval_limit_value(ctx, term.arg(), env);
      return f.at(model(fun_type.dom()).limit_position(a));
    }
    case Term::Kind::Abs: {
      if (term.level() != ctx.size()) throw Error(ErrorKind::AnnotationMismatch, term.str());
      Context inner_ctx = ctx;
      inner_ctx.push_back(term.annot());
      std::vector<Value> inner = env;
      inner.emplace_back();
      std::vector<Value> rows;
      for (const Value& B : model(term.annot()).limit()) {
        inner.back() = B;
        rows.push_back(eval_limit_value(inner_ctx, term.body(), inner));
      }
      return Value::table(std::move(rows));
    }
  }
  throw Error(ErrorKind::SyntaxError, "malformed term");
}

DynamicElement Interpreter::eval_limit(const Context& ctx, const Term& term,
                                       const std::vector<DynamicElement>& env) const {
  if (env.size() != ctx.size()) throw Error(ErrorKind::StateMismatch, "environment length");
  std::vector<Value> values;
  for (std::size_t k = 0; k < env.size(); ++k) values.push_back(from_element(ctx[k], env[k]));
  return to_element(infer_type(ctx, term), eval_limit_value(ctx, term, values));
}

std::vector<Value> Interpreter::embed_env(const Context& ctx, const std::vector<Index>& stage,
                                          const std::vector<Value>& env) const {
  if (env.size() != ctx.size() || stage.size() != ctx.size()) {
    throw Error(ErrorKind::StateMismatch, "environment length");
  }
  std::vector<Value> out;
  for (std::size_t k = 0; k < ctx.size(); ++k) {
    const TypeModel& m = model(ctx[k]);
    const std::vector<Index> above = m.poset().above(stage[k]);
    std::vector<Value> orbit;
    for (Index i2 : above) orbit.push_back(m.emb(stage[k], env[k], i2));
    const Value* found = nullptr;
    for (const Value& A : m.limit()) {
      bool all = true;
      for (std::size_t p = 0; p < above.size() && all; ++p) all = m.relates(A, above[p], orbit[p]);
      if (!all) continue;
      if (found) throw Error(ErrorKind::NotInLimit, "emb-orbit lies in several limit elements");
      found = &A;
    }
    if (!found) throw Error(ErrorKind::NotInLimit, "emb-orbit of " + m.render_stage(stage[k], env[k]));
    out.push_back(*found);
  }
  return out;
}

bool Interpreter::check_reflection(const StateDerivation& d, const std::vector<Value>& stage_env,
                                   const std::vector<Value>& limit_env) const {
  if (stage_env.size() != d.context.size() || limit_env.size() != d.context.size()) {
    throw Error(ErrorKind::StateMismatch, "environment length");
  }
  for (std::size_t k = 0; k < d.context.size(); ++k) {
    if (!model(d.context[k]).relates(limit_env[k], d.stage[k], stage_env[k])) {
      throw Error(ErrorKind::StateMismatch, "limit environment entry " + std::to_string(k) +
                                                " is not related to the stage entry");
    }
  }
  const Value limit = eval_limit_value(d.context, d.term, limit_env);
  const Value stage = eval_stage_value(d, stage_env);
  return model(d.type).relates(limit, d.result, stage);
}

bool Interpreter::check_monotone(const Context& ctx, const Term& term, const std::vector<Index>& stage,
                                 const std::vector<Value>& env, Index earlier, Index later) const {
  const Type type = infer_type(ctx, term);
  const TypeModel& m = model(type);
  if (!m.poset().le(earlier, later)) throw Error(ErrorKind::StateMismatch, "indices are not ordered");
  const auto lo = enumerate_derivations(ix_, ctx, term, stage, earlier);
  const auto hi = enumerate_derivations(ix_, ctx, term, stage, later);
  for (const auto& dh : hi) {
    const Value vh = eval_stage_value(*dh, env);
    for (const auto& dl : lo)
      if (!m.pred(later, vh, earlier, eval_stage_value(*dl, env))) return false;
  }
  return true;
}

bool Interpreter::check_embpmap(const Type& t, std::string* witness) const {
  auto fail = [&](const std::string& why) {
    if (witness) *witness = why;
    return false;
  };
  const bool pos = is_positive(t, ti_.classifier());
  const bool neg = is_negative(t, ti_.classifier());
  if (!pos && !neg) return fail(t.str() + " is neither positive nor negative");
  const auto fs = interp_type(t);
  const TypeModel& m = model(t);
  const IndexPoset& p = m.poset();
  std::string why;
  if (pos && !check_direct(*fs, &why)) return fail("not direct: " + why);
  if (neg && !check_inverse(*fs, &why)) return fail("not inverse: " + why);
  for (const Value& A : m.limit()) {
    for (Index k = 0; k < p.size(); ++k) {
      for (const Value& v : m.carrier(k)) {
        if (!m.relates(A, k, v)) continue;
        for (Index k2 = 0; k2 < p.size(); ++k2) {
          if (pos && p.le(k, k2) && !m.relates(A, k2, m.emb(k, v, k2))) {
            return fail(m.render_limit(A) + " loses emb of " + m.render_stage(k, v) + " at " + p.id(k2));
          }
          if (neg && p.le(k2, k) && !m.relates(A, k2, m.proj(k, v, k2))) {
            return fail(m.render_limit(A) + " loses proj of " + m.render_stage(k, v) + " at " + p.id(k2));
          }
        }
      }
    }
  }
  return true;
}

// -- sweep -------------------------------------------------------------------

std::vector<Type> default_pool() {
  const Type nat = Type::base("nat");
  const Type prop = Type::base("prop");
  return {nat, prop, Type::arrow(nat, prop), Type::arrow(prop, prop)};
}

std::vector<Term> enumerate_terms(std::size_t context_length, std::size_t max_size, const std::vector<Type>& pool) {
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Term>> memo;
  std::function<const std::vector<Term>&(std::size_t, std::size_t)> exact =
      [&](std::size_t n, std::size_t s) -> const std::vector<Term>& {
    auto key = std::make_pair(n, s);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<Term> out;
    if (s == 1) {
      for (std::size_t k = 0; k < n; ++k) out.push_back(Term::var(k));
    } else if (s > 1) {
      for (std::size_t s1 = 1; s1 + 1 < s; ++s1) {
        const auto& funs = exact(n, s1);
        const auto& args = exact(n, s - 1 - s1);
        for (const Term& f : funs)
          for (const Term& a : args) out.push_back(Term::app(f, a));
      }
      for (const Type& t : pool)
        for (const Term& b : exact(n + 1, s - 1)) out.push_back(Term::abs(n, t, b));
    }
    return memo.emplace(key, std::move(out)).first->second;
  };
  std::vector<Term> all;
  for (std::size_t s = 1; s <= max_size; ++s) {
    const auto& ts = exact(context_length, s);
    all.insert(all.end(), ts.begin(), ts.end());
  }
  return all;
}

std::vector<Context> enumerate_contexts(std::size_t max_length, const std::vector<Type>& pool) {
  std::vector<Context> out{Context{}};
  std::vector<Context> layer{Context{}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<Context> next;
    for (const Context& c : layer)
      for (const Type& t : pool) {
        Context d = c;
        d.push_back(t);
        next.push_back(std::move(d));
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

namespace {

// Calls f(v) for every v in the product of {0..sizes[k]-1}.
template <class F>
void for_each_tuple(const std::vector<std::size_t>& sizes, F&& f) {
  for (std::size_t s : sizes)
    if (s == 0) return;
  std::vector<std::size_t> v(sizes.size(), 0);
  while (true) {
    f(v);
    std::size_t p = v.size();
    while (p > 0 && ++v[p - 1] == sizes[p - 1]) v[--p] = 0;
    if (p == 0) return;
  }
}

void note(std::string& first, const std::string& text) {
  if (first.empty()) first = text;
}

}  // namespace

SweepReport sweep(const Interpreter& in, const SweepOptions& options) {
  const std::vector<Type> pool = options.pool.empty() ? default_pool() : options.pool;
  const TypeIndexing& ix = in.indexing();
  const BaseClassifier bc = in.interpretation().classifier();
  const Type prop = Type::base("prop");
  const auto start = std::chrono::steady_clock::now();
  SweepReport report;
  report.binding = in.interpretation().describe();

  for (const Context& ctx : enumerate_contexts(options.max_context, pool)) {
    ++report.contexts;
    std::vector<std::size_t> index_counts;
    for (const Type& t : ctx) index_counts.push_back(ix.poset(t).size());

    for (const Term& term : enumerate_terms(ctx.size(), options.max_term_size, pool)) {
      Type type = prop;
      try {
        type = infer_type(ctx, term);
      } catch (const Error&) {
        continue;
      }
      ++report.terms;
      if (!is_core_judgement(ctx, term, bc)) continue;
      ++report.core_terms;

      const std::string where = render_context(ctx) + " |- " + term.str();
      try {
        const TypeModel& tm = in.model(type);
        StateSearch search(ix, ctx, term, options.derivation_cap);
        Interpreter::StageMemo memo;
        std::map<std::vector<std::size_t>, Value> limit_values;
        auto limit_value = [&](const std::vector<std::size_t>& A) -> const Value& {
          auto it = limit_values.find(A);
          if (it != limit_values.end()) return it->second;
          std::vector<Value> env;
          for (std::size_t k = 0; k < ctx.size(); ++k) env.push_back(in.model(ctx[k]).limit()[A[k]]);
          return limit_values.emplace(A, tm.canonical_limit(in.eval_limit_value(ctx, term, env))).first->second;
        };

        for_each_tuple(index_counts, [&](const std::vector<std::size_t>& C) {
          std::vector<std::vector<StateDerivationPtr>> derivs(tm.poset().size());
          bool any = false;
          for (Index j = 0; j < tm.poset().size(); ++j) {
            derivs[j] = search.derivations(C, j);
            if (derivs[j].empty()) {
              ++report.underivable;
            } else {
              ++report.judgements;
              report.derivations += derivs[j].size();
              any = true;
            }
          }
          if (!any) return;
          const std::string at = where + " at C=" + ix.render_stage(ctx, C);

          std::vector<std::size_t> carrier_sizes;
          for (std::size_t k = 0; k < ctx.size(); ++k) carrier_sizes.push_back(in.model(ctx[k]).carrier(C[k]).size());
          for_each_tuple(carrier_sizes, [&](const std::vector<std::size_t>& a) {
            std::vector<Value> stage_env;
            for (std::size_t k = 0; k < ctx.size(); ++k) stage_env.push_back(in.model(ctx[k]).carrier(C[k])[a[k]]);
            auto env_text = [&] {
              std::string s = "a=(";
              for (std::size_t k = 0; k < ctx.size(); ++k)
                s += (k ? ", " : "") + in.model(ctx[k]).render_stage(C[k], stage_env[k]);
              return s + ")";
            };

            // Distinct stage values per result index, with their multiplicity.
            std::vector<std::vector<std::pair<Value, std::size_t>>> values(derivs.size());
            for (Index j = 0; j < derivs.size(); ++j) {
              for (const auto& d : derivs[j]) {
                Value v = in.eval_stage_value(*d, stage_env, &memo);
                auto& vs = values[j];
                auto it = std::find_if(vs.begin(), vs.end(), [&](const auto& e) { return e.first == v; });
                if (it == vs.end()) vs.emplace_back(std::move(v), 1);
                else ++it->second;
              }
            }

            // Limit environments related to a.
            std::vector<std::vector<std::size_t>> related(ctx.size());
            std::vector<std::size_t> related_sizes;
            for (std::size_t k = 0; k < ctx.size(); ++k) {
              const TypeModel& m = in.model(ctx[k]);
              for (std::size_t A = 0; A < m.limit().size(); ++A)
                if (m.relates(m.limit()[A], C[k], stage_env[k])) related[k].push_back(A);
              related_sizes.push_back(related[k].size());
            }
            for_each_tuple(related_sizes, [&](const std::vector<std::size_t>& pick) {
              ++report.env_pairs;
              std::vector<std::size_t> A(ctx.size());
              for (std::size_t k = 0; k < ctx.size(); ++k) A[k] = related[k][pick[k]];
              const Value& L = limit_value(A);
              for (Index j = 0; j < values.size(); ++j) {
                for (const auto& [v, n] : values[j]) {
                  report.reflection_checks += n;
                  if (!tm.relates(L, j, v)) {
                    report.reflection_violations += n;
                    note(report.first_reflection, at + " " + env_text() + " => " + tm.poset().id(j) + ": stage " +
                                                      tm.render_stage(j, v) + " not in limit " + tm.render_limit(L));
                  }
                  if (type == prop) {
                    report.prop_checks += n;
                    const auto& fs = *in.interp_type(prop);
                    const DynamicElement emb = emb_limit(fs, {j, v.leaf});
                    if (!(in.interp_type_limit(prop).at(L.leaf) == emb)) {
                      report.prop_violations += n;
                      note(report.first_prop, at + " " + env_text() + ": stage " + tm.render_stage(j, v) +
                                                  " but limit " + tm.render_limit(L));
                    }
                  }
                }
              }
            });

            if (!options.monotone) return;
            for (Index j = 0; j < values.size(); ++j) {
              for (Index j2 = 0; j2 < values.size(); ++j2) {
                if (values[j].empty() || values[j2].empty() || !tm.poset().le(j, j2)) continue;
                for (const auto& [v2, n2] : values[j2]) {
                  for (const auto& [v, n] : values[j]) {
                    if (j == j2) {
                      report.independence_checks += n2 * n;
                      if (!tm.pred(j, v2, j, v) || !tm.pred(j, v, j, v2)) {
                        report.independence_violations += n2 * n;
                        note(report.first_independence, at + " " + env_text() + " => " + tm.poset().id(j) + ": " +
                                                            tm.render_stage(j, v2) + " vs " + tm.render_stage(j, v));
                      }
                    } else {
                      report.monotone_checks += n2 * n;
                      if (!tm.pred(j2, v2, j, v)) {
                        report.monotone_violations += n2 * n;
                        note(report.first_monotone, at + " " + env_text() + ": " + tm.render_stage(j2, v2) +
                                                        " does not ~> " + tm.render_stage(j, v));
                      }
                    }
                  }
                }
              }
            }
          });
        });
      } catch (const Error& e) {
        ++report.errors;
        note(report.first_error, where + ": " + e.what());
      }
    }
  }
  report.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<CheckResult> sweep_results(const SweepReport& r) {
  auto record = [&](const char* name, std::size_t checks, std::size_t violations, const std::string& first) {
    CheckResult c{name, violations == 0, {}, 0.0};
    c.witness = violations == 0 ? std::to_string(checks) + " checks"
                                : std::to_string(violations) + " of " + std::to_string(checks) + " failed, first: " + first;
    return c;
  };
  std::vector<CheckResult> out{
      record("reflection", r.reflection_checks, r.reflection_violations, r.first_reflection),
      record("monotone", r.monotone_checks, r.monotone_violations, r.first_monotone),
      record("independence", r.independence_checks, r.independence_violations, r.first_independence),
      record("prop", r.prop_checks, r.prop_violations, r.first_prop),
      record("errors", r.derivations, r.errors, r.first_error),
  };
  out.back().witness = r.errors == 0 ? std::to_string(r.terms) + " terms, " + std::to_string(r.derivations) +
                                           " derivations, " + std::to_string(r.env_pairs) + " environment pairs"
                                     : std::to_string(r.errors) + " errors, first: " + r.first_error;
  out.front().millis = r.millis;
  return out;
}

}  // namespace fls
