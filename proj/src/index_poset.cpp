#include "fls/index_poset.hpp"

#include <algorithm>
#include <unordered_map>

#include "fls/error.hpp"

namespace fls {

IndexPoset::IndexPoset(std::vector<std::string> ids, std::vector<char> le)
    : ids_(std::move(ids)), le_(std::move(le)) {
  finish();
}

void IndexPoset::finish() {
  const std::size_t n = size();
  tops_.clear();
  for (Index t = 0; t < n; ++t) {
    bool top = true;
    for (Index i = 0; i < n && top; ++i) top = le(i, t);
    if (top) tops_.push_back(t);
  }
  // A finite directed preorder always has a top; callers verify directedness
  // before we get here, so an empty top class is an internal fault.
  if (tops_.empty()) throw Error(ErrorKind::NotDirected, "preorder has no top element");
}

IndexPoset IndexPoset::closure(std::vector<std::string> ids,
                               const std::vector<std::pair<std::string, std::string>>& declared) {
  if (ids.empty()) throw Error(ErrorKind::NotDirected, "index set is empty");
  const std::size_t n = ids.size();
  std::unordered_map<std::string, Index> position;
  for (Index k = 0; k < n; ++k) {
    if (!position.emplace(ids[k], k).second) {
      throw Error(ErrorKind::InvalidSystem, "duplicate index id '" + ids[k] + "'");
    }
  }
  std::vector<char> le(n * n, 0);
  for (Index k = 0; k < n; ++k) le[k * n + k] = 1;
  for (const auto& [a, b] : declared) {
    auto ia = position.find(a);
    auto ib = position.find(b);
    if (ia == position.end()) throw Error(ErrorKind::UnknownIndex, a);
    if (ib == position.end()) throw Error(ErrorKind::UnknownIndex, b);
    le[ia->second * n + ib->second] = 1;
  }
  for (Index m = 0; m < n; ++m)
    for (Index a = 0; a < n; ++a)
      if (le[a * n + m])
        for (Index b = 0; b < n; ++b)
          if (le[m * n + b]) le[a * n + b] = 1;

  for (Index a = 0; a < n; ++a) {
    for (Index b = a + 1; b < n; ++b) {
      bool bounded = false;
      for (Index c = 0; c < n && !bounded; ++c) bounded = le[a * n + c] && le[b * n + c];
      if (!bounded) {
        throw Error(ErrorKind::NotDirected, "no upper bound for (" + ids[a] + ", " + ids[b] + ")");
      }
    }
  }
  return IndexPoset(std::move(ids), std::move(le));
}

IndexPoset IndexPoset::chain(int first, int last) {
  std::vector<std::string> ids;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (int k = first; k <= last; ++k) {
    ids.push_back(std::to_string(k));
    if (k > first) pairs.emplace_back(std::to_string(k - 1), std::to_string(k));
  }
  return closure(std::move(ids), pairs);
}

IndexPoset IndexPoset::singleton(std::string id) { return closure({std::move(id)}, {}); }

std::optional<Index> IndexPoset::lookup(std::string_view id) const {
  auto it = std::find(ids_.begin(), ids_.end(), id);
  if (it == ids_.end()) return std::nullopt;
  return static_cast<Index>(it - ids_.begin());
}

Index IndexPoset::find(std::string_view id) const {
  if (auto k = lookup(id)) return *k;
  throw Error(ErrorKind::UnknownIndex, std::string(id));
}

std::vector<Index> IndexPoset::above(Index i) const {
  std::vector<Index> out;
  for (Index j = 0; j < size(); ++j)
    if (le(i, j)) out.push_back(j);
  return out;
}

std::vector<Index> IndexPoset::below(Index i) const {
  std::vector<Index> out;
  for (Index j = 0; j < size(); ++j)
    if (le(j, i)) out.push_back(j);
  return out;
}

IndexSet IndexSet::of(std::size_t universe, const std::vector<Index>& members) {
  IndexSet set(universe);
  for (Index k : members) set.insert(k);
  return set;
}

IndexSet IndexSet::all(std::size_t universe) {
  IndexSet set(universe);
  for (Index k = 0; k < universe; ++k) set.insert(k);
  return set;
}

bool IndexSet::empty() const { return std::none_of(bits_.begin(), bits_.end(), [](bool b) { return b; }); }

std::size_t IndexSet::count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

std::vector<Index> IndexSet::members() const {
  std::vector<Index> out;
  for (Index k = 0; k < bits_.size(); ++k)
    if (bits_[k]) out.push_back(k);
  return out;
}

bool IndexSet::subset_of(const IndexSet& other) const {
  for (Index k = 0; k < bits_.size(); ++k)
    if (bits_[k] && !other.contains(k)) return false;
  return true;
}

IndexSet IndexSet::intersect(const IndexSet& other) const {
  IndexSet out(bits_.size());
  for (Index k = 0; k < bits_.size(); ++k)
    if (bits_[k] && other.contains(k)) out.insert(k);
  return out;
}

std::string product_id(const std::string& left, const std::string& right) {
  if (left.find("->") != std::string::npos) return "(" + left + ")->" + right;
  return left + "->" + right;
}

ProductPoset::ProductPoset(IndexPoset left, IndexPoset right)
    : left_(std::move(left)), right_(std::move(right)), product_({"_"}, {1}) {
  const std::size_t nl = left_.size();
  const std::size_t nr = right_.size();
  const std::size_t n = nl * nr;
  std::vector<std::string> ids;
  ids.reserve(n);
  for (Index i = 0; i < nl; ++i)
    for (Index j = 0; j < nr; ++j) ids.push_back(product_id(left_.id(i), right_.id(j)));
  std::vector<char> le(n * n, 0);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      le[a * n + b] = left_.le(a / nr, b / nr) && right_.le(a % nr, b % nr);
  product_ = IndexPoset(std::move(ids), std::move(le));
}

IndexSet up_set(const IndexPoset& poset, Index i) {
  if (i >= poset.size()) throw Error(ErrorKind::UnknownIndex, std::to_string(i));
  return IndexSet::of(poset.size(), poset.above(i));
}

bool is_cofinal(const IndexPoset& poset, const IndexSet& set) {
  for (Index i = 0; i < poset.size(); ++i) {
    bool reached = false;
    for (Index j = 0; j < poset.size() && !reached; ++j) reached = poset.le(i, j) && set.contains(j);
    if (!reached) return false;
  }
  return true;
}

bool in_filter(const IndexPoset& poset, const IndexSet& set) {
  for (Index i = 0; i < poset.size(); ++i)
    if (up_set(poset, i).subset_of(set)) return true;
  return false;
}

IndexSet image(const ProductPoset& product, const IndexSet& pairs, const IndexSet& left_set) {
  IndexSet out(product.right().size());
  for (Index k : pairs.members())
    if (left_set.contains(product.left_of(k))) out.insert(product.right_of(k));
  return out;
}

bool check_condition_D(const IndexPoset& left, const IndexPoset& right, std::string* witness) {
  const ProductPoset product(left, right);
  for (Index h = 0; h < product.poset().size(); ++h) {
    const IndexSet generator = up_set(product.poset(), h);
    for (Index i = 0; i < left.size(); ++i) {
      const IndexSet img = image(product, generator, up_set(left, i));
      if (!in_filter(right, img)) {
        if (witness) *witness = "up(" + product.poset().id(h) + ")[up(" + left.id(i) + ")] not in filter";
        return false;
      }
    }
  }
  return true;
}

}  // namespace fls
