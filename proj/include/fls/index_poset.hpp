#pragma once

// Finite directed index preorders and the canonical filter on them.
//
// The filter used throughout is the one generated by up-sets:
//   F(I) = { H subset of I : there is some i with up(i) contained in H }.
// On a finite directed preorder this is exactly the family of index sets
// that contain the whole top class.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fls {

using Index = std::size_t;

class IndexPoset {
 public:
  /// Builds the reflexive-transitive closure of `declared` over `ids` and
  /// rejects the result unless every pair of indices has an upper bound.
  static IndexPoset closure(std::vector<std::string> ids,
                            const std::vector<std::pair<std::string, std::string>>& declared);

  /// Chain `first <= first+1 <= ... <= last` with decimal ids.
  static IndexPoset chain(int first, int last);

  /// One-point poset.
  static IndexPoset singleton(std::string id);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::string& id(Index k) const { return ids_.at(k); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }

  std::optional<Index> lookup(std::string_view id) const;
  Index find(std::string_view id) const;  // throws UnknownIndex

  bool le(Index a, Index b) const { return le_[a * size() + b] != 0; }

  /// Indices t with i <= t for every i.  Never empty.
  const std::vector<Index>& top_class() const noexcept { return tops_; }
  Index top() const noexcept { return tops_.front(); }

  /// Indices j with le(i, j), in increasing position order.
  std::vector<Index> above(Index i) const;
  std::vector<Index> below(Index i) const;

  friend bool operator==(const IndexPoset& a, const IndexPoset& b) {
    return a.ids_ == b.ids_ && a.le_ == b.le_;
  }

 private:
  friend class ProductPoset;
  IndexPoset(std::vector<std::string> ids, std::vector<char> le);
  void finish();

  std::vector<std::string> ids_;
  std::vector<char> le_;  // row-major, le_[a*n+b] = (a <= b)
  std::vector<Index> tops_;
};

/// A subset of the ids of one poset.
class IndexSet {
 public:
  IndexSet() = default;
  explicit IndexSet(std::size_t universe) : bits_(universe, false) {}
  static IndexSet of(std::size_t universe, const std::vector<Index>& members);
  static IndexSet all(std::size_t universe);

  std::size_t universe() const noexcept { return bits_.size(); }
  bool contains(Index k) const { return k < bits_.size() && bits_[k]; }
  void insert(Index k) { bits_.at(k) = true; }
  bool empty() const;
  std::size_t count() const;
  std::vector<Index> members() const;
  bool subset_of(const IndexSet& other) const;

  IndexSet intersect(const IndexSet& other) const;

  friend bool operator==(const IndexSet& a, const IndexSet& b) { return a.bits_ == b.bits_; }

 private:
  std::vector<bool> bits_;
};

/// Componentwise product of two preorders.  The index of the pair (i, j) is
/// i * |right| + j and its id renders as "i->j" (the left id is parenthesised
/// when it is itself a product id).
class ProductPoset {
 public:
  ProductPoset(IndexPoset left, IndexPoset right);

  const IndexPoset& poset() const noexcept { return product_; }
  const IndexPoset& left() const noexcept { return left_; }
  const IndexPoset& right() const noexcept { return right_; }

  Index pair(Index i, Index j) const noexcept { return i * right_.size() + j; }
  Index left_of(Index k) const noexcept { return k / right_.size(); }
  Index right_of(Index k) const noexcept { return k % right_.size(); }

 private:
  IndexPoset left_;
  IndexPoset right_;
  IndexPoset product_;
};

std::string product_id(const std::string& left, const std::string& right);

IndexSet up_set(const IndexPoset& poset, Index i);
bool is_cofinal(const IndexPoset& poset, const IndexSet& set);
bool in_filter(const IndexPoset& poset, const IndexSet& set);

/// H[I'] = { j : exists i in I' with (i->j) in H }.
IndexSet image(const ProductPoset& product, const IndexSet& pairs, const IndexSet& left_set);

/// Condition (D) for the canonical filter, tested on the generating up-sets.
/// On failure `witness` (when non-null) receives a description.
bool check_condition_D(const IndexPoset& left, const IndexPoset& right,
                       std::string* witness = nullptr);

}  // namespace fls
