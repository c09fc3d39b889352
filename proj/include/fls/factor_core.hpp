#pragma once

// Systems, prefactor systems and factor systems over a finite directed
// index preorder, stored extensionally so that every law can be checked by
// enumeration.
//
// Notation used in comments:  a' ~> a  is the predecessor relation (a is a
// predecessor of a'), and  a # b  is consistency (a common successor exists).

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "fls/index_poset.hpp"

namespace fls {

struct State {
  Index index = 0;
  std::size_t elem = 0;

  friend auto operator<=>(const State&, const State&) = default;
};

using Bits = boost::dynamic_bitset<>;

class System {
 public:
  System(IndexPoset poset, std::vector<std::vector<std::string>> carriers);

  const IndexPoset& poset() const noexcept { return poset_; }
  std::size_t carrier_size(Index k) const { return carriers_.at(k).size(); }
  const std::vector<std::string>& carrier(Index k) const { return carriers_.at(k); }

  std::optional<std::size_t> find_element(Index k, std::string_view name) const;
  State find_state(std::string_view index_id, std::string_view elem_name) const;

  /// "elem@index"
  std::string render(State s) const;

  /// later ~> earlier.  False when earlier.index <= later.index does not hold.
  bool pred(State later, State earlier) const;
  void set_pred(State later, State earlier, bool value);
  /// Adds a ~> a for every state.
  void add_diagonal();

  /// Bits over carrier(later) of the states c with c ~> earlier.
  const Bits& successors(Index later, State earlier) const;

  std::size_t state_count() const noexcept { return offsets_.back(); }
  std::size_t state_id(State s) const { return offsets_[s.index] + s.elem; }
  State state_at(std::size_t id) const;
  std::vector<State> states() const;
  std::vector<State> states_at(Index k) const;

  friend bool operator==(const System& a, const System& b) {
    return a.poset_ == b.poset_ && a.carriers_ == b.carriers_ && a.succ_ == b.succ_;
  }

 private:
  void check_state(State s) const;

  IndexPoset poset_;
  std::vector<std::vector<std::string>> carriers_;
  std::vector<std::size_t> offsets_;
  // succ_[later * n + earlier][e] : bits over carrier(later).  Empty unless
  // earlier <= later.
  std::vector<std::vector<Bits>> succ_;
};

/// Embedding and projection tables.  emb(i, i') : carrier(i) -> carrier(i')
/// for i <= i', proj(i', i) : carrier(i') -> carrier(i).
class EpData {
 public:
  EpData() = default;
  explicit EpData(std::size_t index_count)
      : n_(index_count), emb_(index_count * index_count), proj_(index_count * index_count) {}

  const std::vector<std::size_t>& emb(Index from, Index to) const { return emb_.at(from * n_ + to); }
  const std::vector<std::size_t>& proj(Index from, Index to) const { return proj_.at(from * n_ + to); }
  std::vector<std::size_t>& emb(Index from, Index to) { return emb_.at(from * n_ + to); }
  std::vector<std::size_t>& proj(Index from, Index to) { return proj_.at(from * n_ + to); }

  friend bool operator==(const EpData&, const EpData&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<std::size_t>> emb_;
  std::vector<std::vector<std::size_t>> proj_;
};

struct FactorSystem {
  std::string name;
  System sys;
  EpData ep;

  const IndexPoset& poset() const noexcept { return sys.poset(); }
  State emb(State a, Index to) const { return {to, ep.emb(a.index, to).at(a.elem)}; }
  State proj(State a, Index to) const { return {to, ep.proj(a.index, to).at(a.elem)}; }

  friend bool operator==(const FactorSystem& a, const FactorSystem& b) {
    return a.name == b.name && a.sys == b.sys && a.ep == b.ep;
  }
};

/// a # b: some c at an index above both has c ~> a and c ~> b.
bool consistent(const System& sys, State a, State b);

// Law validators.  Each returns true when the law holds; on failure the
// optional witness receives the first counterexample found.
bool check_system(const System& sys, std::string* witness = nullptr);
bool check_fun(const System& sys, std::string* witness = nullptr);
bool check_prefactor(const System& sys, std::string* witness = nullptr);
bool check_stable(const System& sys, std::string* witness = nullptr);
bool check_ep_total(const FactorSystem& fs, std::string* witness = nullptr);
bool check_emb_family(const FactorSystem& fs, std::string* witness = nullptr);
bool check_proj_family(const FactorSystem& fs, std::string* witness = nullptr);
bool check_ep_pair(const FactorSystem& fs, std::string* witness = nullptr);
bool check_direct(const FactorSystem& fs, std::string* witness = nullptr);
bool check_inverse(const FactorSystem& fs, std::string* witness = nullptr);

/// Prefactor, both families coherent, and the ep-pair law.
bool is_factor_system(const FactorSystem& fs, std::string* witness = nullptr);

struct HomomorphismReport {
  bool homomorphism = false;
  bool strong = false;
  std::string witness;
};

/// Homomorphism with identity index map.  `maps[k][e]` is the image of
/// element e of from.carrier(k) in to.carrier(k).
HomomorphismReport check_homomorphism(const FactorSystem& from, const FactorSystem& to,
                                      const std::vector<std::vector<std::size_t>>& maps);

}  // namespace fls
