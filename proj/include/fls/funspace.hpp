#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "fls/factor_core.hpp"

namespace fls {

/// Carrier bound used when FLS_SIZE_CAP is not set.
inline constexpr std::size_t kDefaultSizeCap = 1'000'000;

/// FLS_SIZE_CAP if set to a positive integer, kDefaultSizeCap otherwise.
std::size_t default_size_cap();

using Table = std::vector<std::size_t>;

/// The function-space factor system [M -> N] together with the tables that
/// its carrier elements stand for.
struct FunctionSpace {
  std::shared_ptr<const FactorSystem> dom;
  std::shared_ptr<const FactorSystem> cod;
  ProductPoset indices;
  FactorSystem system;
  /// tables[k][f][a]: image in cod carrier(right_of(k)) of element a of dom
  /// carrier(left_of(k)) under function state f at index k.
  std::vector<std::vector<Table>> tables;

  std::size_t apply(Index k, std::size_t f, std::size_t a) const { return tables[k][f][a]; }
  State apply(State f, State a) const;
};

/// Enumerates every #-preserving table per index (lexicographic order, first
/// domain element most significant), relates them by the logical relation
/// and equips them with emb f = emb o f o proj and proj f = proj o f o emb.
/// Throws SizeLimitExceeded when some carrier would hold more than `cap`
/// tables.
FunctionSpace build_funspace(std::shared_ptr<const FactorSystem> dom,
                             std::shared_ptr<const FactorSystem> cod,
                             std::size_t cap = default_size_cap());

FunctionSpace build_funspace(const FactorSystem& dom, const FactorSystem& cod,
                             std::size_t cap = default_size_cap());

/// Renders a table as "{a:b,c:d}" using element names.
std::string render_table(const std::vector<std::string>& dom_names,
                         const std::vector<std::string>& cod_names, const Table& table);

/// Enumerates the #-preserving tables from `dom_size` elements into
/// `cod_size` elements, in the canonical order.  `dom_comp(a, b)` and
/// `cod_comp(x, y)` are consistency at a single index.
template <class DomComp, class CodComp>
std::vector<Table> enumerate_tables(std::size_t dom_size, std::size_t cod_size, DomComp&& dom_comp,
                                    CodComp&& cod_comp, std::size_t cap);

}  // namespace fls

#include "fls/detail/enumerate_tables.hpp"
