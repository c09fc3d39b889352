#include "fls/funspace.hpp"

#include <cstdlib>
#include <map>

#include "fls/error.hpp"

namespace fls {

std::size_t default_size_cap() {
  if (const char* env = std::getenv("FLS_SIZE_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultSizeCap;
}

State FunctionSpace::apply(State f, State a) const {
  if (indices.left_of(f.index) != a.index) throw Error(ErrorKind::StateMismatch, "argument index does not match function index");
  return {indices.right_of(f.index), apply(f.index, f.elem, a.elem)};
}

std::string render_table(const std::vector<std::string>& dom_names,
                         const std::vector<std::string>& cod_names, const Table& table) {
  std::string out = "{";
  for (std::size_t a = 0; a < table.size(); ++a) {
    if (a) out += ',';
    out += dom_names[a];
    out += ':';
    out += cod_names[table[a]];
  }
  out += '}';
  return out;
}

namespace {

// Consistency within one carrier, tabulated.
std::vector<std::vector<char>> comp_matrix(const System& sys, Index k) {
  const std::size_t n = sys.carrier_size(k);
  std::vector<std::vector<char>> m(n, std::vector<char>(n, 0));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) m[a][b] = consistent(sys, {k, a}, {k, b});
  return m;
}

}  // namespace

FunctionSpace build_funspace(std::shared_ptr<const FactorSystem> dom,
                             std::shared_ptr<const FactorSystem> cod, std::size_t cap) {
  const System& ms = dom->sys;
  const System& ns = cod->sys;
  ProductPoset indices(dom->poset(), cod->poset());
  const IndexPoset& poset = indices.poset();
  const std::size_t n = poset.size();

  std::vector<std::vector<std::vector<char>>> dom_comp, cod_comp;
  for (Index i = 0; i < dom->poset().size(); ++i) dom_comp.push_back(comp_matrix(ms, i));
  for (Index j = 0; j < cod->poset().size(); ++j) cod_comp.push_back(comp_matrix(ns, j));

  std::vector<std::vector<Table>> tables(n);
  std::vector<std::map<Table, std::size_t>> lookup(n);
  std::vector<std::vector<std::string>> carriers(n);
  for (Index k = 0; k < n; ++k) {
    const Index i = indices.left_of(k);
    const Index j = indices.right_of(k);
    tables[k] = enumerate_tables(
        ms.carrier_size(i), ns.carrier_size(j),
        [&](std::size_t a, std::size_t b) { return dom_comp[i][a][b] != 0; },
        [&](std::size_t x, std::size_t y) { return cod_comp[j][x][y] != 0; }, cap);
    for (std::size_t f = 0; f < tables[k].size(); ++f) {
      lookup[k].emplace(tables[k][f], f);
      carriers[k].push_back(render_table(ms.carrier(i), ns.carrier(j), tables[k][f]));
    }
  }

  System sys(poset, carriers);
  for (Index k2 = 0; k2 < n; ++k2) {
    for (Index k = 0; k < n; ++k) {
      if (!poset.le(k, k2)) continue;
      const Index i = indices.left_of(k), j = indices.right_of(k);
      const Index i2 = indices.left_of(k2), j2 = indices.right_of(k2);
      std::vector<std::pair<std::size_t, std::size_t>> related;
      for (std::size_t a2 = 0; a2 < ms.carrier_size(i2); ++a2)
        for (std::size_t a = 0; a < ms.carrier_size(i); ++a)
          if (ms.pred({i2, a2}, {i, a})) related.emplace_back(a2, a);
      for (std::size_t f2 = 0; f2 < tables[k2].size(); ++f2) {
        const Table& later = tables[k2][f2];
        for (std::size_t f = 0; f < tables[k].size(); ++f) {
          const Table& earlier = tables[k][f];
          bool ok = true;
          for (auto [a2, a] : related) {
            if (!ns.pred({j2, later[a2]}, {j, earlier[a]})) {
              ok = false;
              break;
            }
          }
          if (ok) sys.set_pred({k2, f2}, {k, f}, true);
        }
      }
    }
  }

  EpData ep(n);
  for (Index k = 0; k < n; ++k) {
    for (Index k2 = 0; k2 < n; ++k2) {
      if (!poset.le(k, k2)) continue;
      const Index i = indices.left_of(k), j = indices.right_of(k);
      const Index i2 = indices.left_of(k2), j2 = indices.right_of(k2);
      auto& emb = ep.emb(k, k2);
      for (const Table& f : tables[k]) {
        Table g(ms.carrier_size(i2));
        for (std::size_t a2 = 0; a2 < g.size(); ++a2) {
          const std::size_t a = dom->ep.proj(i2, i)[a2];
          g[a2] = cod->ep.emb(j, j2)[f[a]];
        }
        auto it = lookup[k2].find(g);
        if (it == lookup[k2].end()) throw Error(ErrorKind::InvalidSystem, "emb of a function state leaves the carrier");
        emb.push_back(it->second);
      }
      auto& proj = ep.proj(k2, k);
      for (const Table& f2 : tables[k2]) {
        Table g(ms.carrier_size(i));
        for (std::size_t a = 0; a < g.size(); ++a) {
          const std::size_t a2 = dom->ep.emb(i, i2)[a];
          g[a] = cod->ep.proj(j2, j)[f2[a2]];
        }
        auto it = lookup[k].find(g);
        if (it == lookup[k].end()) throw Error(ErrorKind::InvalidSystem, "proj of a function state leaves the carrier");
        proj.push_back(it->second);
      }
    }
  }

  FactorSystem system{"[" + dom->name + "->" + cod->name + "]", std::move(sys), std::move(ep)};
  return FunctionSpace{std::move(dom), std::move(cod), std::move(indices), std::move(system), std::move(tables)};
}

FunctionSpace build_funspace(const FactorSystem& dom, const FactorSystem& cod, std::size_t cap) {
  return build_funspace(std::make_shared<const FactorSystem>(dom), std::make_shared<const FactorSystem>(cod), cap);
}

}  // namespace fls
