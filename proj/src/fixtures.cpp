#include "fls/fixtures.hpp"

#include <algorithm>
#include <charconv>

#include "fls/error.hpp"

namespace fls::fixtures {

FactorSystem nat(NatVariant variant, int n) {
  if (n < 1) throw Error(ErrorKind::InvalidSystem, "nat fixture needs N >= 1");
  IndexPoset poset = IndexPoset::chain(1, n);
  std::vector<std::vector<std::string>> carriers;
  for (int i = 1; i <= n; ++i) {
    std::vector<std::string> elems;
    for (int m = 0; m < i; ++m) elems.push_back(std::to_string(m));
    carriers.push_back(std::move(elems));
  }
  System sys(poset, std::move(carriers));
  EpData ep(poset.size());
  // Index position k holds stage i = k + 1, whose carrier is {0..k}.
  for (Index lo = 0; lo < poset.size(); ++lo) {
    for (Index hi = lo; hi < poset.size(); ++hi) {
      auto& emb = ep.emb(lo, hi);
      auto& proj = ep.proj(hi, lo);
      for (std::size_t m = 0; m <= lo; ++m) emb.push_back(m);
      for (std::size_t m = 0; m <= hi; ++m) proj.push_back(std::min(m, lo));
      for (std::size_t later = 0; later <= hi; ++later) {
        for (std::size_t earlier = 0; earlier <= lo; ++earlier) {
          bool related = false;
          switch (variant) {
            case NatVariant::Direct: related = later == earlier; break;
            case NatVariant::Inverse: related = std::min(later, lo) == earlier; break;
            case NatVariant::Chaos: related = true; break;
          }
          if (related) sys.set_pred({hi, later}, {lo, earlier}, true);
        }
      }
    }
  }
  const char* tag = variant == NatVariant::Direct ? "nat_dir_" : variant == NatVariant::Inverse ? "nat_inv_" : "nat_chaos_";
  return FactorSystem{tag + std::to_string(n), std::move(sys), std::move(ep)};
}

FactorSystem prop() {
  IndexPoset poset = IndexPoset::singleton("p");
  System sys(poset, {{"false", "true"}});
  sys.add_diagonal();
  EpData ep(1);
  ep.emb(0, 0) = {0, 1};
  ep.proj(0, 0) = {0, 1};
  return FactorSystem{"prop", std::move(sys), std::move(ep)};
}

FactorSystem by_name(const std::string& name) {
  if (name == "prop") return prop();
  struct Prefix {
    const char* text;
    NatVariant variant;
  };
  for (Prefix p : {Prefix{"nat_dir_", NatVariant::Direct}, Prefix{"nat_inv_", NatVariant::Inverse},
                   Prefix{"nat_chaos_", NatVariant::Chaos}}) {
    const std::string prefix = p.text;
    if (name.rfind(prefix, 0) != 0) continue;
    int n = 0;
    const char* first = name.data() + prefix.size();
    const char* last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, n);
    if (ec == std::errc() && ptr == last && n >= 1) return nat(p.variant, n);
  }
  throw Error(ErrorKind::ParseError, "unknown fixture '" + name + "'");
}

}  // namespace fls::fixtures
