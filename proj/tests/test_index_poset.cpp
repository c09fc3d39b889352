#include "doctest.h"

#include "fls/error.hpp"
#include "fls/index_poset.hpp"
#include "support.hpp"

using namespace fls;
using fls::testing::Rng;

namespace {

IndexSet ids_of(const IndexPoset& p, std::initializer_list<const char*> names) {
  IndexSet s(p.size());
  for (auto n : names) s.insert(p.find(n));
  return s;
}

std::vector<IndexSet> all_subsets(std::size_t n) {
  std::vector<IndexSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    IndexSet s(n);
    for (std::size_t b = 0; b < n; ++b)
      if (mask >> b & 1) s.insert(b);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("closure builds chains, singletons and rejects undirected sets") {
  auto chain = IndexPoset::closure({"1", "2", "3"}, {{"1", "2"}, {"2", "3"}});
  CHECK(chain.le(chain.find("1"), chain.find("3")));
  CHECK(chain.id(chain.top()) == "3");
  CHECK(chain.top_class().size() == 1);

  auto one = IndexPoset::closure({"1"}, {});
  CHECK(one.size() == 1);
  CHECK(one.le(0, 0));

  try {
    IndexPoset::closure({"a", "b"}, {});
    FAIL("expected NotDirected");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotDirected);
  }
  CHECK_THROWS_AS(IndexPoset::closure({}, {}), Error);
  try {
    IndexPoset::closure({"a"}, {{"a", "z"}});
    FAIL("expected UnknownIndex");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownIndex);
  }
}

TEST_CASE("preorders keep equivalent ids apart") {
  auto p = IndexPoset::closure({"a", "b"}, {{"a", "b"}, {"b", "a"}});
  CHECK(p.size() == 2);
  CHECK(p.top_class().size() == 2);
  CHECK(in_filter(p, IndexSet::all(2)));
  CHECK_FALSE(in_filter(p, ids_of(p, {"a"})));
}

TEST_CASE("up sets") {
  auto chain = IndexPoset::chain(1, 3);
  CHECK(up_set(chain, chain.find("2")) == ids_of(chain, {"2", "3"}));
  auto p = IndexPoset::singleton("p");
  CHECK(up_set(p, 0) == IndexSet::all(1));
  ProductPoset prod(IndexPoset::chain(1, 2), p);
  const auto& pp = prod.poset();
  CHECK(up_set(pp, pp.find("1->p")) == ids_of(pp, {"1->p", "2->p"}));
  CHECK_THROWS_AS(up_set(chain, 7), Error);
}

TEST_CASE("cofinality and filter membership on a chain") {
  auto c = IndexPoset::chain(1, 3);
  CHECK(is_cofinal(c, ids_of(c, {"3"})));
  CHECK_FALSE(is_cofinal(c, ids_of(c, {"1", "2"})));
  CHECK_FALSE(is_cofinal(c, IndexSet(3)));
  CHECK(in_filter(c, ids_of(c, {"2", "3"})));
  CHECK(in_filter(c, ids_of(c, {"1", "3"})));
  CHECK_FALSE(in_filter(c, ids_of(c, {"1", "2"})));
}

TEST_CASE("image of index sets") {
  ProductPoset prod(IndexPoset::chain(1, 2), IndexPoset::singleton("p"));
  const auto& pp = prod.poset();
  const auto& l = prod.left();
  CHECK(image(prod, IndexSet::all(pp.size()), ids_of(l, {"2"})) == IndexSet::all(1));
  CHECK(image(prod, ids_of(pp, {"1->p"}), ids_of(l, {"2"})) == IndexSet(1));

  ProductPoset prod2(IndexPoset::chain(1, 2), IndexPoset::closure({"q", "r"}, {{"q", "r"}}));
  const auto& pp2 = prod2.poset();
  CHECK(image(prod2, ids_of(pp2, {"2->q"}), IndexSet::all(2)) == ids_of(prod2.right(), {"q"}));
}

TEST_CASE("product ids parenthesise nested products") {
  CHECK(product_id("1", "p") == "1->p");
  CHECK(product_id("1->p", "2") == "(1->p)->2");
  CHECK(product_id("1", "2->p") == "1->2->p");
}

TEST_CASE("filter laws on random directed preorders") {
  Rng rng(11);
  for (int round = 0; round < 200; ++round) {
    const IndexPoset p = fls::testing::random_poset(rng, 5);
    const auto tops = fls::testing::oracle_tops(p);
    REQUIRE_FALSE(tops.empty());
    CHECK(tops == p.top_class());
    const auto subsets = all_subsets(p.size());
    for (const auto& h : subsets) {
      const bool in = in_filter(p, h);
      CHECK(in == fls::testing::oracle_in_filter(p, h));
      if (in) CHECK(is_cofinal(p, h));
      for (const auto& g : subsets) {
        if (in && h.subset_of(g)) CHECK(in_filter(p, g));
        if (in && in_filter(p, g)) CHECK(in_filter(p, h.intersect(g)));
      }
    }
    for (Index i = 0; i < p.size(); ++i) CHECK(in_filter(p, up_set(p, i)));
    CHECK_FALSE(in_filter(p, IndexSet(p.size())));
  }
}

TEST_CASE("condition D against every filter set and every left filter set") {
  Rng rng(5);
  CHECK(check_condition_D(IndexPoset::chain(1, 2), IndexPoset::chain(1, 2)));
  CHECK(check_condition_D(IndexPoset::singleton("p"), IndexPoset::singleton("q")));
  for (int round = 0; round < 40; ++round) {
    const IndexPoset l = fls::testing::random_poset(rng, 3);
    const IndexPoset r = fls::testing::random_poset(rng, 3);
    ProductPoset prod(l, r);
    bool oracle = true;
    const auto hs = all_subsets(prod.poset().size());
    const auto ls = all_subsets(l.size());
    for (const auto& h : hs) {
      if (!fls::testing::oracle_in_filter(prod.poset(), h)) continue;
      for (const auto& li : ls)
        if (fls::testing::oracle_in_filter(l, li) && !fls::testing::oracle_in_filter(r, image(prod, h, li)))
          oracle = false;
    }
    CHECK(oracle);
    CHECK(check_condition_D(l, r) == oracle);
  }
}
