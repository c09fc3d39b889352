#include "doctest.h"

#include "fls/error.hpp"
#include "fls/fixtures.hpp"
#include "fls/funspace.hpp"
#include "support.hpp"

using namespace fls;
using namespace fls::fixtures;
using fls::testing::Kind;
using fls::testing::Rng;

namespace {

// All tables dom -> cod in odometer order (last position fastest), kept
// when #-preserving according to the oracle.
std::vector<Table> oracle_tables(const System& m, Index i, const System& n, Index j) {
  const std::size_t ds = m.carrier_size(i), cs = n.carrier_size(j);
  std::vector<Table> out;
  Table t(ds, 0);
  while (true) {
    bool ok = true;
    for (std::size_t a = 0; a < ds && ok; ++a)
      for (std::size_t b = 0; b < ds && ok; ++b)
        if (fls::testing::oracle_consistent(m, {i, a}, {i, b}) &&
            !fls::testing::oracle_consistent(n, {j, t[a]}, {j, t[b]}))
          ok = false;
    if (ok) out.push_back(t);
    std::size_t p = ds;
    bool carry = true;
    while (carry && p > 0) {
      --p;
      carry = ++t[p] == cs;
      if (carry) t[p] = 0;
    }
    if (carry) break;
  }
  return out;
}

void check_against_oracle(const FactorSystem& m, const FactorSystem& n) {
  const FunctionSpace fs = build_funspace(m, n);
  const auto& poset = fs.indices.poset();
  for (Index k = 0; k < poset.size(); ++k) {
    const Index i = fs.indices.left_of(k), j = fs.indices.right_of(k);
    REQUIRE(fs.tables[k] == oracle_tables(m.sys, i, n.sys, j));
  }
  for (Index k2 = 0; k2 < poset.size(); ++k2)
    for (Index k = 0; k < poset.size(); ++k) {
      if (!poset.le(k, k2)) continue;
      const Index i = fs.indices.left_of(k), j = fs.indices.right_of(k);
      const Index i2 = fs.indices.left_of(k2), j2 = fs.indices.right_of(k2);
      for (std::size_t f2 = 0; f2 < fs.tables[k2].size(); ++f2)
        for (std::size_t f = 0; f < fs.tables[k].size(); ++f) {
          bool logical = true;
          for (std::size_t a2 = 0; a2 < m.sys.carrier_size(i2); ++a2)
            for (std::size_t a = 0; a < m.sys.carrier_size(i); ++a)
              if (m.sys.pred({i2, a2}, {i, a}) && !n.sys.pred({j2, fs.tables[k2][f2][a2]}, {j, fs.tables[k][f][a]}))
                logical = false;
          CHECK(fs.system.sys.pred({k2, f2}, {k, f}) == logical);
        }
      for (std::size_t f = 0; f < fs.tables[k].size(); ++f) {
        const Table& g = fs.tables[k2][fs.system.ep.emb(k, k2)[f]];
        for (std::size_t a2 = 0; a2 < g.size(); ++a2)
          CHECK(g[a2] == n.ep.emb(j, j2)[fs.tables[k][f][m.ep.proj(i2, i)[a2]]]);
      }
      for (std::size_t f2 = 0; f2 < fs.tables[k2].size(); ++f2) {
        const Table& g = fs.tables[k][fs.system.ep.proj(k2, k)[f2]];
        for (std::size_t a = 0; a < g.size(); ++a)
          CHECK(g[a] == n.ep.proj(j2, j)[fs.tables[k2][f2][m.ep.emb(i, i2)[a]]]);
      }
    }
}

void check_transfer(const FactorSystem& m, const FactorSystem& n) {
  CAPTURE(m.name);
  CAPTURE(n.name);
  const FunctionSpace fs = build_funspace(m, n);
  std::string why;
  CHECK_MESSAGE(is_factor_system(fs.system, &why), why);
  if (check_fun(n.sys)) CHECK(check_fun(fs.system.sys));
  if (check_stable(n.sys)) CHECK(check_stable(fs.system.sys));
  if (check_inverse(m) && check_direct(n)) CHECK(check_direct(fs.system));
  if (check_direct(m) && check_inverse(n)) CHECK(check_inverse(fs.system));
}

}  // namespace

TEST_CASE("[prop -> prop]") {
  auto fs = build_funspace(prop(), prop());
  const auto& poset = fs.indices.poset();
  REQUIRE(poset.size() == 1);
  CHECK(poset.id(0) == "p->p");
  CHECK(fs.system.sys.carrier_size(0) == 4);
  for (std::size_t f = 0; f < 4; ++f)
    for (std::size_t g = 0; g < 4; ++g) CHECK(fs.system.sys.pred({0, f}, {0, g}) == (f == g));
  CHECK(fs.system.sys.carrier(0)[1] == "{false:false,true:true}");
}

TEST_CASE("[nat_dir_2 -> prop]") {
  auto fs = build_funspace(nat_dir(2), prop());
  const auto& poset = fs.indices.poset();
  const Index lo = poset.find("1->p"), hi = poset.find("2->p");
  CHECK(fs.system.sys.carrier_size(lo) == 2);
  CHECK(fs.system.sys.carrier_size(hi) == 4);
  for (std::size_t f2 = 0; f2 < 4; ++f2)
    for (std::size_t f = 0; f < 2; ++f)
      CHECK(fs.system.sys.pred({hi, f2}, {lo, f}) == (fs.tables[hi][f2][0] == fs.tables[lo][f][0]));
}

TEST_CASE("[nat_chaos_2 -> prop] keeps only constants") {
  auto fs = build_funspace(nat_chaos(2), prop());
  const Index hi = fs.indices.poset().find("2->p");
  REQUIRE(fs.system.sys.carrier_size(hi) == 2);
  for (const auto& t : fs.tables[hi]) CHECK(t[0] == t[1]);
}

TEST_CASE("size cap") {
  try {
    build_funspace(nat_dir(4), nat_dir(4), 10);
    FAIL("expected SizeLimitExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SizeLimitExceeded);
  }
  CHECK_NOTHROW(build_funspace(nat_dir(2), nat_dir(2), 10));
}

TEST_CASE("construction agrees with a brute-force oracle") {
  for (const auto& m : {prop(), nat_dir(2), nat_inv(2), nat_chaos(2), nat_dir(3)})
    for (const auto& n : {prop(), nat_dir(2), nat_inv(3), nat_chaos(2)}) check_against_oracle(m, n);
  Rng rng(19);
  for (int round = 0; round < 15; ++round) {
    auto m = fls::testing::random_system(rng, fls::testing::random_poset(rng, 3), Kind(fls::testing::pick(rng, 0, 2)), 2);
    auto n = fls::testing::random_system(rng, fls::testing::random_poset(rng, 2), Kind(fls::testing::pick(rng, 0, 2)), 3);
    check_against_oracle(m, n);
  }
}

TEST_CASE("laws and polarity transfer on fixture pairs") {
  std::vector<FactorSystem> small{prop(), nat_dir(2), nat_inv(2), nat_chaos(2), nat_dir(3), nat_inv(3), nat_chaos(3)};
  for (const auto& m : small)
    for (const auto& n : small) check_transfer(m, n);
}

TEST_CASE("laws and polarity transfer on random systems") {
  Rng rng(23);
  for (int round = 0; round < 40; ++round) {
    auto m = fls::testing::random_system(rng, fls::testing::random_poset(rng, 3), Kind(fls::testing::pick(rng, 0, 2)), 2);
    auto n = fls::testing::random_system(rng, fls::testing::random_poset(rng, 3), Kind(fls::testing::pick(rng, 0, 2)), 3);
    if (fls::testing::coin(rng, 0.3)) n = fls::testing::doubled(n);
    check_transfer(m, n);
  }
}

TEST_CASE("nested function spaces") {
  auto inner = std::make_shared<const FactorSystem>(build_funspace(nat_dir(2), prop()).system);
  auto fs = build_funspace(inner, std::make_shared<const FactorSystem>(prop()));
  CHECK(fs.indices.poset().id(0) == "(1->p)->p");
  CHECK(is_factor_system(fs.system));
  CHECK(check_direct(fs.system));
}
