#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "mor/rng.hpp"
#include "mor/unitriangular.hpp"

using namespace mor;

namespace {

UnitriangularGroup ut(u64 p, unsigned n) { return UnitriangularGroup(Field(p), n); }

UnitriangularGroup ut4_gamma2(unsigned n) {
  return UnitriangularGroup(Field(2, {1, 1, 1}), n);
}

// dense n x n multiplication over the field, diagonal included
std::vector<FieldElement> to_dense(const UnitriangularGroup& G, const UTMatrix& x) {
  unsigned n = G.n();
  const Field& f = G.field();
  std::vector<FieldElement> d(static_cast<std::size_t>(n) * n, f.zero());
  for (unsigned i = 1; i <= n; ++i) d[(i - 1) * n + (i - 1)] = f.one();
  for (unsigned i = 1; i < n; ++i)
    for (unsigned j = i + 1; j <= n; ++j) d[(i - 1) * n + (j - 1)] = G.entry(x, i, j);
  return d;
}

std::vector<FieldElement> dense_mul(const UnitriangularGroup& G,
                                    const std::vector<FieldElement>& a,
                                    const std::vector<FieldElement>& b) {
  unsigned n = G.n();
  const Field& f = G.field();
  std::vector<FieldElement> c(static_cast<std::size_t>(n) * n, f.zero());
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      FieldElement acc = f.zero();
      for (unsigned k = 0; k < n; ++k)
        acc = f.add(acc, f.mul(a[i * n + k], b[k * n + j]));
      c[i * n + j] = acc;
    }
  return c;
}

// exhaustive element list via all exponent vectors
std::vector<UTMatrix> all_elements(const UnitriangularGroup& G) {
  std::size_t s = G.gen_count();
  u64 p = G.field().p();
  std::vector<UTMatrix> out;
  CollectedWord w{std::vector<u64>(s, 0)};
  while (true) {
    out.push_back(G.expand(w));
    std::size_t i = 0;
    while (i < s && ++w.exps[i] == p) w.exps[i++] = 0;
    if (i == s) break;
  }
  return out;
}

} // namespace

TEST_CASE("elementary matrices at one slot multiply by adding entries") {
  UnitriangularGroup G = ut(1297, 4);
  const Field& f = G.field();
  DeterministicRng rng(5);
  for (int i = 0; i < 1000; ++i) {
    FieldElement a = rng.element(f);
    FieldElement b = rng.element(f);
    CHECK(G.mul(G.elementary(1, 3, a), G.elementary(1, 3, b)) ==
          G.elementary(1, 3, f.add(a, b)));
  }
}

TEST_CASE("identity is neutral and matches the dense oracle") {
  UnitriangularGroup G = ut(2, 3);
  DeterministicRng rng(6);
  for (int i = 0; i < 200; ++i) {
    UTMatrix x = G.random(rng);
    UTMatrix y = G.random(rng);
    CHECK(G.mul(G.identity(), x) == x);
    CHECK(G.mul(x, G.identity()) == x);
    CHECK(to_dense(G, G.mul(x, y)) == dense_mul(G, to_dense(G, x), to_dense(G, y)));
  }
}

TEST_CASE("products match the dense oracle at larger sizes") {
  for (auto G : {ut(1297, 4), ut(7, 5), ut4_gamma2(3)}) {
    DeterministicRng rng(8);
    for (int i = 0; i < 100; ++i) {
      UTMatrix x = G.random(rng);
      UTMatrix y = G.random(rng);
      CHECK(to_dense(G, G.mul(x, y)) == dense_mul(G, to_dense(G, x), to_dense(G, y)));
    }
  }
}

TEST_CASE("inverses") {
  UnitriangularGroup G = ut(1297, 4);
  const Field& f = G.field();
  FieldElement a = f.from_uint(523);
  CHECK(G.inv(G.elementary(1, 2, a)) == G.elementary(1, 2, f.neg(a)));
  CHECK(G.inv(G.identity()) == G.identity());
  DeterministicRng rng(9);
  for (int i = 0; i < 500; ++i) {
    UTMatrix x = G.random(rng);
    CHECK(G.is_identity(G.mul(x, G.inv(x))));
    CHECK(G.is_identity(G.mul(G.inv(x), x)));
  }
}

TEST_CASE("powers") {
  UnitriangularGroup G = ut(5, 4);
  DeterministicRng rng(10);
  UTMatrix x = G.random(rng);
  CHECK(G.pow(x, 0) == G.identity());
  CHECK(G.pow(x, 1) == x);
  UTMatrix by_mul = G.identity();
  for (int i = 0; i < 5; ++i) by_mul = G.mul(by_mul, x);
  CHECK(G.pow(x, 5) == by_mul);
}

TEST_CASE("superdiagonal of g^m scales linearly") {
  UnitriangularGroup G = ut(1297, 4);
  const Field& f = G.field();
  DeterministicRng rng(11);
  UTMatrix g = G.random(rng);
  u64 m = 65;
  UTMatrix gm = G.pow(g, m);
  for (unsigned i = 1; i < 4; ++i)
    CHECK(G.entry(gm, i, i + 1) == f.scalar_mul(m, G.entry(g, i, i + 1)));
}

TEST_CASE("commutator identities for elementary matrices") {
  UnitriangularGroup G = ut(1297, 4);
  const Field& f = G.field();
  DeterministicRng rng(12);
  for (int t = 0; t < 1000; ++t) {
    FieldElement a = rng.element(f);
    FieldElement b = rng.element(f);
    FieldElement ab = f.mul(a, b);
    // shared index j = k
    CHECK(G.commutator(G.elementary(1, 2, a), G.elementary(2, 3, b)) ==
          G.elementary(1, 3, ab));
    // shared index i = l
    CHECK(G.commutator(G.elementary(2, 3, a), G.elementary(1, 2, b)) ==
          G.elementary(1, 3, f.neg(ab)));
    // disjoint indices
    CHECK(G.is_identity(G.commutator(G.elementary(1, 2, a), G.elementary(3, 4, b))));
  }
  UTMatrix x = G.random(rng);
  CHECK(G.is_identity(G.commutator(x, x)));
}

TEST_CASE("group axioms on random triples") {
  UnitriangularGroup G = ut(3, 4);
  DeterministicRng rng(13);
  for (int i = 0; i < 1000; ++i) {
    UTMatrix x = G.random(rng);
    UTMatrix y = G.random(rng);
    UTMatrix z = G.random(rng);
    REQUIRE(G.mul(G.mul(x, y), z) == G.mul(x, G.mul(y, z)));
  }
}

TEST_CASE("canonical generator sequence") {
  UnitriangularGroup G = ut(1297, 4);
  auto gens = G.generators();
  REQUIRE(gens.size() == 6);
  // distance-major order: e12, e23, e34, e13, e24, e14
  const Field& f = G.field();
  CHECK(gens[0].second == G.elementary(1, 2, f.one()));
  CHECK(gens[1].second == G.elementary(2, 3, f.one()));
  CHECK(gens[2].second == G.elementary(3, 4, f.one()));
  CHECK(gens[3].second == G.elementary(1, 3, f.one()));
  CHECK(gens[4].second == G.elementary(2, 4, f.one()));
  CHECK(gens[5].second == G.elementary(1, 4, f.one()));
  for (std::size_t s = 0; s < gens.size(); ++s) {
    CHECK(G.gen_linear(gens[s].first) == s);
    CHECK(G.gen_at(s) == gens[s].first);
  }
}

TEST_CASE("generator counts") {
  CHECK(ut(7, 2).generators().size() == 1);
  CHECK(ut4_gamma2(2).generators().size() == 2);
  CHECK(ut4_gamma2(3).generators().size() == 6);
  UnitriangularGroup G = ut4_gamma2(3);
  CHECK(G.generators()[1].second == G.elementary(1, 2, G.field().basis(2)));
}

TEST_CASE("collection round trips") {
  UnitriangularGroup G = ut(1297, 4);
  const Field& f = G.field();

  CollectedWord unit{{1, 0, 0, 0, 0, 0}};
  CHECK(G.expand(unit) == G.elementary(1, 2, f.one()));
  CHECK(G.collect(G.elementary(1, 2, f.one())) == unit);

  CollectedWord h_word{{83, 462, 1202, 1209, 793, 152}};
  CHECK(G.collect(G.expand(h_word)) == h_word);
  UTMatrix h = G.expand(h_word);
  CHECK(G.entry(h, 1, 2) == f.from_uint(83));
  CHECK(G.entry(h, 2, 3) == f.from_uint(462));
  CHECK(G.entry(h, 3, 4) == f.from_uint(1202));

  CHECK(G.expand(CollectedWord{{0, 0, 0, 0, 0, 0}}) == G.identity());

  for (auto H : {ut(3, 4), ut4_gamma2(3), ut(5, 5)}) {
    DeterministicRng rng(14);
    for (int i = 0; i < 1000; ++i) {
      UTMatrix x = H.random(rng);
      REQUIRE(H.expand(H.collect(x)) == x);
    }
  }
}

TEST_CASE("expand rejects out-of-range exponents") {
  UnitriangularGroup G = ut(5, 3);
  CHECK_THROWS_AS(G.expand(CollectedWord{{5, 0, 0}}), ExponentOutOfRange);
  CHECK_THROWS_AS(G.expand(CollectedWord{{0, 0}}), ParamMismatch);
}

TEST_CASE("center detection") {
  UnitriangularGroup G = ut(1297, 4);
  const Field& f = G.field();
  CHECK(G.is_central(G.elementary(1, 4, f.from_uint(321))));
  CHECK(G.is_central(G.identity()));
  CHECK_FALSE(G.is_central(G.elementary(1, 2, f.one())));
}

TEST_CASE("central elements commute with everything") {
  UnitriangularGroup S = ut(2, 3);
  auto elems = all_elements(S);
  for (const UTMatrix& x : elems)
    for (const UTMatrix& y : elems)
      if (S.is_central(x)) REQUIRE(S.mul(x, y) == S.mul(y, x));

  UnitriangularGroup G = ut(1297, 4);
  DeterministicRng rng(15);
  for (int i = 0; i < 200; ++i) {
    UTMatrix z = G.elementary(1, 4, rng.element(G.field()));
    UTMatrix y = G.random(rng);
    CHECK(G.mul(z, y) == G.mul(y, z));
  }
}

TEST_CASE("group order by exhaustive enumeration") {
  struct Case {
    u64 p;
    unsigned n;
    std::size_t order;
  };
  for (Case c : {Case{3, 2, 3}, Case{2, 3, 8}, Case{3, 3, 27}, Case{2, 4, 64}}) {
    UnitriangularGroup G = ut(c.p, c.n);
    auto elems = all_elements(G);
    std::set<std::vector<std::vector<u64>>> distinct;
    for (const UTMatrix& x : elems) {
      std::vector<std::vector<u64>> key;
      for (const FieldElement& e : x.entries) key.push_back(e.coeffs);
      distinct.insert(key);
    }
    CHECK(distinct.size() == c.order);
  }
}

TEST_CASE("entry indexing is row-major") {
  UnitriangularGroup G = ut(7, 4);
  CHECK(G.entry_index(1, 2) == 0);
  CHECK(G.entry_index(1, 3) == 1);
  CHECK(G.entry_index(1, 4) == 2);
  CHECK(G.entry_index(2, 3) == 3);
  CHECK(G.entry_index(2, 4) == 4);
  CHECK(G.entry_index(3, 4) == 5);
  CHECK_THROWS_AS(G.entry_index(2, 2), InvalidParams);
  CHECK_THROWS_AS(G.entry_index(1, 5), InvalidParams);
}

TEST_CASE("dimension below 2 is rejected") {
  CHECK_THROWS_AS(ut(7, 1), InvalidParams);
  CHECK_THROWS_AS(ut(7, 0), InvalidParams);
}
