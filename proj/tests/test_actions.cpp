#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spreadlab/actions.hpp"

using namespace spl;

namespace {

std::vector<oracle::P> raw(const std::vector<Perm>& v) {
  std::vector<oracle::P> out;
  for (const auto& p : v) out.push_back(p.images());
  return out;
}

// H-orbits on the right cosets of H, computed from explicit element sets
Multiset coset_subdegrees(const std::vector<Perm>& G_gens, const std::vector<Perm>& H_gens) {
  auto G = oracle::closure(raw(G_gens));
  auto H = oracle::closure(raw(H_gens));
  auto coset_of = [&](const oracle::P& g) {
    oracle::P best = g;
    for (const auto& h : H) best = std::min(best, oracle::mul(h, g));
    return best;
  };
  std::set<oracle::P> cosets;
  for (const auto& g : G) cosets.insert(coset_of(g));
  std::set<oracle::P> done;
  std::map<std::uint64_t, std::uint64_t> lens;
  for (const auto& c : cosets) {
    if (done.count(c)) continue;
    std::set<oracle::P> orb;
    for (const auto& h : H) orb.insert(coset_of(oracle::mul(c, h)));
    done.insert(orb.begin(), orb.end());
    ++lens[orb.size()];
  }
  return Multiset(lens.begin(), lens.end());
}

Multiset sorted(Multiset m) {
  std::sort(m.begin(), m.end());
  return m;
}

}  // namespace

TEST_SUITE("actions") {

TEST_CASE("coset action degrees") {
  auto spec = GroupSpec::parse("PSL2:11");
  auto G = construct(spec);
  auto H = maximal_overgroups(spec, "torus-minus")[0];
  auto act = coset_action(G, H);
  CHECK(act.N == 55);
  CHECK(act.transitive);
  CHECK(act.point_stabilizer_order == 12);
  auto sz = GroupSpec::parse("Sz:8");
  auto Hs = maximal_overgroups(sz, "ovoid-torus")[0];
  CHECK(coset_action(construct(sz), Hs).N == 1456);
  auto a13 = GroupSpec::parse("A:13");
  CHECK_THROWS_AS(coset_action(construct(a13), maximal_overgroups(a13, "n-cycle")[0]), cap_exceeded);
}

TEST_CASE("action is a homomorphism") {
  auto spec = GroupSpec::parse("PSL2:13");
  auto G = construct(spec);
  auto act = coset_action(G, maximal_overgroups(spec, "torus-minus")[0]);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    auto a = G.random_element(rng), b = G.random_element(rng);
    for (std::size_t i = 0; i < act.N; i += 7) CHECK(act.image(act.image(i, a), b) == act.image(i, a * b));
  }
  for (std::size_t i = 0; i < act.N; ++i) CHECK(act.image(0, act.tree_element(i)) == i);
}

TEST_CASE("subdegrees against the coset oracle") {
  for (std::uint32_t q : {11u, 13u, 17u}) {
    CAPTURE(q);
    GroupSpec spec;
    spec.family = Family::PSL2;
    spec.d = 2;
    spec.q = q;
    auto G = construct(spec);
    auto H = maximal_overgroups(spec, "torus-minus")[0];
    auto act = coset_action(G, H);
    auto got = sorted(subdegrees(act));
    CHECK(got == coset_subdegrees(G.generators(), H.gens));
    // closed form omits the trivial suborbit
    auto want = subdegrees_l2(q);
    want.push_back({1, 1});
    CHECK(got == sorted(want));
    std::uint64_t reg = 0;
    for (auto [len, m] : got)
      if (len == to_u64(H.order)) reg += m;
    CHECK(regular_orbit_count(act) == reg);
    CHECK(base_two_probability(act) == rational(bigint(reg) * H.order, bigint(act.N)));
  }
}

TEST_CASE("cliques") {
  Graph k4(6);
  for (std::size_t u = 0; u < 4; ++u)
    for (std::size_t v = u + 1; v < 4; ++v) k4.add_edge(u, v);
  k4.add_edge(4, 5);
  auto c = has_clique(k4, 4);
  REQUIRE(c.has_value());
  CHECK(c->size() == 4);
  for (auto u : *c)
    for (auto v : *c)
      if (u != v) CHECK(k4.edge(u, v));
  CHECK_FALSE(has_clique(k4, 5).has_value());
  Graph empty(5);
  CHECK(has_clique(empty, 1).has_value());
  CHECK_FALSE(has_clique(empty, 2).has_value());
  CHECK(k4.edge_count() == 7);
  CHECK(k4.degree(0) == 3);
}

TEST_CASE("saxl graph for PSL2(11)") {
  auto spec = GroupSpec::parse("PSL2:11");
  auto act = coset_action(construct(spec), maximal_overgroups(spec, "torus-minus")[0]);
  auto g = saxl_graph(act);
  CHECK(g.size() == 55);
  // the neighbours of point 0 are the points in regular suborbits
  CHECK(g.degree(0) == regular_orbit_count(act) * 12);
  CHECK(has_clique(g, 3).has_value());
}

TEST_CASE("uniform partitions") {
  CHECK(uniform_partition_count(6, 3) == 15);
  CHECK(uniform_partition_count(9, 3) == 280);
  CHECK(uniform_partition_count(10, 5) == 945);
  CHECK(uniform_partition_count(12, 4) == 15400);
  std::size_t seen = 0;
  std::set<std::vector<std::uint8_t>> uniq;
  for_each_uniform_partition(9, 3, [&](const std::vector<std::uint8_t>& p) {
    ++seen;
    uniq.insert(p);
  });
  CHECK(seen == 280);
  CHECK(uniq.size() == 280);
  CHECK(enumerate_uniform_partitions(6, 2).size() == 10);
  CHECK_THROWS_AS(enumerate_uniform_partitions(12, 6, 100), cap_exceeded);
  CHECK_THROWS(uniform_partition_count(7, 2));
}

TEST_CASE("partition fix counts against the oracle") {
  std::mt19937_64 rng(11);
  for (auto [n, l] : std::vector<std::pair<std::size_t, std::size_t>>{{6, 3}, {6, 2}, {8, 4}, {8, 2}, {9, 3}}) {
    for (int t = 0; t < 25; ++t) {
      oracle::P x = oracle::ident(n);
      std::shuffle(x.begin(), x.end(), rng);
      CHECK(partition_fix_count(Perm(x), n, l) == oracle::partition_fix(x, l));
    }
  }
  // an involution on pairings of 6 points
  auto x = oracle::cyc(6, {{1, 2}, {3, 4}});
  CHECK(partition_fix_count(Perm(x), 6, 3) == oracle::partition_fix(x, 3));
  auto t3 = oracle::cyc(9, {{1, 2, 3}});
  CHECK(partition_fix_count(Perm(t3), 9, 3) == 10);
  CHECK(oracle::partition_fix(t3, 3) == 10);
}

TEST_CASE("partition and subset actions") {
  auto S6 = construct(GroupSpec::parse("S:6"));
  auto pa = partition_action(S6, 3);
  CHECK(pa.N == 15);
  CHECK(pa.point_stabilizer_order == 48);
  auto sa = subset_action(S6, 2);
  CHECK(sa.N == 15);
  CHECK(sorted(subdegrees(sa)) == Multiset{{1, 1}, {6, 1}, {8, 1}});
}

}
