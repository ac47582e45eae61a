#include <doctest.h>

#include "oracles.hpp"
#include "spreadlab/actions.hpp"
#include "spreadlab/fpr.hpp"

using namespace spl;

namespace {

std::vector<oracle::P> raw(const std::vector<Perm>& v) {
  std::vector<oracle::P> out;
  for (const auto& p : v) out.push_back(p.images());
  return out;
}

std::uint64_t partition_total(std::size_t n, std::size_t l) {
  std::uint64_t c = 0;
  oracle::for_each_partition(n, l, [&](const std::vector<int>&) { ++c; });
  return c;
}

rational oracle_partition_fpr(const oracle::P& x, std::size_t l) {
  return rational(oracle::partition_fix(x, l), partition_total(x.size(), l));
}

}  // namespace

TEST_SUITE("fpr") {

TEST_CASE("table rows against brute force") {
  for (const std::string s : {"PSL2:11", "PSL2:13"}) {
    CAPTURE(s);
    auto spec = GroupSpec::parse(s);
    auto G = construct(spec);
    auto CI = ClassIndex::build(G, ClassMode::enumerate);
    auto H = maximal_overgroups(spec, "torus-minus")[0];
    auto T = fpr_table(CI, H);
    auto all = oracle::closure(raw(G.generators()));
    auto Hel = oracle::closure(raw(H.gens));
    // fixed cosets: Hg x = Hg iff g x g^-1 in H
    const std::size_t N = all.size() / Hel.size();
    for (const auto& row : T.rows) {
      const auto x = CI.classes()[row.class_id].rep.images();
      std::set<oracle::P> cls;
      for (const auto& g : all) cls.insert(oracle::mul(oracle::mul(oracle::inv(g), x), g));
      std::size_t meet = 0;
      for (const auto& h : Hel) meet += cls.count(h);
      CHECK(row.meet == meet);
      CHECK(row.class_size == cls.size());
      std::size_t fixed_g = 0;
      for (const auto& g : all) fixed_g += Hel.count(oracle::mul(oracle::mul(g, x), oracle::inv(g)));
      CHECK(row.fpr == rational(fixed_g / Hel.size(), N));
    }
  }
  auto spec = GroupSpec::parse("PSL2:11");
  auto CI = ClassIndex::build(construct(spec), ClassMode::enumerate);
  auto T = fpr_table(CI, maximal_overgroups(spec, "torus-minus")[0]);
  CHECK(T.row("o2-1").fpr == rational(7, 55));
  CHECK(T.row("o3-1").fpr == rational(1, 55));
  CHECK(T.subgroup_order == 12);
  auto s13 = GroupSpec::parse("PSL2:13");
  auto CI13 = ClassIndex::build(construct(s13), ClassMode::enumerate);
  CHECK(fpr_table(CI13, maximal_overgroups(s13, "torus-minus")[0]).row("o2-1").fpr == rational(1, 13));
}

TEST_CASE("A13 normalizer table") {
  auto spec = GroupSpec::parse("A:13");
  auto tabs = overgroup_tables(spec, "n-cycle");
  REQUIRE(tabs.tables.size() == 5);
  const auto& T = tabs.tables[0];
  CHECK(T.subgroup == "13:6");
  // 13:6 has 12 elements of order 13, 12 + 14 of orders 2 and 3
  auto el = oracle::closure(raw(maximal_overgroups(spec, "n-cycle")[0].gens));
  std::map<std::uint64_t, std::uint64_t> by_order;
  for (const auto& x : el) ++by_order[oracle::order(x)];
  bigint meet13 = 0, total = 0;
  for (const auto& r : T.rows) {
    if (r.order == 13) meet13 += r.meet;
    total += r.meet;
  }
  CHECK(meet13 == by_order[13]);
  CHECK(meet13 == 12);
  CHECK(total == by_order[2] + by_order[3] + by_order[13]);
  CHECK(T.prime_order_elements == total);
}

TEST_CASE("qhat and uniform spread certificates") {
  auto q13 = qhat(GroupSpec::parse("A:13"), "n-cycle", 2);
  CHECK(q13.value == rational(bigint(4230997), bigint(1108800)));
  CHECK(q13.overgroups.size() == 5);
  auto q17 = qhat(GroupSpec::parse("A:17"), "n-cycle", 2);
  CHECK(q17.value == rational(bigint(335848), bigint(42567525)));
  CHECK(q17.holds);
  auto u13 = uniform_spread_lower(GroupSpec::parse("PSL2:13"), "torus-minus");
  REQUIRE(u13.k_max.has_value());
  CHECK(*u13.k_max == 12);
  CHECK(*uniform_spread_lower(GroupSpec::parse("PSL2:11"), "torus-minus").k_max == 7);
  // larger c can only shrink the sum of terms below one
  auto a = qhat(GroupSpec::parse("PSL2:13"), "torus-minus", 2);
  auto b = qhat(GroupSpec::parse("PSL2:13"), "torus-minus", 3);
  CHECK(b.value <= a.value);
}

TEST_CASE("lemma bd bound") {
  CHECK(lemma_bd_bound({rational(1, 4), rational(1, 4)}, rational(1, 2), 2) == rational(1, 2));
  CHECK(lemma_bd_bound({rational(1, 3)}, rational(1, 5), 1) == rational(1, 3));
  auto C = lemma_bd_certificate("G", "s", {rational(1, 2), rational(1, 2)}, rational(1, 2), 3);
  CHECK_FALSE(C.holds);  // 1 / (1/4) = 4
  CHECK(C.value == 4);
  CHECK_THROWS(lemma_bd_bound({}, rational(0), 2));
}

TEST_CASE("partition fpr closed forms") {
  CHECK(closed_fpr_3cycle(9, 3) == rational(1, 28));
  CHECK(closed_fpr_3cycle(12, 4) == rational(1, 55));
  CHECK(closed_fpr_3cycle(6, 3) == 0);
  CHECK(closed_fpr_half_odd(10, 3, 2) == rational(1, 105));
  CHECK(closed_fpr_half_odd(10, 3, 1) == 0);
  CHECK(closed_fpr_3cycle(9, 3) == oracle_partition_fpr(oracle::cyc(9, {{1, 2, 3}}), 3));
  CHECK(closed_fpr_3cycle(12, 4) == oracle_partition_fpr(oracle::cyc(12, {{1, 2, 3}}), 4));
  CHECK(closed_fpr_half_odd(10, 3, 2) == oracle_partition_fpr(oracle::cyc(10, {{1, 2, 3}, {4, 5, 6}}), 5));
  CHECK(closed_fpr_half_odd(10, 5, 2) == oracle_partition_fpr(oracle::cyc(10, {{1, 2, 3, 4, 5}, {6, 7, 8, 9, 10}}), 5));
  for (std::size_t k = 1; k <= 4; ++k) {
    std::vector<std::vector<std::uint32_t>> cs;
    for (std::uint32_t i = 0; i < k; ++i) cs.push_back({2 * i + 1, 2 * i + 2});
    CAPTURE(k);
    CHECK(closed_fpr_half_even(8, k) == oracle_partition_fpr(oracle::cyc(8, cs), 4));
  }
  auto x = Perm::parse("(1,2,3)(4,5,6)", 12);
  CHECK(partition_fpr(x, 4) == oracle_partition_fpr(x.images(), 4));
  CHECK(partition_fpr(x, 6) == oracle_partition_fpr(x.images(), 6));
}

TEST_CASE("lemma bound rules") {
  auto b = fpr_lemma_bound(12, 6, 2, 1);
  CHECK(b.value == rational(1, 6));
  CHECK_FALSE(b.in_hypothesis);
  CHECK(fpr_lemma_bound(14, 7, 2, 2).value == rational(6, 196));
  CHECK(fpr_lemma_bound(9, 3, 3, 1).value == rational(1, 9));
  CHECK(fpr_lemma_bound(12, 2, 3, 2).value == rational(1, 8));
  CHECK(fpr_lemma_bound(12, 2, 3, 2).in_hypothesis);
  // every case at n = 12 checked against the oracle fpr
  auto rep = verify_fpr_lemma_bounds(12, 12);
  CHECK(rep.passes);
  for (const auto& c : rep.cases) {
    if (c.l > 4) continue;  // keep the oracle enumeration small
    std::vector<std::vector<std::uint32_t>> cs;
    std::uint32_t pt = 1;
    for (std::size_t i = 0; i < c.k; ++i) {
      std::vector<std::uint32_t> cyc;
      for (std::size_t j = 0; j < c.p; ++j) cyc.push_back(pt++);
      cs.push_back(cyc);
    }
    CAPTURE(c.l);
    CAPTURE(c.p);
    CAPTURE(c.k);
    CHECK(c.fpr == oracle_partition_fpr(oracle::cyc(12, cs), c.l));
  }
  for (const auto& c : check_closed_forms(8, 10)) CHECK(c.equal);
}

}
