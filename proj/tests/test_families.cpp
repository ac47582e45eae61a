#include <doctest.h>

#include "oracles.hpp"
#include "spreadlab/families.hpp"

using namespace spl;

namespace {

std::vector<oracle::P> raw(const std::vector<Perm>& v) {
  std::vector<oracle::P> out;
  for (const auto& p : v) out.push_back(p.images());
  return out;
}

// P_2 by brute force: {s, s^g} totally dominates iff A and A^g cover G \ 1,
// where A = {x : <x,s> = G}
rational brute_p2(const GroupSpec& spec, const std::string& label) {
  auto G = construct(spec);
  auto all = oracle::closure(raw(G.generators()));
  const auto s = distinguished_class(spec, label).rep.images();
  std::set<oracle::P> A;
  for (const auto& x : all)
    if (oracle::closure({x, s}, all.size()).size() == all.size()) A.insert(x);
  std::map<oracle::P, bool> by_conj;  // z -> TDS
  for (const auto& g : all) {
    oracle::P z = oracle::mul(oracle::mul(oracle::inv(g), s), g);
    if (by_conj.count(z)) continue;
    bool ok = true;
    for (const auto& x : all) {
      if (x == oracle::ident(x.size()) || A.count(x)) continue;
      // <x, s^g> = G iff <g x g^-1, s> = G
      if (!A.count(oracle::mul(oracle::mul(g, x), oracle::inv(g)))) {
        ok = false;
        break;
      }
    }
    by_conj[z] = ok;
  }
  std::size_t good = 0;
  for (const auto& [z, ok] : by_conj) good += ok;
  return rational(good, by_conj.size());
}

}  // namespace

TEST_SUITE("families") {

TEST_CASE("spec parsing") {
  CHECK(GroupSpec::parse("S:7").n == 7);
  CHECK(GroupSpec::parse("PSL2:11").q == 11);
  auto f = GroupSpec::parse("Frob:7:1:3");
  CHECK((f.p == 7 && f.f == 1 && f.k == 3));
  CHECK(GroupSpec::parse("PSL:3:4").str() == "PSL:3:4");
  CHECK_THROWS(GroupSpec::parse("PSL2:12"));
  CHECK_THROWS(GroupSpec::parse("Frob:7:1:4"));  // 4 does not divide 6
  CHECK_THROWS(GroupSpec::parse("Sz:4"));
  CHECK_THROWS(GroupSpec::parse("X:3"));
}

TEST_CASE("orders match the closure") {
  for (const std::string s : {"S:5", "A:6", "PSL2:7", "PSL2:8", "PSL2:11", "PGL2:7", "Frob:7:1:6", "Frob:3:2:8", "PSL:3:2",
                              "PGammaL:2:8"}) {
    auto spec = GroupSpec::parse(s);
    auto G = construct(spec);
    CHECK(G.order() == family_order(spec));
    CHECK(oracle::closure(raw(G.generators())).size() == to_u64(family_order(spec)));
  }
  CHECK(family_order(GroupSpec::parse("Sz:8")) == 29120);
  CHECK(family_order(GroupSpec::parse("PSL:3:4")) == 20160);
  CHECK(family_order(GroupSpec::parse("M23")) == 10200960);
}

TEST_CASE("distinguished classes") {
  auto c = distinguished_class(GroupSpec::parse("PSL2:11"), "torus-minus");
  CHECK(c.order == 6);
  CHECK(c.size == 110);
  auto sz = distinguished_class(GroupSpec::parse("Sz:8"), "ovoid-torus");
  CHECK(sz.order == 5);
  CHECK(sz.size == 5824);
  auto fr = distinguished_class(GroupSpec::parse("Frob:7:1:3"), "complement");
  CHECK(fr.order == 3);
  CHECK(distinguished_class(GroupSpec::parse("A:13"), "n-cycle").size == 239500800);
  CHECK(distinguished_class(GroupSpec::parse("PSL:3:3"), "singer").order == 13);
  CHECK_THROWS(distinguished_class(GroupSpec::parse("PSL2:11"), "singer"));
}

TEST_CASE("overgroups contain the representative") {
  struct Want {
    std::string spec, label;
    std::vector<std::uint64_t> orders;
  };
  for (const auto& w : std::vector<Want>{{"A:13", "n-cycle", {78, 5616, 5616, 5616, 5616}},
                                          {"A:17", "n-cycle", {16320, 16320}},
                                          {"PSL2:13", "torus-minus", {14}},
                                          {"PSL2:11", "torus-minus", {12}},
                                          {"Sz:8", "ovoid-torus", {20}},
                                          {"Frob:7:1:3", "complement", {3}}}) {
    CAPTURE(w.spec);
    auto spec = GroupSpec::parse(w.spec);
    auto s = distinguished_class(spec, w.label).rep;
    auto H = maximal_overgroups(spec, w.label);
    REQUIRE(H.size() == w.orders.size());
    std::set<std::set<oracle::P>> distinct;
    for (std::size_t i = 0; i < H.size(); ++i) {
      CHECK(H[i].order == w.orders[i]);
      if (w.orders[i] <= 6000) {
        auto el = oracle::closure(raw(H[i].gens));
        CHECK(el.size() == w.orders[i]);
        CHECK(el.count(s.images()) == 1);
        distinct.insert(el);
      }
    }
    if (w.orders[0] <= 6000) CHECK(distinct.size() == H.size());
  }
  CHECK(maximal_overgroups(GroupSpec::parse("PSL2:13"), "torus-minus")[0].label == "D14");
}

TEST_CASE("closed forms") {
  CHECK(f_spread_l2(8) == 6);
  CHECK(f_spread_l2(13) == 12);
  CHECK(f_spread_l2(11) == 7);
  CHECK(g_p2_l2(11) == rational(24, 55));
  CHECK(g_p2_l2(13) == rational(7, 13));
  CHECK(u_lower_suzuki(8) == 90);
  CHECK(u_lower_suzuki(32) == 1270);
  CHECK(p2_suzuki(8) == 1 - rational(304, 5824));
  CHECK(p2_l3(3, 1) == rational(13, 24));
  CHECK_THROWS(p2_l3(2, 1));
  CHECK_THROWS(p2_ree(9));
  auto sd = subdegrees_l2(13);
  CHECK(sd == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{7, 5}, {14, 3}});
  auto sd11 = subdegrees_l2(11);
  std::uint64_t total = 1;
  for (auto [len, m] : sd11) total += len * m;
  CHECK(total == 55);
  auto pr = soluble_predictions(7, 1, 3);
  CHECK(pr.s == 7);
  CHECK(pr.u == 6);
  CHECK(soluble_predictions(7, 1, 6).s == 6);
}

TEST_CASE("p2 closed form against brute force" * doctest::timeout(120)) {
  CHECK(brute_p2(GroupSpec::parse("PSL2:11"), "torus-minus") == g_p2_l2(11));
  CHECK(brute_p2(GroupSpec::parse("PSL2:13"), "torus-minus") == g_p2_l2(13));
}

}
