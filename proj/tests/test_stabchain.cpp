#include <doctest.h>

#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "spreadlab/families.hpp"
#include "spreadlab/stabchain.hpp"

using namespace spl;

namespace {

std::vector<oracle::P> images(const std::vector<Perm>& v) {
  std::vector<oracle::P> out;
  for (const auto& p : v) out.push_back(p.images());
  return out;
}

}  // namespace

TEST_SUITE("stabchain") {

TEST_CASE("orders of standard groups") {
  CHECK(PermGroup::build({Perm::parse("(1,2)", 5), Perm::parse("(1,2,3,4,5)", 5)}).order() == 120);
  CHECK(PermGroup::build({Perm::parse("(1,2,3)", 5), Perm::parse("(3,4,5)", 5)}).order() == 60);
  CHECK(PermGroup::build({Perm::identity(4)}).order() == 1);
  CHECK(construct(GroupSpec::parse("S:6")).order() == 720);
  CHECK(construct(GroupSpec::parse("PSL2:11")).order() == 660);
  CHECK(construct(GroupSpec::parse("Sz:8")).order() == 29120);
  CHECK_THROWS_AS(PermGroup::build({Perm::identity(3), Perm::identity(4)}), degree_mismatch);
}

TEST_CASE("chain order agrees with closure") {
  for (const std::string s : {"S:5", "A:6", "PSL2:7", "PSL2:8", "Frob:7:1:3", "PGL2:5"}) {
    auto G = construct(GroupSpec::parse(s));
    CHECK(G.order() == oracle::closure(images(G.generators())).size());
  }
}

TEST_CASE("membership") {
  auto A5 = construct(GroupSpec::parse("A:5"));
  CHECK_FALSE(A5.contains(Perm::parse("(1,2)", 5)));
  CHECK(A5.contains(Perm::parse("(1,2,3)", 5)));
  for (const auto& g : A5.generators()) CHECK(A5.contains(g));
  auto G = construct(GroupSpec::parse("PSL2:7"));
  auto all = oracle::closure(images(G.generators()));
  std::mt19937_64 rng(3);
  int in = 0;
  for (int t = 0; t < 300; ++t) {
    oracle::P a = oracle::ident(8);
    std::shuffle(a.begin(), a.end(), rng);
    CHECK(G.contains(Perm(a)) == (all.count(a) == 1));
    in += all.count(a);
  }
  CHECK_THROWS_AS(G.contains(Perm::identity(9)), degree_mismatch);
}

TEST_CASE("generation test") {
  auto S9 = construct(GroupSpec::parse("S:9"));
  auto n = Perm::parse("(1,2,3,4,5,6,7,8,9)", 9);
  CHECK(generates(S9, Perm::parse("(1,2)", 9), n));
  CHECK_FALSE(generates(S9, Perm::parse("(1,4)", 9), n));
  CHECK_FALSE(generates(S9, Perm::identity(9), n));
  auto A5 = construct(GroupSpec::parse("A:5"));
  CHECK_THROWS_AS(generates(A5, Perm::parse("(1,2)", 5), Perm::parse("(1,2,3,4,5)", 5)), not_in_group);
  // against closure on random pairs
  auto G = construct(GroupSpec::parse("PSL2:7"));
  std::mt19937_64 rng(17);
  for (int t = 0; t < 80; ++t) {
    auto x = G.random_element(rng), y = G.random_element(rng);
    bool want = oracle::closure({x.images(), y.images()}).size() == 168;
    CHECK(generates(G, x, y) == want);
  }
}

TEST_CASE("element enumeration") {
  auto S4 = construct(GroupSpec::parse("S:4"));
  auto e = S4.elements(100);
  CHECK(e.size() == 24);
  CHECK(std::set<Perm>(e.begin(), e.end()).size() == 24);
  CHECK(construct(GroupSpec::parse("PSL2:7")).elements(1000).size() == 168);
  CHECK_THROWS_AS(construct(GroupSpec::parse("S:5")).elements(10), cap_exceeded);
  // deterministic order: rank of the i-th element is i
  for (std::size_t i = 0; i < e.size(); ++i) CHECK(S4.rank(e[i]) == i);
}

TEST_CASE("conjugacy classes") {
  auto S5 = construct(GroupSpec::parse("S:5"));
  for (auto mode : {ClassMode::enumerate, ClassMode::cycle_type}) {
    auto cl = conjugacy_classes(S5, mode);
    std::vector<std::size_t> sizes;
    for (const auto& c : cl) sizes.push_back(to_u64(c.size));
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == std::vector<std::size_t>{1, 10, 15, 20, 20, 24, 30});
  }
  auto A5 = construct(GroupSpec::parse("A:5"));
  auto cl = conjugacy_classes(A5, ClassMode::cycle_type);
  CHECK(cl.size() == 5);
  int fives = 0;
  for (const auto& c : cl)
    if (c.order == 5) {
      ++fives;
      CHECK(c.size == 12);
    }
  CHECK(fives == 2);
  // against the brute force class computation
  for (const std::string s : {"A:5", "PSL2:7", "Frob:7:1:3", "S:4"}) {
    auto G = construct(GroupSpec::parse(s));
    std::vector<std::size_t> sizes;
    for (const auto& c : conjugacy_classes(G, ClassMode::enumerate)) sizes.push_back(to_u64(c.size));
    std::sort(sizes.begin(), sizes.end());
    CHECK(sizes == oracle::class_sizes(oracle::closure(images(G.generators()))));
  }
  auto A13 = construct(GroupSpec::parse("A:13"));
  auto CI = ClassIndex::build_auto(A13);
  CHECK(CI.mode() == ClassMode::cycle_type);
  CHECK(CI.classes()[CI.find_label("[13]a")].size == bigint(239500800));
  CHECK_THROWS(ClassIndex::build(construct(GroupSpec::parse("PSL2:7")), ClassMode::cycle_type));
}

TEST_CASE("prime order classes and centralizers") {
  auto orders = [](const std::string& s) {
    std::vector<std::uint64_t> o;
    auto G = construct(GroupSpec::parse(s));
    for (const auto& c : prime_order_class_reps(G, ClassMode::enumerate)) o.push_back(c.order);
    std::sort(o.begin(), o.end());
    return o;
  };
  CHECK(orders("S:5") == std::vector<std::uint64_t>{2, 2, 3, 5});
  CHECK(orders("A:5") == std::vector<std::uint64_t>{2, 3, 5, 5});
  CHECK(orders("Frob:7:1:3") == std::vector<std::uint64_t>{3, 3, 7, 7});
  auto S4 = construct(GroupSpec::parse("S:4"));
  CHECK(centralizer_order(S4, Perm::parse("(1,2)(3,4)", 4)) == 8);
  CHECK(centralizer_order(S4, Perm::identity(4)) == 24);
  auto A13 = construct(GroupSpec::parse("A:13"));
  CHECK(centralizer_order(A13, Perm::parse("(1,2,3,4,5,6,7,8,9,10,11,12,13)", 13)) == 13);
}

TEST_CASE("chain cache round trip") {
  auto dir = std::filesystem::temp_directory_path() / "spreadlab_chain_test";
  std::filesystem::remove_all(dir);
  auto gens = family_generators(GroupSpec::parse("PSL2:11"));
  auto a = build_cached(12, gens, dir.string());
  auto b = build_cached(12, gens, dir.string());  // second call loads the file
  CHECK(a.order() == b.order());
  CHECK(a.base() == b.base());
  CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator()) == 1);
  std::filesystem::remove_all(dir);
}

}
