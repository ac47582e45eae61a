#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spreadlab/perm.hpp"

using namespace spl;

TEST_SUITE("perm") {

TEST_CASE("composition acts left to right") {
  auto p = Perm::parse("(1,2,3)", 3), q = Perm::parse("(1,2)", 3);
  CHECK((p * q) == Perm::parse("(2,3)", 3));
  CHECK((q * q).is_identity());
  CHECK((p * Perm::identity(3)) == p);
  // agrees with the plain image-vector product
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    oracle::P a = oracle::ident(9), b = oracle::ident(9);
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    CHECK((Perm(a) * Perm(b)).images() == oracle::mul(a, b));
  }
}

TEST_CASE("mixed degrees are rejected") {
  CHECK_THROWS_AS(Perm::parse("(1,2)", 3) * Perm::parse("(1,2)", 4), degree_mismatch);
}

TEST_CASE("cycle notation") {
  CHECK(Perm::parse("()", 4).is_identity());
  CHECK(Perm::parse(" (1, 2,3)( 4,5) ", 5) == Perm::from_cycles(5, {{1, 2, 3}, {4, 5}}));
  CHECK(Perm::parse("(1,2,3)(4,5)", 5).str() == "(1,2,3)(4,5)");
  CHECK_THROWS_AS(Perm::parse("(1,2,1)", 3), parse_error);
  CHECK_THROWS_AS(Perm::parse("(1,2)(2,3)", 3), parse_error);
  CHECK_THROWS(Perm::parse("(1,2", 3));
  CHECK_THROWS(Perm(std::vector<point_t>{0, 0, 1}));
}

TEST_CASE("cycle types") {
  CHECK(cycle_type(Perm::parse("(1,2)(3,4)", 7)).label() == "[2^2,1^3]");
  CHECK(cycle_type(Perm::identity(5)).label() == "[1^5]");
  CHECK(cycle_type(Perm::parse("(1,2,3,4,5,6,7,8,9)", 9)).label() == "[9]");
  CHECK(CycleType::parse("[2^2,1^3]") == cycle_type(Perm::parse("(1,2)(3,4)", 7)));
  CHECK(cycle_type(canonical_perm(CycleType::parse("[5,3]"))).label() == "[5,3]");
}

TEST_CASE("element order and prime powers") {
  CHECK(element_order(Perm::parse("(1,2)(3,4)", 7)) == 2);
  CHECK(element_order(CycleType::parse("[6,4]")) == 12);
  CHECK(element_order(canonical_perm(CycleType::parse("[6,4]"))) == 12);
  CHECK(element_order(Perm::parse("(1,2,3,4,5,6,7,8,9)", 9)) == 9);
  auto p6 = canonical_perm(CycleType::parse("[6]"));
  CHECK(prime_order_power(p6, 2) == p6.pow(3));
  CHECK(element_order(prime_order_power(p6, 2)) == 2);
  auto p9 = canonical_perm(CycleType::parse("[9]"));
  CHECK(element_order(prime_order_power(p9, 3)) == 3);
  auto p5 = canonical_perm(CycleType::parse("[5]"));
  CHECK(prime_order_power(p5, 5) == p5);
  CHECK_THROWS(prime_order_power(p5, 3));
  // order by repeated multiplication
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    oracle::P a = oracle::ident(12);
    std::shuffle(a.begin(), a.end(), rng);
    CHECK(element_order(Perm(a)) == oracle::order(a));
  }
}

TEST_CASE("parity") {
  CHECK_FALSE(is_even(Perm::parse("(1,2)", 2)));
  CHECK(is_even(Perm::parse("(1,2,3)", 3)));
  CHECK(is_even(Perm::identity(4)));
  CHECK_FALSE(is_even(Perm::parse("(1,2,3,4)", 4)));
}

TEST_CASE("inverse, powers and conjugation") {
  auto p = Perm::parse("(1,5,2)(3,4)", 6), g = Perm::parse("(1,2,3,4,5,6)", 6);
  CHECK((p * p.inverse()).is_identity());
  CHECK(p.pow(-1) == p.inverse());
  CHECK(p.pow(6).is_identity());
  CHECK(p.conj(g) == g.inverse() * p * g);
  CHECK(cycle_type(p.conj(g)) == cycle_type(p));
}

}
