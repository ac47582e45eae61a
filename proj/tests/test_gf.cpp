#include <doctest.h>

#include <set>

#include "spreadlab/gf.hpp"

using namespace spl;

namespace {

// schoolbook product of coefficient vectors, reduced with t^k = -sum mod[i] t^i
std::uint32_t naive_mul(const Field& F, std::uint32_t a, std::uint32_t b) {
  const std::uint32_t p = F.p(), k = F.k();
  std::vector<std::uint64_t> ca(k), cb(k), prod(2 * k, 0);
  for (std::uint32_t i = 0; i < k; ++i, a /= p, b /= p) {
    ca[i] = a % p;
    cb[i] = b % p;
  }
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
  for (std::uint32_t d = 2 * k - 1; d >= k; --d) {
    std::uint64_t c = prod[d];
    prod[d] = 0;
    for (std::uint32_t i = 0; i < k; ++i)
      prod[d - k + i] = (prod[d - k + i] + (p - F.modulus()[i]) % p * c) % p;
  }
  std::uint32_t v = 0;
  for (std::uint32_t i = k; i-- > 0;) v = v * p + static_cast<std::uint32_t>(prod[i]);
  return v;
}

}  // namespace

TEST_SUITE("gf") {

TEST_CASE("field construction") {
  auto F = field(2, 3);
  CHECK(F->q() == 8);
  CHECK(F->p() == 2);
  CHECK(F->modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});  // monic, constant term first
  CHECK(Field::of_order(9)->k() == 2);
  CHECK(field(7, 1).get() == Field::get(7, 1).get());  // shared instance
  CHECK_THROWS(Field::of_order(6));
  std::uint32_t p = 0, k = 0;
  CHECK(prime_power(343, p, k));
  CHECK((p == 7 && k == 3));
  CHECK_FALSE(prime_power(12, p, k));
}

TEST_CASE("multiplication agrees with polynomial arithmetic") {
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 3}, {3, 2}, {2, 5}, {5, 2}, {3, 3}, {7, 1}, {13, 1}}) {
    auto F = field(p, k);
    for (std::uint32_t a = 0; a < F->q(); ++a)
      for (std::uint32_t b = 0; b < F->q(); ++b) REQUIRE(F->mul(a, b) == naive_mul(*F, a, b));
  }
}

TEST_CASE("additive and multiplicative inverses") {
  auto F = field(3, 2);
  for (std::uint32_t a = 0; a < 9; ++a) {
    CHECK(F->add(a, F->neg(a)) == 0);
    CHECK(F->sub(F->add(a, 5), 5) == a);
    if (a) {
      CHECK(F->mul(a, F->inv(a)) == 1);
      CHECK(F->exp(F->log(a)) == a);
    }
  }
  CHECK_THROWS(F->inv(0));
}

TEST_CASE("primitive elements") {
  CHECK(field(7, 1)->primitive() == 3);
  CHECK(field(13, 1)->primitive() == 2);
  for (std::uint32_t q : {4u, 8u, 9u, 25u, 27u, 32u}) {
    auto F = Field::of_order(q);
    CHECK(F->mult_order(F->primitive()) == q - 1);
    std::set<std::uint32_t> powers;
    for (std::uint32_t e = 0; e + 1 < q; ++e) powers.insert(F->pow(F->primitive(), e));
    CHECK(powers.size() == q - 1);
  }
  auto g = primitive_element(field(3, 2));
  CHECK(g.pow(8).value() == 1);
  CHECK(g.pow(4).value() != 1);
}

TEST_CASE("squares") {
  for (std::uint32_t q : {7u, 9u, 11u, 8u}) {
    auto F = Field::of_order(q);
    std::set<std::uint32_t> sq;
    for (std::uint32_t a = 1; a < q; ++a) sq.insert(F->mul(a, a));
    for (std::uint32_t a = 1; a < q; ++a) CHECK(F->is_square(a) == (sq.count(a) == 1));
    CHECK(sq.size() == (q % 2 ? (q - 1) / 2 : q - 1));
  }
}

TEST_CASE("frobenius") {
  auto F = field(2, 3);
  for (std::uint32_t a = 0; a < 8; ++a) {
    CHECK(F->frobenius(a, 1) == F->mul(a, a));
    CHECK(F->frobenius(a, 3) == a);
    for (std::uint32_t b = 0; b < 8; ++b) CHECK(F->frobenius(F->add(a, b), 1) == F->add(F->frobenius(a, 1), F->frobenius(b, 1)));
  }
  FieldElem x(field(3, 2), 5);
  CHECK(frobenius_twist(x, 1) == x.pow(3));
}

TEST_CASE("field elements") {
  auto F = field(5, 2);
  FieldElem a(F, 7), b(F, 13);
  CHECK((a * b).value() == F->mul(7, 13));
  CHECK((a / b) * b == a);
  CHECK((a - a).is_zero());
  CHECK(-a + a == FieldElem(F, 0));
  CHECK(F->parse(F->str(17)) == 17);
  CHECK_THROWS_AS(a + FieldElem(field(5, 1), 1), field_mismatch);
  CHECK(is_square(FieldElem(F, F->mul(7, 7))));
}

}
