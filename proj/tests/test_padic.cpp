#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "unitroot/error.hpp"
#include "unitroot/padic.hpp"

using namespace unitroot;

TEST_CASE("pi for p = 2 is -2") {
  auto R = make_ring(2, 1, std::nullopt, 5);
  CHECK(R.pi() == R.from_int(-2));
  CHECK(R.pi().valuation().value == Rational(1));
}

TEST_CASE("pi^(p-1) = -p") {
  for (std::int64_t p : {3, 5, 7}) {
    auto R = make_ring(p, 2, std::nullopt, 4);
    CHECK(R.pi().pow(p - 1) == R.from_int(-p));
    CHECK(R.pi().valuation().value == Rational(1, p - 1));
  }
}

TEST_CASE("teichmueller of 2 in F5 at N = 2 is 7") {
  auto R = make_ring(5, 1, std::nullopt, 2);
  std::vector<std::int64_t> r{2};
  auto w = teichmueller(R, r);
  CHECK(w == R.from_int(7));
}

TEST_CASE("teichmueller lifts are roots of unity") {
  auto R = make_ring(3, 2, std::nullopt, 5);
  for (std::int64_t a = 0; a < 3; ++a)
    for (std::int64_t b = 0; b < 3; ++b) {
      std::vector<std::int64_t> r{a, b};
      auto w = teichmueller(R, r);
      CHECK(w.pow(9) == w);
      CHECK(w.residue() == R.residue_field().from(r));
    }
}

TEST_CASE("zeta_p is a primitive p-th root of unity congruent to 1 + pi") {
  for (std::int64_t p : {2, 3, 5, 7}) {
    auto R = make_ring(p, 1, std::nullopt, 4);
    auto z = zeta_p(R);
    CHECK(z.pow(p) == R.one());
    CHECK(!(z == R.one()));
    CHECK(agreement(z, R.one() + R.pi()).value >= Rational(2, p - 1));
  }
  auto R = make_ring(2, 1, std::nullopt, 6);
  CHECK(zeta_p(R) == R.from_int(-1));
}

TEST_CASE("zeta_p needs enough precision") {
  auto R = make_ring(2, 1, std::nullopt, 1);
  CHECK_THROWS_AS(zeta_p(R), Error);
}

TEST_CASE("inverse") {
  auto R = make_ring(5, 2, std::nullopt, 4);
  auto x = R.from_zq(std::vector<std::int64_t>{3, 7}) + R.pi() * R.from_int(11);
  CHECK(x * x.inverse() == R.one());
  try {
    (void)R.pi().inverse();
    FAIL("expected NonUnitDivision");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonUnitDivision);
  }
}

TEST_CASE("pi^k / k! matches direct computation where k! is a unit") {
  auto R = make_ring(7, 1, std::nullopt, 4);
  auto table = pi_power_over_factorial_table(R, 20);
  std::int64_t f = 1;
  for (int k = 0; k < 7; ++k) {
    if (k > 0) f *= k;
    CHECK(table[k] == R.pi().pow(k) * R.from_int(f).inverse());
  }
  // 7 * (pi^7/7!) = pi^7/6!
  CHECK(R.from_int(7) * table[7] == table[6] * R.pi());
  CHECK(table[14].valuation().value == Rational(digit_sum(14, 7), 6));
}

TEST_CASE("pi-adic digits reconstruct the element") {
  auto R = make_ring(3, 2, std::nullopt, 3);
  auto x = R.from_zq(std::vector<std::int64_t>{5, 13}) + R.pi() * R.from_zq(std::vector<std::int64_t>{2, 4});
  auto d = x.pi_adic_digits();
  REQUIRE(d.size() == 6);
  RingElem acc = R.zero();
  RingElem pk = R.one();
  for (auto& dk : d) {
    acc += R.from_zq(dk) * pk;
    pk *= R.pi();
  }
  CHECK(acc == x);
}

TEST_CASE("ring validation") {
  CHECK_THROWS_AS(make_ring(4, 1, std::nullopt, 2), Error);
  CHECK_THROWS_AS(make_ring(3, 2, std::vector<std::int64_t>{2, 0, 1}, 2), Error);  // t^2 + 2 = (t-1)(t+1)
  auto R = make_ring(3, 2, std::nullopt, 2);
  CHECK(R.defining_polynomial() == std::vector<std::int64_t>{1, 0, 1});
}
