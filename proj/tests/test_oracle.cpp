#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "unitroot/error.hpp"
#include "unitroot/oracle.hpp"

using namespace unitroot;

namespace {

LaurentSpec spec1(std::int64_t p, int m, ExponentSet A, std::vector<std::vector<std::int64_t>> c) {
  return make_laurent_spec(p, m, std::nullopt, 1, std::move(A), std::move(c));
}

std::uint64_t total(const CharSumRow& r) { return std::accumulate(r.counts.begin(), r.counts.end(), std::uint64_t{0}); }

}  // namespace

TEST_CASE("least irreducible polynomials") {
  CHECK(fp::find_irreducible(2, 1) == FpPoly{0, 1});
  CHECK(fp::find_irreducible(3, 2) == FpPoly{1, 0, 1});
  CHECK(fp::find_irreducible(2, 2) == FpPoly{1, 1, 1});
  CHECK(fp::is_irreducible(FpPoly{1, 0, 1}, 3));
  CHECK(!fp::is_irreducible(FpPoly{1, 0, 1}, 5));
}

TEST_CASE("orbit degree") {
  auto K = spec1(2, 2, ExponentSet(1, {{1}, {-1}}), {{0, 1}, {1}});
  CHECK(orbit_degree(K) == 2);
  auto K1 = spec1(2, 2, ExponentSet(1, {{1}, {-1}}), {{1}, {1}});
  CHECK(orbit_degree(K1) == 1);
  auto Z = spec1(3, 2, ExponentSet(1, {{1}}), {{0}});
  CHECK(orbit_degree(Z) == 1);
  auto E = make_laurent_spec(2, 2, std::nullopt, 2, ExponentSet(1, {{1}}), {{0, 1}});
  CHECK(orbit_degree(E) == 1);
  CHECK(cycle_length(E) == 2);
}

TEST_CASE("f = x over F_3") {
  auto s = spec1(3, 1, ExponentSet(1, {{1}}), {{1}});
  auto r = char_sum(s, 1);
  CHECK(r.counts == std::vector<std::uint64_t>{0, 1, 1});
  CHECK(cyclotomic_coefficients(r) == std::vector<std::int64_t>{-1, 0});
  auto R = make_ring(3, 1, std::nullopt, 4);
  auto est = embed_and_estimate(char_sum_table(s, 5), R);
  for (const auto& S : est.S) CHECK(S == R.from_int(-1));
  for (const auto& u : est.u) CHECK(u == R.one());
}

TEST_CASE("Kloosterman over F_3") {
  auto s = spec1(3, 1, ExponentSet(1, {{1}, {-1}}), {{1}, {1}});
  CHECK(char_sum(s, 1).counts == std::vector<std::uint64_t>{0, 1, 1});
  auto table = char_sum_table(s, 6);
  for (const auto& r : table.rows) CHECK(total(r) == r.field_order - 1);
  auto R = make_ring(3, 1, std::nullopt, 6);
  auto est = embed_and_estimate(table, R);
  for (const auto& S : est.S) CHECK(S.is_unit());
  for (std::size_t i = 1; i < est.successive.size(); ++i)
    CHECK(est.successive[i - 1].value < est.successive[i].value);
}

TEST_CASE("serial and parallel counts agree") {
  auto s = spec1(3, 1, ExponentSet(2, {{1, 0}, {0, 1}, {-1, -1}}), {{1}, {1}, {1}});
  OracleOptions ser;
  ser.parallel = false;
  for (int l = 1; l <= 3; ++l) {
    auto a = char_sum(s, l, ser);
    auto b = char_sum(s, l);
    CHECK(a.counts == b.counts);
    CHECK(total(a) == (a.field_order - 1) * (a.field_order - 1));
  }
}

TEST_CASE("Frobenius invariance") {
  auto s = spec1(3, 2, ExponentSet(1, {{2}, {-1}}), {{0, 1}, {1, 1}});
  auto F = s.field();
  auto t = s;
  for (auto& c : t.coeffs) c = F.frobenius(c);
  CHECK(orbit_degree(s) == 2);
  for (int l = 1; l <= 3; ++l) CHECK(char_sum(s, l).counts == char_sum(t, l).counts);
}

TEST_CASE("enumeration guard") {
  auto s = spec1(5, 1, ExponentSet(2, {{1, 0}, {0, 1}, {-1, -1}}), {{1}, {1}, {1}});
  try {
    (void)char_sum(s, 6);
    FAIL("expected TooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooLarge);
  }
}

TEST_CASE("zero coefficients") {
  auto s = spec1(3, 1, ExponentSet(1, {{1}, {-1}}), {{0}, {0}});
  auto r = char_sum(s, 2);
  CHECK(r.counts == std::vector<std::uint64_t>{8, 0, 0});
}

TEST_CASE("degenerate face has a singular torus point") {
  for (std::int64_t p : {3, 5}) {
    auto s = spec1(p, 1, ExponentSet(2, {{0, 1}, {1, 0}, {2, -1}}), {{1}, {2}, {1}});
    CHECK(face_singular_point(s, {0, 1, 2}).has_value());
  }
  auto good = spec1(5, 1, ExponentSet(2, {{0, 1}, {1, 0}, {2, -1}}), {{1}, {1}, {1}});
  CHECK(!face_singular_point(good, {0, 1, 2}).has_value());
}
