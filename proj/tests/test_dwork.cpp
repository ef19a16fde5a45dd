#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "unitroot/dwork.hpp"
#include "unitroot/error.hpp"
#include "unitroot/hyperg.hpp"
#include "unitroot/oracle.hpp"

using namespace unitroot;

namespace {

LaurentSpec ones(std::int64_t p, ExponentSet A) {
  std::vector<std::vector<std::int64_t>> c(A.size(), {1});
  return make_laurent_spec(p, 1, std::nullopt, 1, std::move(A), c);
}

}  // namespace

TEST_CASE("splitting coefficients") {
  for (std::int64_t p : {2, 3, 5}) {
    auto R = make_ring(p, 1, std::nullopt, 4);
    const int cut = splitting_cut(p, 4);
    auto sc = splitting_coefficients(R, cut);
    CHECK(sc.b[0] == R.one());
    CHECK(sc.b[1] == R.pi());
    auto v = sc.b[p].valuation();
    CHECK((v.capped || v.value >= Rational(p - 1, p)));
    // theta(1) = zeta_p
    RingElem s = R.zero();
    for (const auto& b : sc.b) s += b;
    CHECK(s == zeta_p(R));
  }
  CHECK(splitting_cut(2, 4) == 16);
  CHECK(splitting_cut(3, 4) == 18);
  CHECK(splitting_cut(5, 4) == 25);
}

TEST_CASE("B_mu coefficients") {
  auto R = make_ring(3, 1, std::nullopt, 4);
  const int cut = splitting_cut(3, 4);
  auto sc = splitting_coefficients(R, cut);

  ExponentSet one(1, {{1}});
  auto W1 = build_weight_data(one);
  for (std::int64_t mu = 0; mu <= 5; ++mu) CHECK(bigF_coefficient({R.one()}, {mu}, W1, sc, cut) == sc.b[mu]);
  CHECK_THROWS_AS(bigF_coefficient({R.one()}, {-1}, W1, sc, cut), Error);

  ExponentSet K(1, {{1}, {-1}});
  auto WK = build_weight_data(K);
  RingElem expect = R.zero();
  for (int k = 0; 2 * k <= cut; ++k) expect += sc.b[k] * sc.b[k];
  auto B0 = bigF_coefficient({R.one(), R.one()}, {0}, WK, sc, cut);
  CHECK(B0 == expect);
  CHECK(B0.residue() == R.one().residue());
}

TEST_CASE("one-step dual on 1") {
  auto R = make_ring(3, 1, std::nullopt, 4);
  {
    DworkSetup S(ones(3, ExponentSet(1, {{1}})), R);
    XSeries xi;
    xi.coeffs.emplace(Point{0}, R.one());
    auto out = one_step_dual(S, 0, xi);
    CHECK(out.coeffs.size() == 1);
    CHECK(out.coefficient({0}, R) == R.one());
  }
  {
    DworkSetup S(ones(3, ExponentSet(1, {{1}, {-1}})), R);
    XSeries xi;
    xi.coeffs.emplace(Point{0}, R.one());
    auto out = one_step_dual(S, 0, xi);
    for (const auto& w : S.basis()) CHECK(out.coefficient(w, R) == S.bigF(0, {-w[0]}));
  }
}

TEST_CASE("one-step dual does not increase the weighted norm") {
  auto R = make_ring(3, 1, std::nullopt, 4);
  DworkSetup S(ones(3, ExponentSet(2, {{1, 0}, {0, 1}, {-1, -1}})), R);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    XSeries xi;
    for (const auto& mu : S.basis())
      if (rng() % 3 == 0) xi.coeffs.emplace(mu, R.from_int(static_cast<std::int64_t>(rng() % 81)));
    xi.coeffs[Point{0, 0}] = R.one();
    auto out = one_step_dual(S, 0, xi);
    auto a = out.norm_ord(S.weights(), 3), b = xi.norm_ord(S.weights(), 3);
    CHECK((a.capped || a.value >= b.value));
  }
}

TEST_CASE("power iteration") {
  auto R = make_ring(3, 1, std::nullopt, 4);
  {
    DworkSetup S(ones(3, ExponentSet(1, {{1}})), R);
    auto res = power_iteration_unit_root(S);
    CHECK(res.u == R.one());
    CHECK(res.eigenvector.coeffs.size() == 1);
  }
  {
    auto spec = ones(3, ExponentSet(1, {{1}, {-1}}));
    DworkSetup S(spec, R);
    auto res = power_iteration_unit_root(S);
    CHECK(res.cycles <= res.budget);
    CHECK(agreement(res.u, unit_root_route_A_stable(spec, std::nullopt, R).u).capped);
  }
  {
    // half-plane cone: M0 is the x-axis, M is strictly larger
    auto spec = ones(3, ExponentSet(2, {{1, 0}, {-1, 0}, {0, 1}}));
    DworkSetup S(spec, R);
    auto res = power_iteration_unit_root(S);
    bool off_axis = false;
    for (const auto& mu : S.basis()) off_axis |= mu[1] != 0;
    CHECK(off_axis);
    for (const auto& [mu, c] : res.eigenvector.coeffs) CHECK(in_lineality(S.weights(), mu));
  }
}

TEST_CASE("eigenvector is stable under doubling wmax") {
  auto R = make_ring(3, 1, std::nullopt, 4);
  auto spec = ones(3, ExponentSet(1, {{1}, {-1}}));
  DworkSetup S1(spec, R), S2(spec, R, S1.wmax() * 2);
  auto e1 = power_iteration_unit_root(S1), e2 = power_iteration_unit_root(S2);
  CHECK(e1.u == e2.u);
  for (const auto& mu : S1.basis()) CHECK(e1.eigenvector.coefficient(mu, R) == e2.eigenvector.coefficient(mu, R));
}

TEST_CASE("Frobenius matrix for a single ray") {
  auto R = make_ring(3, 1, std::nullopt, 4);
  DworkSetup S(ones(3, ExponentSet(1, {{1}})), R, Rational(3));
  auto M = frobenius_matrix(S);
  REQUIRE(M.rows() == 4);
  for (std::int64_t w = 0; w < 4; ++w)
    for (std::int64_t v = 0; v < 4; ++v) {
      const std::int64_t mu = 3 * w - v;
      CHECK(M.get(w, v) == (mu >= 0 ? S.splitting().b[mu] : R.zero()));
    }
}

TEST_CASE("one-step matrix entry bounds") {
  auto R = make_ring(2, 1, std::nullopt, 4);
  DworkSetup S(ones(2, ExponentSet(2, {{1, 0}, {0, 1}, {-1, -1}})), R, Rational(4));
  auto M = one_step_matrix(S, 0);
  const auto& B = S.basis();
  const auto& w = S.basis_weights();
  CHECK(M.get(0, 0).is_unit());
  for (std::size_t a = 0; a < B.size(); ++a)
    for (std::size_t b = 0; b < B.size(); ++b) {
      Point mu{2 * B[a][0] - B[b][0], 2 * B[a][1] - B[b][1]};
      const RingElem e = M.get(a, b);
      if (!in_cone(S.weights(), mu)) {
        CHECK(e.is_zero());
        continue;
      }
      const Rational wmu = weight(S.weights(), mu);
      auto v = e.valuation();
      CHECK((v.capped || v.value >= wmu / 4));
      CHECK(2 * w[a] <= wmu + w[b]);
      auto vw = weighted_entry_ord(S, M, a, b);
      CHECK((vw.capped || vw.value >= w[a] / 4));
      if (a != 0 || b != 0) CHECK((vw.capped || vw.value > Rational(0)));
    }
  // in the monomial basis (omega, p omega) carries B_0, a unit
  auto ix = S.index_of({1, 0}), jx = S.index_of({2, 0});
  REQUIRE(ix);
  REQUIRE(jx);
  CHECK(M.get(*ix, *jx).is_unit());
}

TEST_CASE("composition order for a two-step orbit") {
  // Kloosterman over F_9 with lambda = (t, 1): d = 2
  auto spec = make_laurent_spec(3, 2, std::nullopt, 1, ExponentSet(1, {{1}, {-1}}), {{0, 1}, {1}});
  REQUIRE(cycle_length(spec) == 2);
  auto R = ring_for(spec, 4);
  DworkSetup S(spec, R);
  auto M = frobenius_matrix(S);
  CHECK(M == serial::matmul(one_step_matrix(S, 1), one_step_matrix(S, 0)));
  auto C = fredholm_unit_root(M, fredholm_truncation(S));
  auto B = power_iteration_unit_root(S);
  CHECK(C.u == B.u);
  auto est = embed_and_estimate(char_sum_table(spec, 6, {}), R);
  CHECK(agreement(C.u, est.u.back()).value >= Rational(3));
}

TEST_CASE("Newton polygons") {
  auto R = make_ring(3, 1, std::nullopt, 4);
  CHECK(newton_polygon({R.one(), -R.one()}) == NewtonPolygon{{Rational(0), 1}});
  CHECK(newton_polygon({R.one(), -R.one(), -R.from_int(3)}) ==
        NewtonPolygon{{Rational(0), 1}, {Rational(1), 1}});
  CHECK(newton_polygon({R.one()}).empty());
  CHECK_THROWS_AS(unit_zero({R.one(), R.from_int(3)}), Error);
  CHECK_THROWS_AS(unit_zero({R.one(), -R.one(), R.one()}), Error);
}

TEST_CASE("Fredholm data for a single ray") {
  for (std::int64_t p : {2, 3, 5}) {
    auto R = make_ring(p, 1, std::nullopt, 4);
    DworkSetup S(ones(p, ExponentSet(1, {{1}})), R);
    auto res = fredholm_unit_root(frobenius_matrix(S), fredholm_truncation(S));
    CHECK(res.u == R.one());
    // det(I - T alpha) = prod_k (1 - p^k T), so c_1 = -1/(1-p)
    CHECK(res.P[1] == -(R.one() - R.from_int(p)).inverse());
    auto L = lfunction_from_fredholm(res.P, 1, 1);
    CHECK(L.series[0] == R.one());
    CHECK(L.series[1] == -R.one());
    for (std::size_t i = 2; i < L.series.size(); ++i) CHECK(L.series[i].is_zero());
    CHECK(L.unit_root == R.one());
  }
}

TEST_CASE("delta of a linear factor") {
  auto R = make_ring(3, 1, std::nullopt, 4);
  const RingElem u = R.from_int(2);
  std::vector<RingElem> P(7, R.zero());
  P[0] = R.one();
  P[1] = -u;
  auto L = lfunction_from_fredholm(P, 1, 1);
  // (1 - uT) / (1 - 3uT) = 1 + 2u T + 6u^2 T^2 + ...
  CHECK(L.numerator[1] == -u);
  CHECK(L.denominator[1] == -(u * R.from_int(3)));
  CHECK(L.series[1] == u * R.from_int(2));
  CHECK(L.series[2] == u * u * R.from_int(6));
  CHECK(L.unit_root == u);
}

TEST_CASE("adjointness on interior pairs") {
  auto R = make_ring(3, 1, std::nullopt, 4);
  {
    DworkSetup S(ones(3, ExponentSet(1, {{1}})), R, Rational(6));
    auto rep = adjoint_check(S);
    CHECK(rep.pairs == 9);
    CHECK(rep.worst.capped);
  }
  {
    DworkSetup S(ones(3, ExponentSet(1, {{1}, {-1}})), R, Rational(6));
    auto rep = adjoint_check(S);
    CHECK(rep.pairs == 25);
    CHECK(rep.worst.capped);
  }
}

TEST_CASE("default wmax") {
  CHECK(default_wmax(2, 4, 1) == Rational(16));
  CHECK(default_wmax(5, 4, 1) == Rational(7));
  CHECK(default_wmax(5, 4, 2) == Rational(13, 2));
  CHECK(default_wmax(3, 1, 1) == Rational(4));
  CHECK(power_iteration_budget(2, 4, 1) == 19);
}
