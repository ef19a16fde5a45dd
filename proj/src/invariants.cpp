#include "unitroot/invariants.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "unitroot/error.hpp"
#include "unitroot/hyperg.hpp"
#include "unitroot/kernels.hpp"
#include "unitroot/laurent.hpp"
#include "unitroot/oracle.hpp"

namespace unitroot {

namespace {

Point random_cone_point(const ExponentSet& A, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coef(0, 6);
  Point nu(A.n, 0);
  for (const auto& a : A.vectors) {
    const int c = coef(rng);
    for (int j = 0; j < A.n; ++j) nu[j] += c * a[j];
  }
  return nu;
}

bool is_zero_point(const Point& x) {
  return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
}

Point scaled(const Point& x, std::int64_t k) {
  Point r = x;
  for (auto& v : r) v *= k;
  return r;
}

Point plus(const Point& a, const Point& b) {
  Point r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Rational slope(std::int64_t p) { return Rational(p - 1, p * p); }

bool at_least(const RationalVal& v, const Rational& bound) { return v.capped || v.value >= bound; }

CheckResult finish(std::string name, std::size_t failures, std::size_t checked, const std::string& extra = {}) {
  std::ostringstream os;
  os << checked << " checked, " << failures << " failed";
  if (!extra.empty()) os << "; " << extra;
  return {std::move(name), failures == 0 && checked > 0, os.str()};
}

std::string point_str(const Point& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ")";
  return os.str();
}

}  // namespace

CheckResult weight_property_suite(const ExponentSet& A, int samples, int def_samples, std::uint64_t seed) {
  const WeightData W = build_weight_data(A);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cdist(0, 5);
  std::size_t fail = 0, checked = 0;
  for (int t = 0; t < samples; ++t) {
    const Point nu = random_cone_point(A, rng), mu = random_cone_point(A, rng);
    const Rational w = weight(W, nu);
    const std::int64_t c = cdist(rng);
    bool ok = w >= Rational(0) && (w == Rational(0)) == is_zero_point(nu);
    ok = ok && (w * W.D).denominator() == 1;
    ok = ok && weight(W, scaled(nu, c)) == w * c;
    ok = ok && weight(W, plus(nu, mu)) <= w + weight(W, mu);
    fail += !ok;
    ++checked;
  }
  for (int t = 0; t < def_samples; ++t) {
    const Point nu = random_cone_point(A, rng);
    fail += definitional_weight(W, nu) != weight(W, nu);
    ++checked;
  }
  return finish("weights", fail, checked);
}

std::vector<Point> test_relations(const ExponentSet& A) {
  const auto basis = relation_basis(A);
  if (basis.empty()) return {Point(A.size(), 0)};
  if (basis.size() == 1) return {basis[0], scaled(basis[0], 2), scaled(basis[0], 3)};
  return {basis[0], basis[1], plus(basis[0], basis[1])};
}

std::vector<Point> test_indices(const ExponentSet& A) {
  const WeightData W = build_weight_data(A);
  const Point zero(A.n, 0);
  if (!W.lineality_basis.empty()) return {zero, W.lineality_basis[0]};
  return {zero, A.vectors[0]};
}

CheckResult annihilator_suite(const ExponentSet& A, int degree) {
  std::size_t fail = 0, checked = 0;
  const auto rel = test_relations(A);
  for (const auto& i : test_indices(A))
    for (const auto& l : rel) {
      const auto r = check_annihilators(A, i, l, degree);
      fail += !r.vanishes();
      ++checked;
    }
  std::ostringstream os;
  os << rel.size() << " relations, degree " << degree;
  return finish("annihilators", fail, checked, os.str());
}

CheckResult splitting_bound_suite(const DworkSetup& S) {
  const std::int64_t p = S.spec().p;
  const auto& b = S.splitting().b;
  std::size_t fail = 0;
  for (std::size_t i = 0; i < b.size(); ++i) fail += !at_least(b[i].valuation(), slope(p) * static_cast<std::int64_t>(i));
  return finish("splitting bound", fail, b.size());
}

CheckResult bigF_bound_suite(const DworkSetup& S) {
  const Rational k = slope(S.spec().p);
  std::size_t fail = 0, checked = 0;
  for (int i = 0; i < S.cycle(); ++i)
    for (const auto& [mu, v] : S.bigF_table(i)) {
      fail += !at_least(v.valuation(), weight(S.weights(), mu) * k);
      ++checked;
    }
  return finish("B_mu bound", fail, checked);
}

CheckResult matrix_entry_suite(const DworkSetup& S) {
  const std::int64_t p = S.spec().p;
  const Rational k = slope(p), row_k = Rational((p - 1) * (p - 1), p * p);
  const auto& B = S.basis();
  const auto& w = S.basis_weights();
  const int n = S.spec().A.n;
  std::size_t fail = 0, checked = 0;
  std::string first;
  for (int i = 0; i < S.cycle(); ++i) {
    const RingMatrix M = one_step_matrix(S, i);
    Point mu(n);
    for (std::size_t a = 0; a < B.size(); ++a)
      for (std::size_t c = 0; c < B.size(); ++c) {
        for (int j = 0; j < n; ++j) mu[j] = p * B[a][j] - B[c][j];
        const RingElem e = M.get(a, c);
        bool ok;
        if (!in_cone(S.weights(), mu)) {
          ok = e.is_zero();
        } else {
          const auto vw = weighted_entry_ord(S, M, a, c);
          ok = at_least(e.valuation(), weight(S.weights(), mu) * k) && at_least(vw, w[a] * row_k);
          if (a != 0 || c != 0) ok = ok && (vw.capped || vw.value > Rational(0));
        }
        if (!ok && first.empty()) first = "first failure at " + point_str(B[a]) + " x " + point_str(B[c]);
        fail += !ok;
        ++checked;
      }
  }
  return finish("matrix entries", fail, checked, first);
}

CheckResult adjoint_suite(const DworkSetup& S) {
  const auto rep = adjoint_check(S);
  std::ostringstream os;
  os << rep.pairs << " interior pairs, worst ord " << rep.worst.str();
  return {"adjointness", rep.worst.capped && rep.pairs > 0, os.str()};
}

CheckResult ring_suite(std::int64_t p, int m, int N, int trials, std::uint64_t seed) {
  const RingSpec R = make_ring(p, m, std::nullopt, N);
  std::mt19937_64 rng(seed);
  auto rnd = [&] {
    RingElem x(R);
    for (auto& c : x.data()) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(R.modulus()));
    return x;
  };
  auto rnd_residue = [&] {
    std::vector<std::int64_t> r(m);
    for (auto& c : r) c = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(p));
    return r;
  };
  std::uint64_t q = 1;
  for (int i = 0; i < m; ++i) q *= static_cast<std::uint64_t>(p);
  std::size_t fail = 0, checked = 0;
  const RingElem pi = R.pi();
  for (int t = 0; t < trials; ++t) {
    const RingElem a = rnd(), b = rnd(), c = rnd();
    bool ok = (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c && a * b == b * a;
    if (a.is_unit()) ok = ok && a * a.inverse() == R.one();
    RingElem back = R.zero(), pk = R.one();
    for (const auto& d : a.pi_adic_digits()) {
      back += R.from_zq(d) * pk;
      pk *= pi;
    }
    ok = ok && back == a;
    const auto r1 = rnd_residue(), r2 = rnd_residue();
    const RingElem t1 = teichmueller(R, r1), t2 = teichmueller(R, r2);
    ok = ok && t1.pow(q) == t1;
    const auto prod = R.residue_field().mul(R.residue_field().from(r1), R.residue_field().from(r2));
    ok = ok && teichmueller(R, prod) == t1 * t2;
    fail += !ok;
    ++checked;
  }
  const RingElem z = zeta_p(R);
  fail += !(z.pow(static_cast<std::uint64_t>(p)) == R.one() && !(z == R.one()));
  ++checked;
  std::ostringstream name;
  name << "ring p=" << p << " m=" << m << " N=" << N;
  return finish(name.str(), fail, checked);
}

CheckResult kernel_suite(const DworkSetup& S) {
  std::size_t fail = 0, checked = 0;
  const RingMatrix M0 = one_step_matrix(S, 0);
  const RingMatrix M1 = one_step_matrix(S, S.cycle() - 1);
  fail += !(serial::matmul(M1, M0) == parallel::matmul(M1, M0));
  ++checked;
  std::vector<RingElem> v;
  for (std::size_t k = 0; k < M0.cols(); ++k) v.push_back(S.ring().from_int(static_cast<std::int64_t>(k) + 1));
  fail += !(serial::matvec(M0, v) == parallel::matvec(M0, v));
  ++checked;
  const std::size_t K = fredholm_truncation(S);
  fail += !(serial::fredholm_coefficients(M0, K) == parallel::fredholm_coefficients(M0, K));
  ++checked;
  return finish("serial vs parallel kernels", fail, checked);
}

std::vector<CheckResult> selftest() {
  std::vector<CheckResult> out;
  auto tag = [](CheckResult r, const std::string& what) {
    r.name += " [" + what + "]";
    return r;
  };
  for (std::int64_t p : {2, 3, 5}) out.push_back(ring_suite(p, 2, 4, 50, 11 + p));
  out.push_back(ring_suite(3, 1, 6, 50, 3));

  const std::vector<std::pair<std::string, ExponentSet>> sets{
      {"A={1,-1}", ExponentSet(1, {{1}, {-1}})},
      {"A={1}", ExponentSet(1, {{1}})},
      {"A={2,-1}", ExponentSet(1, {{2}, {-1}})},
      {"triangle", ExponentSet(2, {{1, 0}, {0, 1}, {-1, -1}})},
      {"degenerate", ExponentSet(2, {{0, 1}, {1, 0}, {2, -1}})}};
  for (const auto& [label, A] : sets) {
    out.push_back(tag(weight_property_suite(A, 200, 20, 99), label));
    out.push_back(tag(annihilator_suite(A, 6), label));
    std::vector<std::vector<std::int64_t>> ones(A.size(), {1});
    const auto spec = make_laurent_spec(3, 1, std::nullopt, 1, A, ones);
    const RingSpec R = ring_for(spec, 3);
    DworkSetup S(spec, R, Rational(4));
    out.push_back(tag(splitting_bound_suite(S), label));
    out.push_back(tag(bigF_bound_suite(S), label));
    out.push_back(tag(matrix_entry_suite(S), label));
    out.push_back(tag(adjoint_suite(S), label));
    out.push_back(tag(kernel_suite(S), label));
  }
  out.push_back({"generating identity [A={1,-1}]",
                 generating_identity_check(ExponentSet(1, {{1}, {-1}}), {{-2}, {-1}, {0}, {1}, {2}}, 6), "indices -2..2"});

  {
    const auto spec = make_laurent_spec(3, 1, std::nullopt, 1, ExponentSet(1, {{1}}), {{1}});
    const auto table = char_sum_table(spec, 4);
    std::size_t fail = 0;
    for (const auto& row : table.rows) {
      const auto c = cyclotomic_coefficients(row);
      fail += !(c[0] == -1 && std::all_of(c.begin() + 1, c.end(), [](auto x) { return x == 0; }));
    }
    out.push_back(finish("oracle S_l = -1 [A={1}]", fail, table.rows.size()));
  }
  {
    const auto spec = make_laurent_spec(3, 1, std::nullopt, 1, ExponentSet(2, {{1, 0}, {0, 1}, {-1, -1}}), {{1}, {1}, {1}});
    OracleOptions serial_opts;
    serial_opts.parallel = false;
    std::size_t fail = 0;
    for (int l = 1; l <= 3; ++l) fail += char_sum(spec, l).counts != char_sum(spec, l, serial_opts).counts;
    out.push_back(finish("oracle serial vs parallel [triangle]", fail, 3));
  }
  return out;
}

}  // namespace unitroot
