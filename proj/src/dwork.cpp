#include "unitroot/dwork.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "unitroot/error.hpp"

namespace unitroot {

namespace {

Rational splitting_slope(std::int64_t p) { return Rational(p - 1, p * p); }

// ord x >= bound, reading a precision cap as infinitely divisible
bool ord_at_least(const RingElem& x, Rational bound) {
  const RationalVal v = x.valuation();
  return v.capped || v.value >= bound;
}

}  // namespace

SplittingCoeffs splitting_coefficients(const RingSpec& ring, std::size_t imax) {
  const std::int64_t p = ring.p();
  const auto table = pi_power_over_factorial_table(ring, imax);
  SplittingCoeffs sc;
  sc.b.assign(imax + 1, ring.zero());
  for (std::size_t k = 0; k * p <= imax; ++k) {
    RingElem c = table[k];
    if (k % 2 == 1) c = -c;
    for (std::size_t j = 0; j + k * p <= imax; ++j) sc.b[j + k * p] += c * table[j];
  }
  for (std::size_t i = 0; i <= imax; ++i)
    if (!ord_at_least(sc.b[i], splitting_slope(p) * static_cast<std::int64_t>(i)))
      throw std::logic_error("splitting_coefficients: ord b_" + std::to_string(i) + " below the bound");
  return sc;
}

int splitting_cut(std::int64_t p, int N) {
  const std::int64_t num = static_cast<std::int64_t>(N) * p * p;
  return static_cast<int>((num + p - 2) / (p - 1));
}

RingElem bigF_coefficient(const std::vector<RingElem>& lambda, const Point& mu, const WeightData& W,
                          const SplittingCoeffs& sc, int cut) {
  if (!in_cone(W, mu)) throw Error(ErrorKind::OutsideM, "exponent is not in the cone");
  if (lambda.size() != W.A.size()) throw std::invalid_argument("bigF_coefficient: wrong number of coefficients");
  const RingSpec& ring = sc.b.front().ring();
  if (static_cast<std::size_t>(cut) >= sc.b.size()) throw std::invalid_argument("bigF_coefficient: cut beyond b");
  RingElem acc = ring.zero();
  Decomposer(W.A).for_each(mu, cut, [&](const Point& nu) {
    RingElem t = ring.one();
    for (std::size_t a = 0; a < nu.size(); ++a)
      if (nu[a] > 0) t *= sc.b[nu[a]] * lambda[a].pow(static_cast<std::uint64_t>(nu[a]));
    acc += t;
  });
  if (!ord_at_least(acc, splitting_slope(ring.p()) * weight(W, mu)))
    throw std::logic_error("bigF_coefficient: ord B_mu below the weight bound");
  return acc;
}

Rational default_wmax(std::int64_t p, int N, std::int64_t D) {
  Rational w(static_cast<std::int64_t>(N) * p * p, (p - 1) * (p - 1));
  if (w < Rational(4)) w = Rational(4);
  const Rational scaled = w * D;
  std::int64_t k = scaled.numerator() / scaled.denominator();
  if (Rational(k) < scaled) ++k;
  return Rational(k, D);
}

RingElem XSeries::coefficient(const Point& mu, const RingSpec& ring) const {
  auto it = coeffs.find(mu);
  return it == coeffs.end() ? ring.zero() : it->second;
}

RationalVal XSeries::norm_ord(const WeightData& W, std::int64_t p) const {
  std::optional<RationalVal> best;
  const Rational sign(side == Side::B ? -1 : 1);
  for (const auto& [mu, c] : coeffs) {
    if (c.is_zero()) continue;
    RationalVal v = c.valuation();
    v.value += sign * splitting_slope(p) * weight(W, mu);
    best = best ? min(*best, v) : v;
  }
  if (!best) return RationalVal::at_least(Rational(coeffs.empty() ? 0 : coeffs.begin()->second.ring().precision()));
  return *best;
}

DworkSetup::DworkSetup(const LaurentSpec& spec, const RingSpec& ring, std::optional<Rational> wmax, bool parallel,
                       const BigFTables* cached)
    : spec_(spec), ring_(ring), W_(build_weight_data(spec.A)), parallel_(parallel) {
  if (ring.p() != spec.p || ring.degree() != spec.m) throw std::invalid_argument("DworkSetup: ring does not match spec");
  wmax_ = wmax.value_or(default_wmax(spec.p, ring.precision(), W_.D));
  if (wmax_ < Rational(0)) throw Error(ErrorKind::ConfigInvalid, "wmax must be >= 0");
  cut_ = splitting_cut(spec.p, ring.precision());
  basis_ = enumerate_weighted_monomials(W_, wmax_);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    basis_w_.push_back(weight(W_, basis_[k]));
    index_.emplace(basis_[k], k);
  }
  std::vector<RingElem> cur = teichmueller_point(spec, ring);
  for (int i = 0; i < cycle_length(spec); ++i) {
    orbit_.push_back(cur);
    for (auto& x : cur) x = x.pow(static_cast<std::uint64_t>(spec.p));
  }
  if (cached && cached->splitting.b.size() == static_cast<std::size_t>(cut_) + 1 &&
      cached->tables.size() == orbit_.size()) {
    sc_ = cached->splitting;
    tables_ = cached->tables;
    used_cache_ = true;
    return;
  }
  sc_ = splitting_coefficients(ring, static_cast<std::size_t>(cut_));

  // every p omega - nu in M that can carry a nonzero B_mu
  std::set<Point> needed;
  const std::int64_t p = spec.p;
  const std::int64_t wcap = static_cast<std::int64_t>(cut_) * W_.D;
  Point mu(spec.A.n);
  for (const auto& om : basis_) {
    for (const auto& nu : basis_) {
      for (int j = 0; j < spec.A.n; ++j) mu[j] = p * om[j] - nu[j];
      if (!in_cone(W_, mu) || scaled_weight(W_, mu) > wcap) continue;
      needed.insert(mu);
    }
  }
  const std::vector<Point> mus(needed.begin(), needed.end());
  tables_.resize(orbit_.size());
  for (std::size_t i = 0; i < orbit_.size(); ++i) {
    std::vector<RingElem> vals(mus.size());
    const auto count = static_cast<std::int64_t>(mus.size());
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
    for (std::int64_t k = 0; k < count; ++k) vals[k] = bigF_coefficient(orbit_[i], mus[k], W_, sc_, cut_);
    for (std::size_t k = 0; k < mus.size(); ++k)
      if (!vals[k].is_zero()) tables_[i].emplace(mus[k], std::move(vals[k]));
  }
}

std::optional<std::size_t> DworkSetup::index_of(const Point& mu) const {
  auto it = index_.find(mu);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

RingElem DworkSetup::bigF(int i, const Point& mu) const {
  const auto& t = tables_.at(i);
  auto it = t.find(mu);
  if (it != t.end()) return it->second;
  if (!in_cone(W_, mu) || scaled_weight(W_, mu) > static_cast<std::int64_t>(cut_) * W_.D) return ring_.zero();
  return bigF_coefficient(orbit_.at(i), mu, W_, sc_, cut_);
}

XSeries one_step_dual(const DworkSetup& setup, int i, const XSeries& xi) {
  if (xi.side != Side::BDual) throw std::invalid_argument("one_step_dual: input must live in B*");
  const RingSpec& R = setup.ring();
  const std::int64_t p = setup.spec().p;
  const auto& basis = setup.basis();
  const auto& table = setup.bigF_table(i);
  std::vector<std::pair<const Point*, const RingElem*>> in;
  for (const auto& [nu, c] : xi.coeffs) {
    if (!setup.index_of(nu)) throw std::invalid_argument("one_step_dual: input outside the truncated basis");
    if (!c.is_zero()) in.emplace_back(&nu, &c);
  }
  std::vector<RingElem> out(basis.size(), R.zero());
  const auto count = static_cast<std::int64_t>(basis.size());
#pragma omp parallel for schedule(dynamic, 8) if (setup.parallel())
  for (std::int64_t k = 0; k < count; ++k) {
    const Point& om = basis[k];
    Point mu(om.size());
    std::int64_t* acc = out[k].data().data();
    for (const auto& [nu, c] : in) {
      for (std::size_t j = 0; j < mu.size(); ++j) mu[j] = p * (*nu)[j] - om[j];
      auto it = table.find(mu);
      if (it != table.end()) R.mul_acc(it->second.data().data(), c->data().data(), acc);
    }
  }
  XSeries res;
  res.side = Side::BDual;
  res.wmax = setup.wmax();
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (!out[k].is_zero()) res.coeffs.emplace(basis[k], std::move(out[k]));
  const RationalVal before = xi.norm_ord(setup.weights(), p), after = res.norm_ord(setup.weights(), p);
  if (!after.capped && !before.capped && after.value < before.value)
    throw std::logic_error("one_step_dual: weighted norm increased");
  return res;
}

XSeries dual_cycle(const DworkSetup& setup, const XSeries& xi) {
  XSeries cur = xi;
  for (int i = setup.cycle() - 1; i >= 0; --i) cur = one_step_dual(setup, i, cur);
  return cur;
}

PowerIterationResult power_iteration_unit_root(const DworkSetup& setup) {
  const RingSpec& R = setup.ring();
  const Point zero(setup.spec().A.n, 0);
  PowerIterationResult res;
  res.budget = power_iteration_budget(setup.spec().p, R.precision(), setup.weights().D);
  XSeries xi;
  xi.side = Side::BDual;
  xi.wmax = setup.wmax();
  xi.coeffs.emplace(zero, R.one());
  while (res.cycles < res.budget) {
    XSeries eta = dual_cycle(setup, xi);
    ++res.cycles;
    const RingElem c = eta.coefficient(zero, R);
    if (!c.is_unit()) throw Error(ErrorKind::NoUnitRoot, "normalizer is not a unit");
    const RingElem cinv = c.inverse();
    for (auto it = eta.coeffs.begin(); it != eta.coeffs.end();) {
      it->second *= cinv;
      it = it->second.is_zero() ? eta.coeffs.erase(it) : std::next(it);
    }
    const bool stable = !res.normalizers.empty() && c == res.normalizers.back() && eta.coeffs == xi.coeffs;
    if (!res.normalizers.empty()) res.differences.push_back(agreement(c, res.normalizers.back()));
    res.normalizers.push_back(c);
    xi = std::move(eta);
    if (stable) {
      res.u = c;
      res.eigenvector = std::move(xi);
      return res;
    }
  }
  throw Error(ErrorKind::NoConvergence, "power iteration did not stabilize within " + std::to_string(res.budget) +
                                            " cycles");
}

RingMatrix one_step_matrix(const DworkSetup& setup, int i) {
  const auto& basis = setup.basis();
  const std::int64_t p = setup.spec().p;
  const auto& table = setup.bigF_table(i);
  RingMatrix m(setup.ring(), basis.size(), basis.size());
  const auto count = static_cast<std::int64_t>(basis.size());
#pragma omp parallel for schedule(dynamic, 8) if (setup.parallel())
  for (std::int64_t a = 0; a < count; ++a) {
    Point mu(basis[a].size());
    for (std::size_t b = 0; b < basis.size(); ++b) {
      for (std::size_t j = 0; j < mu.size(); ++j) mu[j] = p * basis[a][j] - basis[b][j];
      auto it = table.find(mu);
      if (it != table.end()) m.set(static_cast<std::size_t>(a), b, it->second);
    }
  }
  return m;
}

RationalVal weighted_entry_ord(const DworkSetup& setup, const RingMatrix& one_step, std::size_t row, std::size_t col) {
  RationalVal v = one_step.get(row, col).valuation();
  if (!v.capped)
    v.value += splitting_slope(setup.spec().p) * (setup.basis_weights()[col] - setup.basis_weights()[row]);
  return v;
}

RingMatrix frobenius_matrix(const DworkSetup& setup) {
  RingMatrix acc = one_step_matrix(setup, 0);
  for (int i = 1; i < setup.cycle(); ++i) {
    const RingMatrix mi = one_step_matrix(setup, i);
    acc = setup.parallel() ? parallel::matmul(mi, acc) : serial::matmul(mi, acc);
  }
  return acc;
}

NewtonPolygon newton_polygon(const std::vector<RingElem>& P) {
  std::vector<std::pair<std::int64_t, Rational>> pts;
  for (std::size_t i = 0; i < P.size(); ++i) {
    if (P[i].is_zero()) continue;
    const RationalVal v = P[i].valuation();
    if (!v.capped) pts.emplace_back(static_cast<std::int64_t>(i), v.value);
  }
  NewtonPolygon poly;
  std::size_t cur = 0;
  while (cur + 1 < pts.size()) {
    std::size_t best = cur + 1;
    Rational slope = (pts[best].second - pts[cur].second) / (pts[best].first - pts[cur].first);
    for (std::size_t j = cur + 2; j < pts.size(); ++j) {
      const Rational s = (pts[j].second - pts[cur].second) / (pts[j].first - pts[cur].first);
      if (s <= slope) {
        slope = s;
        best = j;
      }
    }
    if (!poly.empty() && poly.back().slope == slope)
      poly.back().length += pts[best].first - pts[cur].first;
    else
      poly.push_back({slope, pts[best].first - pts[cur].first});
    cur = best;
  }
  return poly;
}

std::size_t fredholm_truncation(const DworkSetup& setup) {
  const std::int64_t p = setup.spec().p;
  const Rational rate = Rational(setup.cycle()) * Rational((p - 1) * (p - 1), p * p);
  const Rational N(setup.ring().precision());
  const auto& w = setup.basis_weights();
  Rational sum(0);
  for (std::size_t k = 1; k <= w.size(); ++k) {
    sum += w[k - 1];
    if (rate * sum >= N) return std::max<std::size_t>(k - 1, 1);
  }
  return w.size();
}

namespace {

RingElem poly_eval(const std::vector<RingElem>& P, const RingElem& x) {
  RingElem acc = x.ring().zero();
  for (auto it = P.rbegin(); it != P.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<RingElem> poly_derivative(const std::vector<RingElem>& P) {
  std::vector<RingElem> d;
  for (std::size_t i = 1; i < P.size(); ++i) d.push_back(P[i] * P[i].ring().from_int(static_cast<std::int64_t>(i)));
  return d;
}

}  // namespace

RingElem unit_zero(const std::vector<RingElem>& P) {
  if (P.empty() || !P[0].is_unit()) throw std::invalid_argument("unit_zero: constant term must be a unit");
  std::size_t last_unit = 0;
  for (std::size_t i = 1; i < P.size(); ++i)
    if (P[i].is_unit()) last_unit = i;
  if (last_unit == 0) throw Error(ErrorKind::NoUnitRoot, "no slope-0 segment");
  if (last_unit > 1)
    throw Error(ErrorKind::MultipleUnitRoots, "slope-0 segment of length " + std::to_string(last_unit));
  const auto dP = poly_derivative(P);
  RingElem T = -(P[0] * P[1].inverse());
  // quadratic convergence; the bound only guards against a silent loop
  for (int it = 0; it < 64; ++it) {
    const RingElem next = T - poly_eval(P, T) * poly_eval(dP, T).inverse();
    if (next == T) return T;
    T = next;
  }
  throw Error(ErrorKind::NoConvergence, "Newton iteration on the Fredholm polynomial did not settle");
}

FredholmResult fredholm_unit_root(const RingMatrix& Mx, std::size_t K, bool parallel) {
  FredholmResult res;
  res.K = std::min(K, Mx.rows());
  res.P = parallel ? parallel::fredholm_coefficients(Mx, res.K) : serial::fredholm_coefficients(Mx, res.K);
  res.polygon = newton_polygon(res.P);
  res.root = unit_zero(res.P);
  res.u = res.root.inverse();
  return res;
}

namespace {

std::vector<RingElem> poly_mul(const std::vector<RingElem>& a, const std::vector<RingElem>& b, std::size_t K) {
  const RingSpec& R = a.front().ring();
  std::vector<RingElem> c(K + 1, R.zero());
  for (std::size_t i = 0; i < a.size() && i <= K; ++i)
    for (std::size_t j = 0; j < b.size() && i + j <= K; ++j) c[i + j] += a[i] * b[j];
  return c;
}

std::vector<RingElem> series_inverse(const std::vector<RingElem>& a, std::size_t K) {
  const RingSpec& R = a.front().ring();
  std::vector<RingElem> inv(K + 1, R.zero());
  const RingElem c0 = a[0].inverse();
  inv[0] = c0;
  for (std::size_t k = 1; k <= K; ++k) {
    RingElem acc = R.zero();
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) acc += a[j] * inv[k - j];
    inv[k] = -(acc * c0);
  }
  return inv;
}

}  // namespace

LFunctionData lfunction_from_fredholm(const std::vector<RingElem>& P, int n, int s) {
  if (P.empty()) throw std::invalid_argument("lfunction_from_fredholm: empty polynomial");
  const RingSpec& R = P.front().ring();
  const std::size_t K = P.size() - 1;
  const RingElem ps = R.from_int(R.p()).pow(static_cast<std::uint64_t>(s));
  LFunctionData out;
  out.numerator.assign(1, R.one());
  out.denominator.assign(1, R.one());
  std::int64_t binom = 1;
  RingElem scale = R.one();  // p^{k s}
  for (int k = 0; k <= n; ++k) {
    std::vector<RingElem> Q(P.size(), R.zero());
    RingElem sp = R.one();
    for (std::size_t i = 0; i <= K; ++i) {
      Q[i] = P[i] * sp;
      sp *= scale;
    }
    auto& target = k % 2 == 0 ? out.numerator : out.denominator;
    for (std::int64_t e = 0; e < binom; ++e) target = poly_mul(target, Q, K);
    binom = binom * (n - k) / (k + 1);
    scale *= ps;
  }
  out.numerator.resize(K + 1, R.zero());
  out.denominator.resize(K + 1, R.zero());
  out.series = poly_mul(out.numerator, series_inverse(out.denominator, K), K);
  out.unit_root = unit_zero(out.series).inverse();
  return out;
}

AdjointReport adjoint_check(const DworkSetup& setup) {
  const RingMatrix Mx = frobenius_matrix(setup);
  const RingSpec& R = setup.ring();
  const Rational limit = setup.wmax() / setup.spec().p;
  std::vector<std::size_t> interior;
  for (std::size_t k = 0; k < setup.basis().size(); ++k)
    if (setup.basis_weights()[k] <= limit) interior.push_back(k);
  AdjointReport rep;
  rep.worst = RationalVal::at_least(Rational(R.precision()));
  for (std::size_t om : interior) {
    XSeries e;
    e.side = Side::BDual;
    e.wmax = setup.wmax();
    e.coeffs.emplace(setup.basis()[om], R.one());
    const XSeries img = dual_cycle(setup, e);
    for (std::size_t nu : interior) {
      const RingElem lhs = img.coefficient(setup.basis()[nu], R);
      const RingElem rhs = Mx.get(om, nu);
      rep.worst = min(rep.worst, agreement(lhs, rhs));
      ++rep.pairs;
    }
  }
  return rep;
}

}  // namespace unitroot
