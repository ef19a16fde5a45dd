#include "unitroot/hyperg.hpp"

#include <algorithm>
#include <stdexcept>

#include "unitroot/error.hpp"

namespace unitroot {

std::int64_t total_degree(const Point& u) {
  std::int64_t s = 0;
  for (auto x : u) s += x;
  return s;
}

MultiSeries::MultiSeries(RingSpec ring, std::size_t nvars, int degmax)
    : ring_(std::move(ring)), nvars_(nvars), degmax_(degmax) {}

RingElem MultiSeries::coefficient(const Point& u) const {
  auto it = terms_.find(u);
  return it == terms_.end() ? ring_.zero() : it->second;
}

void MultiSeries::add_term(const Point& u, const RingElem& c) {
  if (total_degree(u) > degmax_) return;
  auto [it, inserted] = terms_.try_emplace(u, c);
  if (!inserted) it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

MultiSeries MultiSeries::truncated(int degmax) const {
  MultiSeries r(ring_, nvars_, degmax);
  for (const auto& [u, c] : terms_)
    if (total_degree(u) <= degmax) r.terms_.emplace(u, c);
  return r;
}

MultiSeries MultiSeries::power_substitute(int k, int degmax) const {
  MultiSeries r(ring_, nvars_, degmax);
  for (const auto& [u, c] : terms_) {
    if (total_degree(u) * k > degmax) continue;
    Point v = u;
    for (auto& x : v) x *= k;
    r.terms_.emplace(std::move(v), c);
  }
  return r;
}

RingElem MultiSeries::evaluate(const std::vector<RingElem>& point) const {
  if (point.size() != nvars_) throw std::invalid_argument("MultiSeries::evaluate: wrong number of variables");
  std::vector<std::int64_t> maxexp(nvars_, 0);
  for (const auto& [u, c] : terms_)
    for (std::size_t a = 0; a < nvars_; ++a) maxexp[a] = std::max(maxexp[a], u[a]);
  std::vector<std::vector<RingElem>> powers(nvars_);
  for (std::size_t a = 0; a < nvars_; ++a) {
    powers[a].push_back(ring_.one());
    for (std::int64_t k = 1; k <= maxexp[a]; ++k) powers[a].push_back(powers[a].back() * point[a]);
  }
  RingElem acc = ring_.zero();
  for (const auto& [u, c] : terms_) {
    RingElem t = c;
    for (std::size_t a = 0; a < nvars_; ++a)
      if (u[a] > 0) t *= powers[a][u[a]];
    acc += t;
  }
  return acc;
}

RationalVal MultiSeries::shell_min_ord(int d) const {
  RationalVal best = RationalVal::at_least(Rational(ring_.precision()));
  for (const auto& [u, c] : terms_)
    if (total_degree(u) == d) best = min(best, c.valuation());
  return best;
}

MultiSeries operator*(const MultiSeries& a, const MultiSeries& b) {
  const int degmax = std::min(a.degmax_, b.degmax_);
  MultiSeries r(a.ring_, a.nvars_, degmax);
  using Entry = std::pair<std::int64_t, const std::pair<const Point, RingElem>*>;
  auto by_degree = [](const MultiSeries& s) {
    std::vector<Entry> v;
    for (const auto& kv : s.terms_) v.emplace_back(total_degree(kv.first), &kv);
    std::stable_sort(v.begin(), v.end(), [](const Entry& x, const Entry& y) { return x.first < y.first; });
    return v;
  };
  const auto va = by_degree(a), vb = by_degree(b);
  const RingSpec& R = a.ring_;
  Point key(a.nvars_);
  for (const auto& [da, ta] : va) {
    for (const auto& [db, tb] : vb) {
      if (da + db > degmax) break;
      for (std::size_t i = 0; i < key.size(); ++i) key[i] = ta->first[i] + tb->first[i];
      auto [it, inserted] = r.terms_.try_emplace(key, R);
      R.mul_acc(ta->second.data().data(), tb->second.data().data(), it->second.data().data());
    }
  }
  for (auto it = r.terms_.begin(); it != r.terms_.end();) it = it->second.is_zero() ? r.terms_.erase(it) : std::next(it);
  return r;
}

MultiSeries MultiSeries::inverse() const {
  const RingElem c0 = coefficient(Point(nvars_, 0));
  if (!c0.is_unit()) throw Error(ErrorKind::NonUnitDivision, "series with non-unit constant term");
  MultiSeries y(ring_, nvars_, 0);
  y.add_term(Point(nvars_, 0), c0.inverse());
  int prec = 1;  // y is correct through degree prec - 1
  const RingElem two = ring_.from_int(2);
  while (prec <= degmax_) {
    prec = std::min(2 * prec, degmax_ + 1);
    MultiSeries yy = y.truncated(prec - 1);
    MultiSeries t = truncated(prec - 1) * yy;
    MultiSeries e(ring_, nvars_, prec - 1);
    for (const auto& [u, c] : t.terms_) e.add_term(u, -c);
    e.add_term(Point(nvars_, 0), two);
    y = yy * e;
  }
  y.degmax_ = degmax_;
  return y;
}

MultiSeries hyperg_coefficient_series(const ExponentSet& A, const Point& i, int degmax, const RingSpec& ring) {
  MultiSeries s(ring, A.size(), degmax);
  if (degmax < 0) return s;
  const auto table = pi_power_over_factorial_table(ring, static_cast<std::uint64_t>(degmax));
  Decomposer dec(A);
  dec.for_each(i, degmax, [&](const Point& u) {
    RingElem c = ring.one();
    for (auto ua : u)
      if (ua > 0) c *= table[ua];
    s.add_term(u, c);
  });
  return s;
}

namespace {

MultiSeries calF_series_general(const ExponentSet& A, int degmax, const RingSpec& ring) {
  const Point zero(A.n, 0);
  const std::int64_t p = ring.p();
  const MultiSeries num = hyperg_coefficient_series(A, zero, degmax, ring);
  const MultiSeries den = hyperg_coefficient_series(A, zero, static_cast<int>(degmax / p), ring)
                              .power_substitute(static_cast<int>(p), degmax);
  // Both series live on the monoid L = {u >= 0 : sum u_a a = 0}, and so does
  // the quotient.  Solve quotient * den = num degree by degree; den has
  // constant term 1 and is supported on pL.
  std::vector<Point> keys = Decomposer(A).solve(zero, degmax);
  std::stable_sort(keys.begin(), keys.end(),
                   [](const Point& x, const Point& y) { return total_degree(x) < total_degree(y); });
  std::map<Point, std::size_t> index;
  for (std::size_t k = 0; k < keys.size(); ++k) index.emplace(keys[k], k);
  std::vector<std::pair<const Point*, const RingElem*>> dterms;
  for (const auto& [v, b] : den.terms())
    if (total_degree(v) > 0) dterms.emplace_back(&v, &b);
  std::stable_sort(dterms.begin(), dterms.end(),
                   [](const auto& x, const auto& y) { return total_degree(*x.first) < total_degree(*y.first); });
  std::vector<RingElem> q(keys.size(), ring.zero());
  Point w(A.size());
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const Point& u = keys[k];
    const std::int64_t du = total_degree(u);
    RingElem c = num.coefficient(u);
    RingElem acc = ring.zero();
    for (const auto& [v, b] : dterms) {
      if (total_degree(*v) > du) break;
      bool ok = true;
      for (std::size_t a = 0; a < w.size(); ++a) {
        w[a] = u[a] - (*v)[a];
        ok &= w[a] >= 0;
      }
      if (!ok) continue;
      ring.mul_acc(b->data().data(), q[index.at(w)].data().data(), acc.data().data());
    }
    q[k] = c - acc;
  }
  MultiSeries out(ring, A.size(), degmax);
  for (std::size_t k = 0; k < keys.size(); ++k) out.add_term(keys[k], q[k]);
  return out;
}

// When the relation lattice is Z r with r >= 0, L = N r and calF is a power
// series in z = L^r.  The quotient is then a dense univariate division.
std::optional<Point> ray_generator(const ExponentSet& A) {
  auto basis = relation_basis(A);
  if (basis.size() != 1) return std::nullopt;
  Point r = basis[0];
  if (std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x <= 0; }))
    for (auto& x : r) x = -x;
  if (!std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x >= 0; })) return std::nullopt;
  return r;
}

// q_0 .. q_K, flat with ring.stride() residues each.
std::vector<std::int64_t> ray_quotient(const Point& r, std::int64_t K, const RingSpec& ring) {
  const std::size_t st = ring.stride();
  const std::int64_t p = ring.p();
  std::int64_t rmax = 0;
  for (auto x : r) rmax = std::max(rmax, x);
  const auto table = pi_power_over_factorial_table(ring, static_cast<std::uint64_t>(rmax * K));
  std::vector<std::int64_t> num((K + 1) * st), q((K + 1) * st);
  for (std::int64_t k = 0; k <= K; ++k) {
    RingElem c = ring.one();
    for (auto ra : r)
      if (ra > 0) c *= table[ra * k];
    std::copy(c.data().begin(), c.data().end(), num.begin() + k * st);
  }
  // q_k = num_k - sum_{j >= 1} num_j q_{k - p j}
  const auto step = static_cast<std::ptrdiff_t>(st);
  for (std::int64_t k = 0; k <= K; ++k) {
    std::int64_t* out = q.data() + k * st;
    const std::int64_t J = k / p;
    if (J > 0)
      ring.dot_acc(static_cast<std::size_t>(J), num.data() + st, step, q.data() + (k - p) * st, -p * step, out);
    for (std::size_t i = 0; i < st; ++i) out[i] = mod_floor(num[k * st + i] - out[i], ring.modulus());
  }
  return q;
}

}  // namespace

MultiSeries calF_series(const ExponentSet& A, int degmax, const RingSpec& ring) {
  if (auto r = ray_generator(A)) {
    const std::int64_t rd = total_degree(*r);
    const std::int64_t K = degmax / rd;
    const auto q = ray_quotient(*r, K, ring);
    MultiSeries out(ring, A.size(), degmax);
    const std::size_t st = ring.stride();
    Point u(A.size());
    for (std::int64_t k = 0; k <= K; ++k) {
      RingElem c(ring);
      std::copy(q.begin() + k * st, q.begin() + (k + 1) * st, c.data().begin());
      for (std::size_t a = 0; a < u.size(); ++a) u[a] = k * (*r)[a];
      out.add_term(u, c);
    }
    return out;
  }
  return calF_series_general(A, degmax, ring);
}

namespace {

// Values of calF at the Frobenius orbit of the Teichmueller point, for
// several truncations of a single series.
class OrbitEvaluator {
 public:
  OrbitEvaluator(const LaurentSpec& spec, int degmax, const RingSpec& ring) : ring_(ring), s_(cycle_length(spec)) {
    std::vector<RingElem> cur = teichmueller_point(spec, ring);
    for (int i = 0; i < s_; ++i) {
      orbit_.push_back(cur);
      for (auto& x : cur) x = x.pow(static_cast<std::uint64_t>(spec.p));
    }
    ray_ = ray_generator(spec.A);
    if (ray_) {
      rdeg_ = total_degree(*ray_);
      q_ = ray_quotient(*ray_, degmax / rdeg_, ring);
    } else {
      general_ = calF_series(spec.A, degmax, ring);
    }
  }

  RingElem unit_root(int degmax) const {
    RingElem u = ring_.one();
    for (const auto& pt : orbit_) u *= value(pt, degmax);
    return u;
  }

 private:
  RingElem value(const std::vector<RingElem>& pt, int degmax) const {
    if (!ray_) return general_.truncated(degmax).evaluate(pt);
    RingElem z = ring_.one();
    for (std::size_t a = 0; a < pt.size(); ++a)
      if ((*ray_)[a] > 0) z *= pt[a].pow(static_cast<std::uint64_t>((*ray_)[a]));
    const std::size_t st = ring_.stride();
    RingElem acc(ring_), c(ring_);
    for (std::int64_t k = degmax / rdeg_; k >= 0; --k) {
      std::copy(q_.begin() + k * st, q_.begin() + (k + 1) * st, c.data().begin());
      acc = acc * z + c;
    }
    return acc;
  }

  RingSpec ring_;
  int s_;
  std::vector<std::vector<RingElem>> orbit_;
  std::optional<Point> ray_;
  std::int64_t rdeg_ = 1;
  std::vector<std::int64_t> q_;
  MultiSeries general_;
};

}  // namespace

RingElem unit_root_route_A(const LaurentSpec& spec, int degmax, const RingSpec& ring) {
  return OrbitEvaluator(spec, degmax, ring).unit_root(degmax);
}

RouteAResult unit_root_route_A_stable(const LaurentSpec& spec, std::optional<int> degmax, const RingSpec& ring) {
  RouteAResult res;
  if (degmax) {
    const int d = *degmax;
    if (d < 1) throw Error(ErrorKind::ConfigInvalid, "degmax must be >= 1");
    const OrbitEvaluator ev(spec, 2 * d, ring);
    res.u = ev.unit_root(d);
    res.degmax = d;
    res.tried = {d, 2 * d};
    res.stability = agreement(res.u, ev.unit_root(2 * d));
    if (!res.stability.capped)
      throw Error(ErrorKind::PrecisionUnstable, "route A truncations " + std::to_string(d) + " and " +
                                                    std::to_string(2 * d) + " agree only to ord " +
                                                    res.stability.str());
    return res;
  }
  // Coefficients of calF can dip in ord near degrees spaced by a factor p, so
  // a candidate d is accepted only when d, 2d, 4d, ... and p d all agree.
  const int p = static_cast<int>(spec.p);
  for (int d = kRouteAStartDegree; static_cast<std::int64_t>(d) * p <= kRouteAMaxDegree; d *= 2) {
    const OrbitEvaluator ev(spec, d * p, ring);
    const RingElem u = ev.unit_root(d);
    res.tried.push_back(d);
    bool ok = true;
    for (int e = 2 * d; ok; e = std::min(2 * e, d * p)) {
      res.tried.push_back(e);
      res.stability = agreement(u, ev.unit_root(e));
      ok = res.stability.capped;
      if (e == d * p) break;
    }
    if (ok) {
      res.u = u;
      res.degmax = d;
      return res;
    }
  }
  throw Error(ErrorKind::PrecisionUnstable, "route A did not stabilize below degree " +
                                                std::to_string(kRouteAMaxDegree) + " (last agreement " +
                                                res.stability.str() + ")");
}

RationalSeries hyperg_coefficient_rational(const ExponentSet& A, const Point& i, int degmax) {
  RationalSeries s;
  if (degmax < 0) return s;
  std::vector<BigRational> inv_fact{BigRational(1)};
  for (int k = 1; k <= degmax; ++k) inv_fact.push_back(inv_fact.back() / k);
  Decomposer dec(A);
  dec.for_each(i, degmax, [&](const Point& u) {
    BigRational c(1);
    for (auto ua : u) c *= inv_fact[ua];
    s.emplace(u, c);
  });
  return s;
}

namespace {

RationalSeries differentiate(const RationalSeries& s, std::size_t a, std::int64_t k) {
  RationalSeries r;
  for (const auto& [u, c] : s) {
    if (u[a] < k) continue;
    BigRational f = c;
    for (std::int64_t t = 0; t < k; ++t) f *= (u[a] - t);
    Point v = u;
    v[a] -= k;
    r[v] += f;
  }
  return r;
}

}  // namespace

AnnihilatorResidual check_annihilators(const ExponentSet& A, const Point& i, const Point& ell, int degmax) {
  if (ell.size() != A.size()) throw Error(ErrorKind::NotARelation, "relation has the wrong length");
  for (int j = 0; j < A.n; ++j) {
    std::int64_t s = 0;
    for (std::size_t a = 0; a < A.size(); ++a) s += ell[a] * A.vectors[a][j];
    if (s != 0) throw Error(ErrorKind::NotARelation, "sum of l_a a is nonzero");
  }
  const RationalSeries F = hyperg_coefficient_rational(A, i, degmax);
  RationalSeries pos = F, neg = F;
  std::int64_t lp = 0, ln = 0;
  for (std::size_t a = 0; a < A.size(); ++a) {
    if (ell[a] > 0) {
      pos = differentiate(pos, a, ell[a]);
      lp += ell[a];
    } else if (ell[a] < 0) {
      neg = differentiate(neg, a, -ell[a]);
      ln -= ell[a];
    }
  }
  AnnihilatorResidual res;
  res.box_degree = degmax - static_cast<int>(std::max(lp, ln));
  RationalSeries diff = pos;
  for (const auto& [u, c] : neg) diff[u] -= c;
  for (const auto& [u, c] : diff)
    if (total_degree(u) <= res.box_degree && c != 0) ++res.box_nonzero;
  res.euler_degree = degmax;
  for (int j = 0; j < A.n; ++j) {
    for (const auto& [u, c] : F) {
      std::int64_t w = -i[j];
      for (std::size_t a = 0; a < A.size(); ++a) w += A.vectors[a][j] * u[a];
      if (w != 0 && c != 0) ++res.euler_nonzero;
    }
  }
  return res;
}

bool generating_identity_check(const ExponentSet& A, const std::vector<Point>& indices, int degmax, bool perturb) {
  // keys: (u, X-exponent) concatenated
  using Key = std::pair<Point, Point>;
  std::map<Key, BigRational> cur;
  cur[{Point(A.size(), 0), Point(A.n, 0)}] = 1;
  for (std::size_t a = 0; a < A.size(); ++a) {
    std::map<Key, BigRational> next;
    for (const auto& [key, c] : cur) {
      const std::int64_t used = total_degree(key.first);
      BigRational f = c;
      for (std::int64_t k = 0; used + k <= degmax; ++k) {
        if (k > 0) f /= k;
        Point u = key.first;
        Point x = key.second;
        u[a] += k;
        for (int j = 0; j < A.n; ++j) x[j] += k * A.vectors[a][j];
        next[{u, x}] += f;
      }
    }
    cur = std::move(next);
  }
  if (perturb && !cur.empty()) cur.begin()->second += 1;
  for (const auto& i : indices) {
    RationalSeries direct;
    for (const auto& [key, c] : cur)
      if (key.second == i && c != 0) direct[key.first] += c;
    if (direct != hyperg_coefficient_rational(A, i, degmax)) return false;
  }
  return true;
}

}  // namespace unitroot
