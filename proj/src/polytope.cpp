#include "unitroot/polytope.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "unitroot/error.hpp"

namespace unitroot {

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

std::int64_t det_int(std::vector<Point> m) {
  // Bareiss fraction-free elimination
  const int k = static_cast<int>(m.size());
  if (k == 0) return 1;
  std::int64_t sign = 1, prev = 1;
  for (int i = 0; i < k; ++i) {
    if (m[i][i] == 0) {
      int r = i + 1;
      while (r < k && m[r][i] == 0) ++r;
      if (r == k) return 0;
      std::swap(m[i], m[r]);
      sign = -sign;
    }
    for (int r = i + 1; r < k; ++r) {
      for (int c = i + 1; c < k; ++c) {
        const __int128 v = static_cast<__int128>(m[r][c]) * m[i][i] - static_cast<__int128>(m[r][i]) * m[i][c];
        m[r][c] = static_cast<std::int64_t>(v / prev);
      }
      m[r][i] = 0;
    }
    prev = m[i][i];
  }
  return sign * m[k - 1][k - 1];
}

std::int64_t dot(const Point& a, const Point& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const std::vector<Rational>& a, const Point& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void for_each_subset(int total, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > total) return;
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == total - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

// Solves m x = b exactly; returns false if m is singular.
bool solve_rational(RMatrix m, std::vector<Rational> b, std::vector<Rational>& x) {
  const int k = static_cast<int>(m.size());
  for (int c = 0; c < k; ++c) {
    int r = c;
    while (r < k && m[r][c] == Rational(0)) ++r;
    if (r == k) return false;
    std::swap(m[r], m[c]);
    std::swap(b[r], b[c]);
    for (int i = 0; i < k; ++i) {
      if (i == c || m[i][c] == Rational(0)) continue;
      const Rational f = m[i][c] / m[c][c];
      for (int j = c; j < k; ++j) m[i][j] -= f * m[c][j];
      b[i] -= f * b[c];
    }
  }
  x.resize(k);
  for (int i = 0; i < k; ++i) x[i] = b[i] / m[i][i];
  return true;
}

Point primitive(Point v) {
  std::int64_t g = 0;
  for (auto c : v) g = std::gcd(g, c);
  if (g > 1)
    for (auto& c : v) c /= g;
  return v;
}

}  // namespace

int rank(const std::vector<Point>& rows, int n) {
  RMatrix m;
  for (const auto& r : rows) m.emplace_back(r.begin(), r.end());
  int rk = 0;
  for (int c = 0; c < n && rk < static_cast<int>(m.size()); ++c) {
    int r = rk;
    while (r < static_cast<int>(m.size()) && m[r][c] == Rational(0)) ++r;
    if (r == static_cast<int>(m.size())) continue;
    std::swap(m[r], m[rk]);
    for (std::size_t i = rk + 1; i < m.size(); ++i) {
      const Rational f = m[i][c] / m[rk][c];
      for (int j = c; j < n; ++j) m[i][j] -= f * m[rk][j];
    }
    ++rk;
  }
  return rk;
}

std::vector<Point> integer_kernel(const std::vector<Point>& rows, int n) {
  std::vector<Point> m = rows;
  std::vector<Point> u(n, Point(n, 0));
  for (int i = 0; i < n; ++i) u[i][i] = 1;
  // column operations act on m (columns c) and u (columns c) together
  auto col_axpy = [&](int dst, int src, std::int64_t q) {
    for (auto& r : m) r[dst] -= q * r[src];
    for (auto& r : u) r[dst] -= q * r[src];
  };
  auto col_swap = [&](int a, int b) {
    for (auto& r : m) std::swap(r[a], r[b]);
    for (auto& r : u) std::swap(r[a], r[b]);
  };
  int piv = 0;
  for (std::size_t i = 0; i < m.size() && piv < n; ++i) {
    for (int j = piv + 1; j < n; ++j) {
      while (m[i][j] != 0) {
        col_axpy(piv, j, m[i][piv] / m[i][j]);
        col_swap(piv, j);
      }
    }
    if (m[i][piv] != 0) ++piv;
  }
  std::vector<Point> basis;
  for (int c = piv; c < n; ++c) {
    Point v(n);
    for (int r = 0; r < n; ++r) v[r] = u[r][c];
    auto first = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
    if (first != v.end() && *first < 0)
      for (auto& x : v) x = -x;
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Point> relation_basis(const ExponentSet& A) {
  std::vector<Point> rows(A.n, Point(A.size()));
  for (std::size_t a = 0; a < A.size(); ++a)
    for (int j = 0; j < A.n; ++j) rows[j][a] = A.vectors[a][j];
  return integer_kernel(rows, static_cast<int>(A.size()));
}

ExponentSet::ExponentSet(int n_, std::vector<Point> vecs) : n(n_), vectors(std::move(vecs)) {
  if (n < 1) throw Error(ErrorKind::ConfigInvalid, "dimension n must be >= 1");
  std::set<Point> seen;
  for (const auto& v : vectors) {
    if (static_cast<int>(v.size()) != n) throw Error(ErrorKind::ConfigInvalid, "exponent vector of wrong length");
    if (!seen.insert(v).second) throw Error(ErrorKind::ConfigInvalid, "duplicate exponent vector");
  }
  if (rank(vectors, n) < n) throw Error(ErrorKind::NotSpanning, "exponent set does not span R^n");
}

WeightData build_weight_data(const ExponentSet& A) {
  const int n = A.n;
  const int k = static_cast<int>(A.size());
  WeightData W;
  W.A = A;

  std::set<std::vector<Rational>> facets;
  for_each_subset(k, n, [&](const std::vector<int>& idx) {
    RMatrix m;
    for (int i : idx) m.emplace_back(A.vectors[i].begin(), A.vectors[i].end());
    std::vector<Rational> l;
    if (!solve_rational(m, std::vector<Rational>(n, Rational(1)), l)) return;
    for (const auto& a : A.vectors)
      if (dot(l, a) > 1) return;
    facets.insert(l);
  });
  W.facet_forms.assign(facets.begin(), facets.end());

  std::set<Point> cones;
  for_each_subset(k, n - 1, [&](const std::vector<int>& idx) {
    std::vector<Point> sub;
    for (int i : idx) sub.push_back(A.vectors[i]);
    if (rank(sub, n) != n - 1) return;
    Point c(n);
    for (int j = 0; j < n; ++j) {
      std::vector<Point> minor;
      for (const auto& r : sub) {
        Point row;
        for (int t = 0; t < n; ++t)
          if (t != j) row.push_back(r[t]);
        minor.push_back(row);
      }
      c[j] = ((j % 2) ? -1 : 1) * det_int(minor);
    }
    c = primitive(c);
    bool pos = false, neg = false;
    for (const auto& a : A.vectors) {
      const auto v = dot(c, a);
      pos |= v > 0;
      neg |= v < 0;
    }
    if (pos && neg) return;
    if (pos)
      for (auto& x : c) x = -x;
    cones.insert(c);
  });
  W.cone_inequalities.assign(cones.begin(), cones.end());

  W.D = 1;
  for (const auto& l : W.facet_forms)
    for (const auto& c : l) W.D = std::lcm(W.D, c.denominator());
  for (const auto& l : W.facet_forms) {
    Point s(n);
    for (int j = 0; j < n; ++j) s[j] = (l[j] * W.D).numerator();
    W.scaled_forms.push_back(s);
  }
  W.lineality_basis = integer_kernel(W.cone_inequalities, n);
  return W;
}

bool in_cone(const WeightData& W, const Point& nu) {
  return std::all_of(W.cone_inequalities.begin(), W.cone_inequalities.end(),
                     [&](const Point& c) { return dot(c, nu) <= 0; });
}

bool in_lineality(const WeightData& W, const Point& nu) {
  return std::all_of(W.cone_inequalities.begin(), W.cone_inequalities.end(),
                     [&](const Point& c) { return dot(c, nu) == 0; });
}

std::int64_t scaled_weight(const WeightData& W, const Point& nu) {
  std::int64_t best = 0;
  for (const auto& s : W.scaled_forms) best = std::max(best, dot(s, nu));
  return best;
}

Rational weight(const WeightData& W, const Point& nu) {
  if (!in_cone(W, nu)) throw Error(ErrorKind::OutsideCone, "lattice point is outside the cone");
  return Rational(scaled_weight(W, nu), W.D);
}

namespace {

// Is nu = sum lambda_a a with lambda >= 0 and sum lambda <= c?  Decided on the
// basic solutions of [A 0; 1 1](lambda, s) = (nu, c).
bool in_scaled_polytope(const ExponentSet& A, const Point& nu, Rational c) {
  const int n = A.n;
  const int cols = static_cast<int>(A.size()) + 1;
  bool found = false;
  for_each_subset(cols, n + 1, [&](const std::vector<int>& idx) {
    if (found) return;
    RMatrix m(n + 1, std::vector<Rational>(n + 1));
    for (int jj = 0; jj <= n; ++jj) {
      const int col = idx[jj];
      for (int i = 0; i < n; ++i) m[i][jj] = col < cols - 1 ? A.vectors[col][i] : 0;
      m[n][jj] = 1;
    }
    std::vector<Rational> rhs(nu.begin(), nu.end());
    rhs.push_back(c);
    std::vector<Rational> x;
    if (!solve_rational(m, rhs, x)) return;
    if (std::all_of(x.begin(), x.end(), [](const Rational& v) { return v >= 0; })) found = true;
  });
  return found;
}

}  // namespace

Rational definitional_weight(const WeightData& W, const Point& nu) {
  if (!in_cone(W, nu)) throw Error(ErrorKind::OutsideCone, "lattice point is outside the cone");
  std::int64_t hi = 1;
  while (!in_scaled_polytope(W.A, nu, Rational(hi, W.D))) hi *= 2;
  std::int64_t lo = -1;  // invariant: lo/D fails (or lo < 0), hi/D passes
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (in_scaled_polytope(W.A, nu, Rational(mid, W.D)))
      hi = mid;
    else
      lo = mid;
  }
  return Rational(hi, W.D);
}

std::vector<Point> enumerate_weighted_monomials(const WeightData& W, Rational wmax) {
  const int n = W.n();
  if (wmax < 0) return {};
  const std::int64_t limit = (wmax * W.D).numerator() / (wmax * W.D).denominator();
  std::vector<std::int64_t> lo(n), hi(n);
  for (int j = 0; j < n; ++j) {
    std::int64_t mn = 0, mx = 0;
    for (const auto& a : W.A.vectors) {
      mn = std::min(mn, a[j]);
      mx = std::max(mx, a[j]);
    }
    const Rational rl = wmax * mn, rh = wmax * mx;
    lo[j] = boost::rational_cast<std::int64_t>(rl) - 1;
    hi[j] = boost::rational_cast<std::int64_t>(rh) + 1;
  }
  std::vector<std::pair<std::int64_t, Point>> found;
  Point cur(n);
  std::function<void(int)> rec = [&](int j) {
    if (j == n) {
      if (in_cone(W, cur)) {
        const auto w = scaled_weight(W, cur);
        if (w <= limit) found.emplace_back(w, cur);
      }
      return;
    }
    for (std::int64_t v = lo[j]; v <= hi[j]; ++v) {
      cur[j] = v;
      rec(j + 1);
    }
  };
  rec(0);
  std::sort(found.begin(), found.end());
  std::vector<Point> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

Decomposer::Decomposer(const ExponentSet& A) : A_(A) {
  const int n = A.n;
  std::vector<Point> chosen;
  for (int i = 0; i < static_cast<int>(A.size()); ++i) {
    auto trial = chosen;
    trial.push_back(A.vectors[i]);
    if (static_cast<int>(chosen.size()) < n && rank(trial, n) == static_cast<int>(trial.size())) {
      chosen = std::move(trial);
      basis_.push_back(i);
    } else {
      free_.push_back(i);
    }
  }
  // B has the basis vectors as columns; adj(B) B = det(B) I
  std::vector<Point> B(n, Point(n));
  for (int c = 0; c < n; ++c)
    for (int r = 0; r < n; ++r) B[r][c] = A.vectors[basis_[c]][r];
  det_ = det_int(B);
  adj_.assign(n, Point(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<Point> minor;
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;
        Point row;
        for (int c = 0; c < n; ++c)
          if (c != i) row.push_back(B[r][c]);
        minor.push_back(row);
      }
      adj_[i][j] = (((i + j) % 2) ? -1 : 1) * det_int(minor);
    }
}

void Decomposer::enumerate(const Point& mu, std::int64_t max_total,
                           const std::function<void(const Point&)>& f) const {
  const int n = A_.n;
  const int nf = static_cast<int>(free_.size());
  Point nu(A_.size(), 0);
  Point rhs = mu;
  std::function<void(int, std::int64_t)> rec = [&](int k, std::int64_t used) {
    if (k == nf) {
      std::int64_t total = used;
      Point x(n);
      for (int i = 0; i < n; ++i) {
        const std::int64_t s = dot(adj_[i], rhs);
        if (s % det_ != 0) return;
        x[i] = s / det_;
        if (x[i] < 0) return;
        total += x[i];
      }
      if (total > max_total) return;
      for (int i = 0; i < n; ++i) nu[basis_[i]] = x[i];
      f(nu);
      return;
    }
    const auto& a = A_.vectors[free_[k]];
    for (std::int64_t v = 0; used + v <= max_total; ++v) {
      nu[free_[k]] = v;
      rec(k + 1, used + v);
      for (int j = 0; j < n; ++j) rhs[j] -= a[j];
    }
    for (std::int64_t v = 0; used + v <= max_total; ++v)
      for (int j = 0; j < n; ++j) rhs[j] += a[j];
    nu[free_[k]] = 0;
  };
  rec(0, 0);
}

std::vector<Point> Decomposer::solve(const Point& mu, std::int64_t max_total) const {
  std::vector<Point> out;
  enumerate(mu, max_total, [&](const Point& nu) { out.push_back(nu); });
  return out;
}

}  // namespace unitroot
