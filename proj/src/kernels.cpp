#include "unitroot/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <stdexcept>

namespace unitroot {

RingMatrix::RingMatrix(RingSpec ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), stride_(ring_.stride()), data_(rows * cols * stride_, 0) {}

RingMatrix RingMatrix::identity(const RingSpec& ring, std::size_t n) {
  RingMatrix m(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i)[0] = 1;
  return m;
}

bool RingMatrix::is_zero(std::size_t i, std::size_t j) const {
  const std::int64_t* e = at(i, j);
  return std::all_of(e, e + stride_, [](std::int64_t v) { return v == 0; });
}

RingElem RingMatrix::get(std::size_t i, std::size_t j) const {
  RingElem r(ring_);
  std::copy_n(at(i, j), stride_, r.data().begin());
  return r;
}

void RingMatrix::set(std::size_t i, std::size_t j, const RingElem& v) {
  std::copy_n(v.data().begin(), stride_, at(i, j));
}

RingMatrix RingMatrix::transposed() const {
  RingMatrix t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) std::copy_n(at(i, j), stride_, t.at(j, i));
  return t;
}

int max_threads() { return omp_get_max_threads(); }

namespace {

void check_mul(const RingMatrix& a, const RingMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: dimension mismatch");
}

void matmul_row(const RingMatrix& a, const RingMatrix& b, RingMatrix& c, std::size_t i) {
  const RingSpec& R = a.ring();
  const auto st = static_cast<std::ptrdiff_t>(R.stride());
  const auto bstep = static_cast<std::ptrdiff_t>(b.cols()) * st;
  for (std::size_t j = 0; j < b.cols(); ++j) R.dot_acc(a.cols(), a.at(i, 0), st, b.at(0, j), bstep, c.at(i, j));
}

std::vector<RingElem> matvec_impl(const RingMatrix& m, const std::vector<RingElem>& v, bool par) {
  if (m.cols() != v.size()) throw std::invalid_argument("matvec: dimension mismatch");
  const RingSpec& R = m.ring();
  std::vector<RingElem> out(m.rows(), R.zero());
  const auto rows = static_cast<std::int64_t>(m.rows());
#pragma omp parallel for schedule(dynamic, 8) if (par)
  for (std::int64_t i = 0; i < rows; ++i) {
    std::int64_t* acc = out[i].data().data();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m.is_zero(i, j)) continue;
      R.mul_acc(m.at(i, j), v[j].data().data(), acc);
    }
  }
  return out;
}

// Berkowitz: with A_k = [[A_{k-1}, S], [R, a]], the coefficient vector of
// det(x - A_k) (decreasing powers) is the Toeplitz product of
// (1, -a, -RS, -RAS, -RA^2S, ...) with that of A_{k-1}.
std::vector<RingElem> fredholm_impl(const RingMatrix& m, std::size_t K, bool par) {
  if (m.rows() != m.cols()) throw std::invalid_argument("fredholm_coefficients: matrix not square");
  const RingSpec& R = m.ring();
  const std::size_t n = m.rows();
  const std::size_t st = R.stride();
  const auto sst = static_cast<std::ptrdiff_t>(st);
  const auto mstep = static_cast<std::ptrdiff_t>(n * st);
  std::vector<RingElem> c{R.one()};
  std::vector<std::int64_t> v, w;
  for (std::size_t k = 1; k <= n; ++k) {
    const std::size_t r = k - 1;  // index of the new row/column
    const std::size_t tlen = std::min(K, k) + 1;
    std::vector<RingElem> t(tlen, R.zero());
    t[0] = R.one();
    if (tlen > 1) t[1] = -m.get(r, r);
    if (tlen > 2) {
      v.assign(r * st, 0);
      for (std::size_t i = 0; i < r; ++i) std::copy_n(m.at(r, i), st, &v[i * st]);
      for (std::size_t j = 2; j < tlen; ++j) {
        RingElem acc = R.zero();
        R.dot_acc(r, v.data(), sst, m.at(0, r), mstep, acc.data().data());
        t[j] = -acc;
        if (j + 1 == tlen) break;
        // v <- v * A_{k-1}
        w.assign(r * st, 0);
        const auto cols = static_cast<std::int64_t>(r);
#pragma omp parallel for schedule(static) if (par && r >= 64)
        for (std::int64_t col = 0; col < cols; ++col) {
          R.dot_acc(r, v.data(), sst, m.at(0, col), mstep, &w[col * st]);
        }
        v.swap(w);
      }
    }
    const std::size_t clen = std::min(K, k) + 1;
    std::vector<RingElem> nc(clen, R.zero());
    for (std::size_t i = 0; i < clen; ++i)
      for (std::size_t j = 0; j <= i && j < tlen; ++j)
        if (i - j < c.size()) nc[i] += t[j] * c[i - j];
    c = std::move(nc);
  }
  c.resize(K + 1, R.zero());
  return c;
}

// Walks x = (g^k_1, ..., g^k_n) with incremental exponent indices.
void torus_walk(const TorusProblem& t, int dim, std::vector<std::uint64_t>& idx,
                const std::vector<std::vector<std::uint64_t>>& step, std::vector<std::uint64_t>& counts) {
  const std::uint64_t G = t.group_order;
  const std::size_t terms = idx.size();
  if (dim == t.n - 1) {
    std::vector<std::uint64_t> cur = idx;
    for (std::uint64_t k = 0; k < G; ++k) {
      unsigned s = 0;
      for (std::size_t a = 0; a < terms; ++a) {
        s += t.trace[cur[a]];
        cur[a] += step[dim][a];
        if (cur[a] >= G) cur[a] -= G;
      }
      ++counts[s % static_cast<unsigned>(t.p)];
    }
    return;
  }
  std::vector<std::uint64_t> cur = idx;
  for (std::uint64_t k = 0; k < G; ++k) {
    torus_walk(t, dim + 1, cur, step, counts);
    for (std::size_t a = 0; a < terms; ++a) {
      cur[a] += step[dim][a];
      if (cur[a] >= G) cur[a] -= G;
    }
  }
}

std::vector<std::vector<std::uint64_t>> torus_steps(const TorusProblem& t) {
  const auto G = static_cast<std::int64_t>(t.group_order);
  std::vector<std::vector<std::uint64_t>> step(t.n, std::vector<std::uint64_t>(t.exponents.size()));
  for (int j = 0; j < t.n; ++j)
    for (std::size_t a = 0; a < t.exponents.size(); ++a)
      step[j][a] = static_cast<std::uint64_t>(mod_floor(t.exponents[a][j], G));
  return step;
}

}  // namespace

namespace serial {

RingMatrix matmul(const RingMatrix& a, const RingMatrix& b) {
  check_mul(a, b);
  RingMatrix c(a.ring(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) matmul_row(a, b, c, i);
  return c;
}

std::vector<RingElem> matvec(const RingMatrix& m, const std::vector<RingElem>& v) { return matvec_impl(m, v, false); }

std::vector<RingElem> fredholm_coefficients(const RingMatrix& m, std::size_t K) { return fredholm_impl(m, K, false); }

std::vector<std::uint64_t> torus_counts(const TorusProblem& t) {
  std::vector<std::uint64_t> counts(t.p, 0);
  if (t.exponents.empty()) {
    std::uint64_t total = 1;
    for (int j = 0; j < t.n; ++j) total *= t.group_order;
    counts[0] = total;
    return counts;
  }
  std::vector<std::uint64_t> idx(t.offsets);
  torus_walk(t, 0, idx, torus_steps(t), counts);
  return counts;
}

}  // namespace serial

namespace parallel {

RingMatrix matmul(const RingMatrix& a, const RingMatrix& b) {
  check_mul(a, b);
  RingMatrix c(a.ring(), a.rows(), b.cols());
  const auto rows = static_cast<std::int64_t>(a.rows());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < rows; ++i) matmul_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}

std::vector<RingElem> matvec(const RingMatrix& m, const std::vector<RingElem>& v) { return matvec_impl(m, v, true); }

std::vector<RingElem> fredholm_coefficients(const RingMatrix& m, std::size_t K) { return fredholm_impl(m, K, true); }

std::vector<std::uint64_t> torus_counts(const TorusProblem& t) {
  if (t.exponents.empty() || t.n == 1) return serial::torus_counts(t);
  const auto step = torus_steps(t);
  const std::uint64_t G = t.group_order;
  const std::size_t terms = t.exponents.size();
  std::vector<std::uint64_t> counts(t.p, 0);
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(t.p, 0);
    std::vector<std::uint64_t> idx(terms);
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t k0 = 0; k0 < static_cast<std::int64_t>(G); ++k0) {
      for (std::size_t a = 0; a < terms; ++a)
        idx[a] = (t.offsets[a] + static_cast<std::uint64_t>(k0) * step[0][a]) % G;
      torus_walk(t, 1, idx, step, local);
    }
#pragma omp critical
    for (std::int64_t c = 0; c < t.p; ++c) counts[c] += local[c];
  }
  return counts;
}

}  // namespace parallel

}  // namespace unitroot
