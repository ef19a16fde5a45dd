#include "unitroot/padic.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "unitroot/error.hpp"

namespace unitroot {

namespace detail {

struct RingData {
  std::int64_t p;
  int m;
  int N;
  int e;  // p - 1
  std::int64_t modulus;
  std::vector<std::int64_t> g;  // monic, length m+1, mod p^N
  FpPoly g_res;
  GaloisField field;

  RingData(std::int64_t p_, int m_, std::vector<std::int64_t> g_, int N_)
      : p(p_), m(m_), N(N_), e(static_cast<int>(p_ - 1)), modulus(1), g(std::move(g_)),
        g_res(fp::normalize(g, p_)), field(p_, g_res) {
    for (int i = 0; i < N; ++i) modulus *= p;
    for (auto& c : g) c = mod_floor(c, modulus);
  }
};

}  // namespace detail

namespace {

constexpr int kMaxPiDegree = 30;
constexpr int kMaxTDegree = 12;

inline std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

inline std::int64_t addmod(std::int64_t a, std::int64_t b, std::int64_t m) {
  std::int64_t s = a + b;
  return s >= m ? s - m : s;
}

std::int64_t vp(std::int64_t x, std::int64_t p) {
  std::int64_t v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

}  // namespace

std::string RationalVal::str() const {
  std::ostringstream os;
  if (capped) os << ">=";
  os << value.numerator();
  if (value.denominator() != 1) os << "/" << value.denominator();
  return os.str();
}

RationalVal min(const RationalVal& a, const RationalVal& b) {
  if (a.value < b.value) return a;
  if (b.value < a.value) return b;
  return a.capped ? b : a;
}

std::int64_t RingSpec::p() const { return d_->p; }
int RingSpec::degree() const { return d_->m; }
int RingSpec::precision() const { return d_->N; }
std::int64_t RingSpec::modulus() const { return d_->modulus; }
int RingSpec::pi_degree() const { return d_->e; }
std::size_t RingSpec::stride() const { return static_cast<std::size_t>(d_->e) * d_->m; }
const std::vector<std::int64_t>& RingSpec::defining_polynomial() const { return d_->g; }
const FpPoly& RingSpec::residue_polynomial() const { return d_->g_res; }
const GaloisField& RingSpec::residue_field() const { return d_->field; }

RingElem RingSpec::zero() const { return RingElem(*this); }

RingElem RingSpec::one() const { return from_int(1); }

RingElem RingSpec::pi() const {
  RingElem x(*this);
  if (d_->e == 1) {
    x.set_coeff(0, 0, mod_floor(-d_->p, d_->modulus));  // p = 2: pi = -2
  } else {
    x.set_coeff(1, 0, 1);
  }
  return x;
}

RingElem RingSpec::from_int(std::int64_t v) const {
  RingElem x(*this);
  x.set_coeff(0, 0, mod_floor(v, d_->modulus));
  return x;
}

RingElem RingSpec::from_zq(std::span<const std::int64_t> t_coeffs) const {
  RingElem x(*this);
  // reduce polynomials of any degree via g
  std::vector<std::int64_t> r(std::max<std::size_t>(t_coeffs.size(), d_->m), 0);
  for (std::size_t i = 0; i < t_coeffs.size(); ++i) r[i] = mod_floor(t_coeffs[i], d_->modulus);
  for (int k = static_cast<int>(r.size()) - 1; k >= d_->m; --k) {
    const std::int64_t c = r[k];
    r[k] = 0;
    for (int i = 0; i < d_->m; ++i)
      r[k - d_->m + i] = mod_floor(r[k - d_->m + i] - mulmod(c, d_->g[i], d_->modulus), d_->modulus);
  }
  for (int k = 0; k < d_->m; ++k) x.set_coeff(0, k, r[k]);
  return x;
}

namespace {

using Wide = unsigned __int128;
using WideBuf = std::array<Wide, (2 * kMaxPiDegree - 1) * (2 * kMaxTDegree - 1)>;

// raw += a * b as polynomials in (pi, t), without any reduction
inline void raw_product(const detail::RingData& d, const std::int64_t* a, const std::int64_t* b, Wide* raw) {
  const int e = d.e, m = d.m, tw = 2 * m - 1;
  for (int j1 = 0; j1 < e; ++j1) {
    for (int k1 = 0; k1 < m; ++k1) {
      const auto x = static_cast<Wide>(a[j1 * m + k1]);
      if (x == 0) continue;
      for (int j2 = 0; j2 < e; ++j2) {
        const std::int64_t* brow = b + j2 * m;
        Wide* arow = &raw[(j1 + j2) * tw + k1];
        for (int k2 = 0; k2 < m; ++k2) arow[k2] += x * static_cast<std::uint64_t>(brow[k2]);
      }
    }
  }
}

// Reduces a raw product mod p^N, g(t) and pi^e = -p.
void reduce_raw(const detail::RingData& d, const Wide* raw, std::int64_t* out) {
  const int e = d.e, m = d.m;
  const std::int64_t Q = d.modulus;
  const int tw = 2 * m - 1;
  const int pw = 2 * e - 1;
  std::array<std::int64_t, (2 * kMaxPiDegree - 1) * (2 * kMaxTDegree - 1)> r;
  for (int i = 0; i < pw * tw; ++i) r[i] = static_cast<std::int64_t>(raw[i] % static_cast<Wide>(Q));
  // t^m = -(g_0 + ... + g_{m-1} t^{m-1})
  if (m > 1) {
    for (int j = 0; j < pw; ++j) {
      std::int64_t* row = &r[j * tw];
      for (int k = tw - 1; k >= m; --k) {
        const std::int64_t c = row[k];
        if (c == 0) continue;
        row[k] = 0;
        for (int i = 0; i < m; ++i) {
          row[k - m + i] = mod_floor(row[k - m + i] - mulmod(c, d.g[i], Q), Q);
        }
      }
    }
  }
  // pi^e = -p
  const std::int64_t minus_p = mod_floor(-d.p, Q);
  for (int j = pw - 1; j >= e; --j) {
    for (int k = 0; k < m; ++k) {
      const std::int64_t c = r[j * tw + k];
      if (c == 0) continue;
      r[(j - e) * tw + k] = addmod(r[(j - e) * tw + k], mulmod(c, minus_p, Q), Q);
    }
  }
  for (int j = 0; j < e; ++j)
    for (int k = 0; k < m; ++k) out[j * m + k] = r[j * tw + k];
}

// Number of raw products that fit in a Wide cell before it must be reduced.
std::size_t raw_batch(const detail::RingData& d) {
  const Wide q = static_cast<Wide>(d.modulus - 1);
  const Wide per = q * q * static_cast<Wide>(std::min(d.e, d.m) * std::min(d.e, d.m));
  const Wide cap = ~Wide{0} / 2;
  return static_cast<std::size_t>(std::min<Wide>(cap / std::max<Wide>(per, 1), 1u << 20));
}

}  // namespace

void RingSpec::mul(const std::int64_t* a, const std::int64_t* b, std::int64_t* out) const {
  const auto& d = *d_;
  if (d.e == 1 && d.m == 1) {
    out[0] = mulmod(a[0], b[0], d.modulus);
    return;
  }
  WideBuf raw;
  std::fill_n(raw.begin(), (2 * d.e - 1) * (2 * d.m - 1), 0);
  raw_product(d, a, b, raw.data());
  reduce_raw(d, raw.data(), out);
}

void RingSpec::dot_acc(std::size_t count, const std::int64_t* a, std::ptrdiff_t a_step, const std::int64_t* b,
                       std::ptrdiff_t b_step, std::int64_t* acc) const {
  const auto& d = *d_;
  const std::size_t cells = static_cast<std::size_t>((2 * d.e - 1) * (2 * d.m - 1));
  const std::size_t batch = raw_batch(d);
  WideBuf raw;
  std::fill_n(raw.begin(), cells, 0);
  std::size_t since = 0;
  for (std::size_t i = 0; i < count; ++i, a += a_step, b += b_step) {
    raw_product(d, a, b, raw.data());
    if (++since == batch) {
      for (std::size_t c = 0; c < cells; ++c) raw[c] %= static_cast<Wide>(d.modulus);
      since = 0;
    }
  }
  std::array<std::int64_t, kMaxPiDegree * kMaxTDegree> tmp;
  reduce_raw(d, raw.data(), tmp.data());
  add_into(tmp.data(), acc);
}

void RingSpec::mul_acc(const std::int64_t* a, const std::int64_t* b, std::int64_t* acc) const {
  std::array<std::int64_t, kMaxPiDegree * kMaxTDegree> tmp;
  mul(a, b, tmp.data());
  add_into(tmp.data(), acc);
}

void RingSpec::add_into(const std::int64_t* a, std::int64_t* acc) const {
  const std::size_t s = stride();
  const std::int64_t Q = d_->modulus;
  for (std::size_t i = 0; i < s; ++i) acc[i] = addmod(acc[i], a[i], Q);
}

RingSpec make_ring(std::int64_t p, int m, std::optional<std::vector<std::int64_t>> g, int N) {
  if (!is_prime(p)) throw Error(ErrorKind::CompositeP, std::to_string(p) + " is not prime");
  if (m < 1) throw std::invalid_argument("make_ring: degree m must be >= 1");
  if (N < 1) throw std::invalid_argument("make_ring: precision N must be >= 1");
  if (p - 1 > kMaxPiDegree || m > kMaxTDegree)
    throw std::invalid_argument("make_ring: p or m exceeds the supported size");
  long double bound = 1;
  for (int i = 0; i < N; ++i) bound *= static_cast<long double>(p);
  if (bound > static_cast<long double>(std::int64_t{1} << 60))
    throw std::invalid_argument("make_ring: p^N exceeds 2^60");
  // a raw product cell holds up to min(p-1, m)^2 terms below (p^N)^2
  const long double cell = bound * bound * std::min<long double>(p - 1, m) * std::min<long double>(p - 1, m);
  if (cell >= 1.7e38L) throw std::invalid_argument("make_ring: p^N too large for this p and m");
  std::vector<std::int64_t> poly;
  if (g) {
    poly = *g;
    if (static_cast<int>(poly.size()) != m + 1 || poly.back() != 1)
      throw std::invalid_argument("make_ring: g must be monic of degree m");
    if (!fp::is_irreducible(poly, p))
      throw Error(ErrorKind::ReduciblePolynomial, "defining polynomial is reducible mod p");
  } else {
    poly = fp::find_irreducible(p, m);
  }
  RingSpec r;
  r.d_ = std::make_shared<const detail::RingData>(p, m, std::move(poly), N);
  return r;
}

RingElem::RingElem(const RingSpec& ring) : ring_(ring), c_(ring.stride(), 0) {}

std::int64_t RingElem::coeff(int pi_deg, int t_deg) const { return c_[pi_deg * ring_.degree() + t_deg]; }

void RingElem::set_coeff(int pi_deg, int t_deg, std::int64_t v) {
  c_[pi_deg * ring_.degree() + t_deg] = mod_floor(v, ring_.modulus());
}

bool RingElem::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](std::int64_t v) { return v == 0; });
}

bool RingElem::is_unit() const {
  const std::int64_t p = ring_.p();
  for (int k = 0; k < ring_.degree(); ++k)
    if (c_[k] % p != 0) return true;
  return false;
}

RationalVal RingElem::valuation() const {
  const int e = ring_.pi_degree(), m = ring_.degree();
  const std::int64_t p = ring_.p();
  std::int64_t best = std::numeric_limits<std::int64_t>::max();  // in units of 1/e
  for (int j = 0; j < e; ++j)
    for (int k = 0; k < m; ++k) {
      const std::int64_t c = c_[j * m + k];
      if (c == 0) continue;
      best = std::min(best, vp(c, p) * e + j);
    }
  if (best == std::numeric_limits<std::int64_t>::max())
    return RationalVal::at_least(Rational(ring_.precision()));
  return RationalVal::exact(Rational(best, e));
}

RingElem RingElem::operator-() const {
  RingElem r(ring_);
  const std::int64_t Q = ring_.modulus();
  for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] == 0 ? 0 : Q - c_[i];
  return r;
}

RingElem& RingElem::operator+=(const RingElem& o) {
  const std::int64_t Q = ring_.modulus();
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = addmod(c_[i], o.c_[i], Q);
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& o) {
  const std::int64_t Q = ring_.modulus();
  for (std::size_t i = 0; i < c_.size(); ++i) {
    const std::int64_t v = c_[i] - o.c_[i];
    c_[i] = v < 0 ? v + Q : v;
  }
  return *this;
}

RingElem operator*(const RingElem& a, const RingElem& b) {
  RingElem r(a.ring_);
  a.ring_.mul(a.c_.data(), b.c_.data(), r.c_.data());
  return r;
}

RingElem& RingElem::operator*=(const RingElem& o) {
  *this = *this * o;
  return *this;
}

RingElem RingElem::pow(std::uint64_t e) const {
  RingElem result = ring_.one();
  RingElem base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

GaloisField::Elem RingElem::residue() const {
  const std::int64_t p = ring_.p();
  GaloisField::Elem r(ring_.degree());
  for (int k = 0; k < ring_.degree(); ++k) r[k] = c_[k] % p;
  return r;
}

RingElem RingElem::inverse() const {
  if (!is_unit()) throw Error(ErrorKind::NonUnitDivision, "inverse of a non-unit");
  const auto& field = ring_.residue_field();
  const auto r0 = field.inverse(residue());
  RingElem y = ring_.from_zq(r0);
  const RingElem two = ring_.from_int(2);
  const RingElem one = ring_.one();
  for (int it = 0; it < 128; ++it) {
    const RingElem xy = *this * y;
    if (xy == one) return y;
    y = y * (two - xy);
  }
  throw std::logic_error("RingElem::inverse: Newton iteration did not converge");
}

std::vector<std::vector<std::int64_t>> RingElem::pi_adic_digits() const {
  const int e = ring_.pi_degree(), m = ring_.degree();
  const std::int64_t p = ring_.p();
  const std::int64_t Q = ring_.modulus();
  const int total = ring_.precision() * e;
  std::vector<std::vector<std::int64_t>> digits;
  digits.reserve(total);
  std::vector<std::int64_t> x = c_;
  for (int step = 0; step < total; ++step) {
    std::vector<std::int64_t> d(m);
    for (int k = 0; k < m; ++k) {
      d[k] = x[k] % p;
      x[k] = mod_floor(x[k] - d[k], Q);
    }
    digits.push_back(d);
    // divide by pi: x_0 / pi = -(x_0 / p) pi^{e-1}
    std::vector<std::int64_t> y(x.size(), 0);
    for (int j = 1; j < e; ++j)
      for (int k = 0; k < m; ++k) y[(j - 1) * m + k] = x[j * m + k];
    for (int k = 0; k < m; ++k) {
      const std::int64_t q = x[k] / p;  // exact; top digit becomes unknown (zero)
      y[(e - 1) * m + k] = mod_floor(y[(e - 1) * m + k] - q, Q);
    }
    x = std::move(y);
  }
  return digits;
}

RationalVal valuation(const RingElem& x) { return x.valuation(); }

RationalVal agreement(const RingElem& a, const RingElem& b) { return (a - b).valuation(); }

RingElem teichmueller(const RingSpec& ring, std::span<const std::int64_t> residue) {
  RingElem x = ring.from_zq(residue);
  for (auto& c : x.data()) c = mod_floor(c, ring.p());
  if (x.is_zero()) return x;
  std::uint64_t q = 1;
  for (int i = 0; i < ring.degree(); ++i) q *= static_cast<std::uint64_t>(ring.p());
  // Newton on x^q - x; the derivative q x^{q-1} - 1 is a unit.
  const RingElem qe = ring.from_int(static_cast<std::int64_t>(q % static_cast<std::uint64_t>(ring.modulus())));
  const RingElem one = ring.one();
  int iterations = 2;
  for (int n = 1; n < ring.precision(); n *= 2) ++iterations;
  for (int it = 0; it < iterations; ++it) {
    const RingElem xq1 = x.pow(q - 1);
    const RingElem f = xq1 * x - x;
    if (f.is_zero()) break;
    x -= f * (qe * xq1 - one).inverse();
  }
  if (!(x.pow(q) == x)) throw std::logic_error("teichmueller: lift did not converge");
  return x;
}

RingElem zeta_p(const RingSpec& ring) {
  const std::int64_t p = ring.p();
  const int e = ring.pi_degree();
  if (static_cast<std::int64_t>(ring.precision()) * e < 2)
    throw Error(ErrorKind::PrecisionTooLow, "zeta_p needs N(p-1) >= 2");
  // zeta = 1 + pi*y where y^{e} - sum_{k=1}^{e} (C(p,k)/p) pi^{k-1} y^{k-1} = 0,
  // the root y = 1 (mod pi) being simple.
  std::vector<RingElem> coef;  // coef[k-1] = (C(p,k)/p) * pi^{k-1}, k = 1..e
  const RingElem pi = ring.pi();
  std::int64_t binom = 1;  // C(p, k)
  RingElem pik = ring.one();
  for (int k = 1; k <= e; ++k) {
    binom = binom * (p - k + 1) / k;
    coef.push_back(ring.from_int(binom / p) * pik);
    pik *= pi;
  }
  RingElem y = ring.one();
  for (int it = 0; it < 128; ++it) {
    RingElem g = y.pow(static_cast<std::uint64_t>(e));
    RingElem dg = ring.from_int(e) * y.pow(static_cast<std::uint64_t>(e - 1));
    RingElem ypow = ring.one();
    for (int k = 1; k <= e; ++k) {
      g -= coef[k - 1] * ypow;
      if (k >= 2) dg -= ring.from_int(k - 1) * coef[k - 1] * y.pow(static_cast<std::uint64_t>(k - 2));
      ypow *= y;
    }
    if (g.is_zero()) break;
    y -= g * dg.inverse();
  }
  return ring.one() + pi * y;
}

std::int64_t digit_sum(std::uint64_t k, std::int64_t p) {
  std::int64_t s = 0;
  while (k > 0) {
    s += static_cast<std::int64_t>(k % static_cast<std::uint64_t>(p));
    k /= static_cast<std::uint64_t>(p);
  }
  return s;
}

std::vector<RingElem> pi_power_over_factorial_table(const RingSpec& ring, std::uint64_t kmax) {
  const std::int64_t p = ring.p();
  const std::int64_t Q = ring.modulus();
  std::vector<RingElem> out;
  out.reserve(kmax + 1);
  std::vector<RingElem> pi_pows{ring.one()};
  std::int64_t unit = 1;  // k! with all factors p removed, mod p^N
  std::int64_t v = 0;     // v_p(k!)
  for (std::uint64_t k = 0; k <= kmax; ++k) {
    if (k > 0) {
      std::int64_t i = static_cast<std::int64_t>(k);
      while (i % p == 0) {
        i /= p;
        ++v;
      }
      unit = mulmod(unit, i % Q, Q);
    }
    const auto s = static_cast<std::size_t>(digit_sum(k, p));
    while (pi_pows.size() <= s) pi_pows.push_back(pi_pows.back() * ring.pi());
    RingElem term = pi_pows[s] * ring.from_int(unit).inverse();
    if (v % 2 == 1) term = -term;
    out.push_back(std::move(term));
  }
  return out;
}

RingElem pi_power_over_factorial(const RingSpec& ring, std::uint64_t k) {
  return pi_power_over_factorial_table(ring, k).back();
}

}  // namespace unitroot
