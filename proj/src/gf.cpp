#include "unitroot/gf.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "unitroot/error.hpp"

namespace unitroot {

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::int64_t> prime_factors(std::uint64_t n) {
  std::vector<std::int64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<std::int64_t>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<std::int64_t>(n));
  return out;
}

namespace fp {

FpPoly normalize(FpPoly a, std::int64_t p) {
  for (auto& c : a) c = mod_floor(c, p);
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

int degree(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly add(const FpPoly& a, const FpPoly& b, std::int64_t p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return normalize(std::move(r), p);
}

FpPoly sub(const FpPoly& a, const FpPoly& b, std::int64_t p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return normalize(std::move(r), p);
}

FpPoly mul(const FpPoly& a, const FpPoly& b, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return normalize(std::move(r), p);
}

static std::int64_t inv_mod_p(std::int64_t a, std::int64_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = mod_floor(a, p);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw std::domain_error("inv_mod_p: not invertible");
  return mod_floor(t, p);
}

FpPoly rem(const FpPoly& a, const FpPoly& m, std::int64_t p) {
  if (m.empty()) throw std::domain_error("fp::rem: division by zero polynomial");
  FpPoly r = normalize(a, p);
  const int dm = degree(m);
  const std::int64_t lead_inv = inv_mod_p(m.back(), p);
  while (!r.empty() && degree(r) >= dm) {
    const int shift = degree(r) - dm;
    const std::int64_t c = r.back() * lead_inv % p;
    for (int i = 0; i <= dm; ++i) r[shift + i] = mod_floor(r[shift + i] - c * m[i], p);
    r = normalize(std::move(r), p);
  }
  return r;
}

FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::int64_t p) {
  return rem(mul(a, b, p), m, p);
}

FpPoly powmod(const FpPoly& a, std::uint64_t e, const FpPoly& m, std::int64_t p) {
  FpPoly result = rem(FpPoly{1}, m, p);
  FpPoly base = rem(a, m, p);
  while (e > 0) {
    if (e & 1) result = mulmod(result, base, m, p);
    e >>= 1;
    if (e) base = mulmod(base, base, m, p);
  }
  return result;
}

FpPoly gcd(FpPoly a, FpPoly b, std::int64_t p) {
  a = normalize(std::move(a), p);
  b = normalize(std::move(b), p);
  while (!b.empty()) {
    FpPoly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const std::int64_t inv = inv_mod_p(a.back(), p);
    for (auto& c : a) c = c * inv % p;
  }
  return a;
}

bool is_irreducible(const FpPoly& f_in, std::int64_t p) {
  const FpPoly f = normalize(f_in, p);
  const int d = degree(f);
  if (d < 1) return false;
  if (d == 1) return true;
  const FpPoly t{0, 1};
  FpPoly power = t;  // t^{p^k} mod f
  for (int k = 1; k <= d / 2; ++k) {
    power = powmod(power, static_cast<std::uint64_t>(p), f, p);
    if (degree(gcd(f, sub(power, t, p), p)) != 0) return false;
  }
  return true;
}

static FpPoly monic_from_index(std::uint64_t index, std::int64_t p, int degree) {
  FpPoly f(degree + 1, 0);
  for (int i = 0; i < degree; ++i) {
    f[i] = static_cast<std::int64_t>(index % static_cast<std::uint64_t>(p));
    index /= static_cast<std::uint64_t>(p);
  }
  f[degree] = 1;
  return f;
}

FpPoly find_irreducible(std::int64_t p, int degree) {
  if (degree < 1) throw std::invalid_argument("find_irreducible: degree must be >= 1");
  for (std::uint64_t idx = 0;; ++idx) {
    FpPoly f = monic_from_index(idx, p, degree);
    if (is_irreducible(f, p)) return f;
  }
}

FpPoly find_primitive(std::int64_t p, int degree) {
  if (degree < 1) throw std::invalid_argument("find_primitive: degree must be >= 1");
  std::uint64_t group = 1;
  for (int i = 0; i < degree; ++i) group *= static_cast<std::uint64_t>(p);
  group -= 1;
  const auto factors = prime_factors(group);
  for (std::uint64_t idx = 0;; ++idx) {
    FpPoly f = monic_from_index(idx, p, degree);
    if (!is_irreducible(f, p)) continue;
    const FpPoly t = rem(FpPoly{0, 1}, f, p);
    if (t.empty()) continue;  // f = t
    bool primitive = true;
    for (auto r : factors) {
      if (powmod(t, group / static_cast<std::uint64_t>(r), f, p) == FpPoly{1}) {
        primitive = false;
        break;
      }
    }
    if (primitive) return f;
  }
}

}  // namespace fp

GaloisField::GaloisField(std::int64_t p, FpPoly modulus)
    : p_(p), k_(0), modulus_(fp::normalize(std::move(modulus), p)), order_(1) {
  if (!is_prime(p)) throw Error(ErrorKind::CompositeP, "characteristic " + std::to_string(p));
  if (modulus_.empty() || modulus_.back() != 1)
    throw std::invalid_argument("GaloisField: modulus must be monic");
  if (!fp::is_irreducible(modulus_, p))
    throw Error(ErrorKind::ReduciblePolynomial, "field modulus is reducible mod p");
  k_ = fp::degree(modulus_);
  for (int i = 0; i < k_; ++i) order_ *= static_cast<std::uint64_t>(p_);
}

GaloisField::Elem GaloisField::one() const {
  Elem e(k_, 0);
  e[0] = 1;
  return e;
}

GaloisField::Elem GaloisField::gen() const {
  const FpPoly t = fp::rem(FpPoly{0, 1}, modulus_, p_);
  return from(t);
}

GaloisField::Elem GaloisField::from(std::span<const std::int64_t> coeffs) const {
  FpPoly f(coeffs.begin(), coeffs.end());
  f = fp::rem(f, modulus_, p_);
  Elem e(k_, 0);
  std::copy(f.begin(), f.end(), e.begin());
  return e;
}

GaloisField::Elem GaloisField::add(const Elem& a, const Elem& b) const {
  Elem r(k_);
  for (int i = 0; i < k_; ++i) r[i] = (a[i] + b[i]) % p_;
  return r;
}

GaloisField::Elem GaloisField::sub(const Elem& a, const Elem& b) const {
  Elem r(k_);
  for (int i = 0; i < k_; ++i) r[i] = mod_floor(a[i] - b[i], p_);
  return r;
}

GaloisField::Elem GaloisField::mul(const Elem& a, const Elem& b) const {
  return from(fp::mulmod(a, b, modulus_, p_));
}

GaloisField::Elem GaloisField::pow(const Elem& a, std::uint64_t e) const {
  return from(fp::powmod(a, e, modulus_, p_));
}

GaloisField::Elem GaloisField::frobenius(const Elem& a, int times) const {
  Elem r = a;
  for (int i = 0; i < times; ++i) r = pow(r, static_cast<std::uint64_t>(p_));
  return r;
}

GaloisField::Elem GaloisField::inverse(const Elem& a) const {
  if (is_zero(a)) throw std::domain_error("GaloisField::inverse of zero");
  return pow(a, order_ - 2);
}

bool GaloisField::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](std::int64_t c) { return c == 0; });
}

std::int64_t GaloisField::absolute_trace(const Elem& a) const {
  Elem acc = zero();
  Elem cur = a;
  for (int i = 0; i < k_; ++i) {
    acc = add(acc, cur);
    cur = frobenius(cur);
  }
  for (int i = 1; i < k_; ++i)
    if (acc[i] != 0) throw std::logic_error("absolute_trace: result not in F_p");
  return acc[0];
}

std::uint64_t GaloisField::multiplicative_order(const Elem& a) const {
  if (is_zero(a)) throw std::domain_error("multiplicative_order of zero");
  std::uint64_t ord = order_ - 1;
  for (auto r : prime_factors(order_ - 1)) {
    const auto ur = static_cast<std::uint64_t>(r);
    while (ord % ur == 0 && pow(a, ord / ur) == one()) ord /= ur;
  }
  return ord;
}

}  // namespace unitroot
