#include "unitroot/oracle.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "unitroot/error.hpp"
#include "unitroot/kernels.hpp"

namespace unitroot {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

GaloisField::Elem element_from_index(const GaloisField& F, std::uint64_t idx) {
  GaloisField::Elem e(F.degree());
  for (int i = 0; i < F.degree(); ++i) {
    e[i] = static_cast<std::int64_t>(idx % static_cast<std::uint64_t>(F.characteristic()));
    idx /= static_cast<std::uint64_t>(F.characteristic());
  }
  return e;
}

GaloisField::Elem primitive_element(const GaloisField& F) {
  for (std::uint64_t idx = 1; idx < F.order(); ++idx) {
    auto e = element_from_index(F, idx);
    if (F.multiplicative_order(e) == F.order() - 1) return e;
  }
  throw std::logic_error("primitive_element: none found");
}

// Minimal polynomial over F_p of an element of F, low-first.
FpPoly minimal_polynomial(const GaloisField& F, const GaloisField::Elem& b) {
  std::vector<GaloisField::Elem> poly{F.one()};
  GaloisField::Elem conj = b;
  do {
    std::vector<GaloisField::Elem> next(poly.size() + 1, F.zero());
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] = F.add(next[i + 1], poly[i]);
      next[i] = F.sub(next[i], F.mul(poly[i], conj));
    }
    poly = std::move(next);
    conj = F.frobenius(conj);
  } while (conj != b);
  FpPoly out;
  for (const auto& c : poly) {
    for (int i = 1; i < F.degree(); ++i)
      if (c[i] != 0) throw std::logic_error("minimal_polynomial: coefficient outside F_p");
    out.push_back(c[0]);
  }
  return out;
}

GaloisField::Elem eval(const GaloisField& F, const FpPoly& f, const GaloisField::Elem& x) {
  GaloisField::Elem acc = F.zero();
  for (auto it = f.rbegin(); it != f.rend(); ++it) {
    acc = F.mul(acc, x);
    acc[0] = (acc[0] + *it) % F.characteristic();
  }
  return acc;
}

}  // namespace

std::vector<std::optional<std::uint64_t>> embed_coefficients(const LaurentSpec& spec, const FpPoly& big_poly) {
  const GaloisField F = spec.field();
  const int s = cycle_length(spec);
  const std::uint64_t ps = ipow(static_cast<std::uint64_t>(spec.p), s);
  const GaloisField big(spec.p, big_poly);
  const std::uint64_t Qm1 = big.order() - 1;
  std::vector<std::optional<std::uint64_t>> out(spec.coeffs.size());
  bool any = false;
  for (const auto& c : spec.coeffs) any |= !F.is_zero(c);
  if (!any) return out;

  const auto gamma = primitive_element(F);
  const auto beta = F.pow(gamma, (F.order() - 1) / (ps - 1));  // generates F_{p^s}^*
  std::vector<std::uint64_t> logs(spec.coeffs.size(), 0);
  for (std::size_t a = 0; a < spec.coeffs.size(); ++a) {
    if (F.is_zero(spec.coeffs[a])) continue;
    GaloisField::Elem cur = F.one();
    std::uint64_t k = 0;
    while (cur != spec.coeffs[a]) {
      cur = F.mul(cur, beta);
      if (++k >= ps) throw std::logic_error("embed_coefficients: coefficient outside F_{p^s}");
    }
    logs[a] = k;
  }
  const FpPoly mp = minimal_polynomial(F, beta);
  const std::uint64_t cofactor = Qm1 / (ps - 1);
  const auto beta_big = big.pow(big.gen(), cofactor);
  std::uint64_t j = 1;
  for (; j < ps; ++j) {
    if (std::gcd(j, ps - 1) != 1) continue;
    if (big.is_zero(eval(big, mp, big.pow(beta_big, j)))) break;
  }
  if (j >= ps) throw std::logic_error("embed_coefficients: no embedding found");
  for (std::size_t a = 0; a < spec.coeffs.size(); ++a) {
    if (F.is_zero(spec.coeffs[a])) continue;
    const unsigned __int128 e = static_cast<unsigned __int128>(j) * logs[a] % (ps - 1) * cofactor;
    out[a] = static_cast<std::uint64_t>(e % Qm1);
  }
  return out;
}

CharSumRow char_sum(const LaurentSpec& spec, int l, const OracleOptions& opts) {
  if (l < 1) throw std::invalid_argument("char_sum: l must be >= 1");
  const int s = cycle_length(spec);
  const int deg = s * l;
  CharSumRow row;
  row.l = l;
  row.field_degree = deg;
  row.field_order = ipow(static_cast<std::uint64_t>(spec.p), deg);
  const long double points = std::pow(static_cast<long double>(row.field_order - 1), spec.A.n);
  if (points > static_cast<long double>(opts.guard) && !opts.override_guard)
    throw Error(ErrorKind::TooLarge, "torus of " + std::to_string(static_cast<double>(points)) +
                                         " points exceeds the enumeration guard");

  const FpPoly h = fp::find_primitive(spec.p, deg);
  const GaloisField big(spec.p, h);
  TorusProblem t;
  t.p = spec.p;
  t.group_order = row.field_order - 1;
  t.n = spec.A.n;
  // Tr(g^k) satisfies the linear recurrence of the minimal polynomial h of g.
  t.trace.resize(t.group_order);
  GaloisField::Elem gk = big.one();
  for (int k = 0; k < deg && static_cast<std::uint64_t>(k) < t.group_order; ++k) {
    t.trace[k] = static_cast<std::uint8_t>(big.absolute_trace(gk));
    gk = big.mul(gk, big.gen());
  }
  for (std::uint64_t k = deg; k < t.group_order; ++k) {
    std::int64_t v = 0;
    for (int i = 0; i < deg; ++i) v -= h[i] * t.trace[k - deg + i];
    t.trace[k] = static_cast<std::uint8_t>(mod_floor(v, spec.p));
  }
  const auto e = embed_coefficients(spec, h);
  for (std::size_t a = 0; a < e.size(); ++a) {
    if (!e[a]) continue;
    t.offsets.push_back(*e[a]);
    t.exponents.push_back(spec.A.vectors[a]);
  }
  row.counts = opts.parallel ? parallel::torus_counts(t) : serial::torus_counts(t);
  return row;
}

CharSumTable char_sum_table(const LaurentSpec& spec, int lmax, const OracleOptions& opts) {
  CharSumTable table;
  for (int l = 1; l <= lmax; ++l) table.rows.push_back(char_sum(spec, l, opts));
  return table;
}

std::vector<std::int64_t> cyclotomic_coefficients(const CharSumRow& row) {
  const std::size_t p = row.counts.size();
  std::vector<std::int64_t> out(p - 1);
  for (std::size_t c = 0; c + 1 < p; ++c)
    out[c] = static_cast<std::int64_t>(row.counts[c]) - static_cast<std::int64_t>(row.counts[p - 1]);
  return out;
}

RingElem embed_char_sum(const CharSumRow& row, const RingSpec& ring) {
  const RingElem z = zeta_p(ring);
  RingElem acc = ring.zero();
  RingElem zc = ring.one();
  for (std::size_t c = 0; c < row.counts.size(); ++c) {
    const auto nc = static_cast<std::int64_t>(row.counts[c] % static_cast<std::uint64_t>(ring.modulus()));
    acc += ring.from_int(nc) * zc;
    zc *= z;
  }
  return acc;
}

OracleEstimates embed_and_estimate(const CharSumTable& table, const RingSpec& ring) {
  OracleEstimates est;
  for (const auto& row : table.rows) est.S.push_back(embed_char_sum(row, ring));
  for (std::size_t l = 0; l + 1 < est.S.size(); ++l) est.u.push_back(est.S[l + 1] * est.S[l].inverse());
  for (std::size_t l = 0; l + 1 < est.u.size(); ++l) est.successive.push_back(agreement(est.u[l + 1], est.u[l]));
  return est;
}

std::optional<std::vector<GaloisField::Elem>> face_singular_point(const LaurentSpec& spec,
                                                                   const std::vector<int>& face) {
  const GaloisField F = spec.field();
  const int n = spec.A.n;
  const auto gamma = primitive_element(F);
  const std::uint64_t G = F.order() - 1;
  std::vector<std::uint64_t> k(n, 0);
  auto to_int_exp = [&](std::int64_t e) { return static_cast<std::uint64_t>(mod_floor(e, static_cast<std::int64_t>(G))); };
  while (true) {
    std::vector<GaloisField::Elem> sums(n + 1, F.zero());
    for (int a : face) {
      const auto& v = spec.A.vectors[a];
      std::int64_t e = 0;
      for (int j = 0; j < n; ++j) e += v[j] * static_cast<std::int64_t>(k[j]);
      const auto term = F.mul(spec.coeffs[a], F.pow(gamma, to_int_exp(e)));
      sums[0] = F.add(sums[0], term);
      for (int j = 0; j < n; ++j) {
        auto scaled = term;
        for (auto& c : scaled) c = mod_floor(c * v[j], spec.p);
        sums[j + 1] = F.add(sums[j + 1], scaled);
      }
    }
    bool all_zero = true;
    for (const auto& s : sums) all_zero &= F.is_zero(s);
    if (all_zero) {
      std::vector<GaloisField::Elem> x;
      for (int j = 0; j < n; ++j) x.push_back(F.pow(gamma, k[j]));
      return x;
    }
    int j = 0;
    while (j < n && ++k[j] == G) k[j++] = 0;
    if (j == n) return std::nullopt;
  }
}

}  // namespace unitroot
