#include "unitroot/laurent.hpp"

#include "unitroot/error.hpp"

namespace unitroot {

LaurentSpec make_laurent_spec(std::int64_t p, int m, std::optional<FpPoly> g, int epsilon, ExponentSet A,
                              std::vector<std::vector<std::int64_t>> coeffs) {
  if (!is_prime(p)) throw Error(ErrorKind::CompositeP, std::to_string(p) + " is not prime");
  if (m < 1 || epsilon < 1 || m % epsilon != 0)
    throw Error(ErrorKind::ConfigInvalid, "epsilon must divide the field degree m");
  if (coeffs.size() != A.size()) throw Error(ErrorKind::ConfigInvalid, "need one coefficient per exponent vector");
  LaurentSpec s;
  s.A = std::move(A);
  s.p = p;
  s.m = m;
  s.epsilon = epsilon;
  if (g) {
    FpPoly h = fp::normalize(*g, p);
    if (fp::degree(h) != m || h.back() != 1) throw Error(ErrorKind::ConfigInvalid, "field polynomial must be monic of degree m");
    if (!fp::is_irreducible(h, p)) throw Error(ErrorKind::ReduciblePolynomial, "field polynomial is reducible mod p");
    s.field_poly = h;
  } else {
    s.field_poly = fp::find_irreducible(p, m);
  }
  const GaloisField F = s.field();
  for (const auto& c : coeffs) s.coeffs.push_back(F.from(c));
  return s;
}

int orbit_degree(const LaurentSpec& spec) {
  const GaloisField F = spec.field();
  for (int d = 1; d <= spec.m / spec.epsilon; ++d) {
    bool fixed = true;
    for (const auto& c : spec.coeffs) {
      if (F.frobenius(c, spec.epsilon * d) != c) {
        fixed = false;
        break;
      }
    }
    if (fixed) return d;
  }
  return spec.m / spec.epsilon;
}

RingSpec ring_for(const LaurentSpec& spec, int N) {
  return make_ring(spec.p, spec.m, std::vector<std::int64_t>(spec.field_poly.begin(), spec.field_poly.end()), N);
}

std::vector<RingElem> teichmueller_point(const LaurentSpec& spec, const RingSpec& ring) {
  std::vector<RingElem> out;
  for (const auto& c : spec.coeffs) out.push_back(teichmueller(ring, c));
  return out;
}

}  // namespace unitroot
