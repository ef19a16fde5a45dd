#pragma once

// A Laurent polynomial f(X) = sum_a lambda_a X^a with coefficients in F_{p^m},
// viewed over F_q with q = p^epsilon.

#include <optional>
#include <vector>

#include "unitroot/gf.hpp"
#include "unitroot/polytope.hpp"

namespace unitroot {

struct LaurentSpec {
  ExponentSet A;
  std::int64_t p = 0;
  int m = 1;
  int epsilon = 1;
  FpPoly field_poly;                        // defines F_{p^m}
  std::vector<GaloisField::Elem> coeffs;    // lambda_a, one per a in A

  GaloisField field() const { return GaloisField(p, field_poly); }
};

/// Validates epsilon | m, |coeffs| = |A| and the field polynomial.  Without
/// `g` the lexicographically least irreducible of degree m is used.
LaurentSpec make_laurent_spec(std::int64_t p, int m, std::optional<FpPoly> g, int epsilon, ExponentSet A,
                              std::vector<std::vector<std::int64_t>> coeffs);

/// d = [F_q(lambda) : F_q], the least d >= 1 with lambda_a^{q^d} = lambda_a.
int orbit_degree(const LaurentSpec& spec);

/// s = epsilon * d: the number of p-power Frobenius steps in one orbit.
inline int cycle_length(const LaurentSpec& spec) { return spec.epsilon * orbit_degree(spec); }

/// O_N over F_{p^m} with the same defining polynomial.
RingSpec ring_for(const LaurentSpec& spec, int N);

/// Teichmueller lifts lambda_a of the coefficients.
std::vector<RingElem> teichmueller_point(const LaurentSpec& spec, const RingSpec& ring);

}  // namespace unitroot
