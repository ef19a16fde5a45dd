#pragma once

// Route A: A-hypergeometric series F_i, the ratio F(L) = F_0(pi L) / F_0(pi L^p)
// and the unit root as the product of F over the Frobenius orbit of lambda.

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <vector>

#include "unitroot/laurent.hpp"
#include "unitroot/padic.hpp"

namespace unitroot {

/// Truncated power series in the variables L_a, a in A.  Keys are exponent
/// tuples u with |u| = sum u_a <= degmax.
class MultiSeries {
 public:
  MultiSeries() = default;
  MultiSeries(RingSpec ring, std::size_t nvars, int degmax);

  const RingSpec& ring() const { return ring_; }
  std::size_t nvars() const { return nvars_; }
  int degmax() const { return degmax_; }
  const std::map<Point, RingElem>& terms() const { return terms_; }

  RingElem coefficient(const Point& u) const;
  /// Adds c at u; ignored when |u| > degmax.
  void add_term(const Point& u, const RingElem& c);

  MultiSeries truncated(int degmax) const;
  /// Substitutes L_a -> L_a^k.
  MultiSeries power_substitute(int k, int degmax) const;
  RingElem evaluate(const std::vector<RingElem>& point) const;

  /// min ord of the coefficients of total degree d (capped at N when the shell
  /// is empty or vanishes).
  RationalVal shell_min_ord(int d) const;

  friend MultiSeries operator*(const MultiSeries& a, const MultiSeries& b);
  MultiSeries inverse() const;

 private:
  RingSpec ring_;
  std::size_t nvars_ = 0;
  int degmax_ = 0;
  std::map<Point, RingElem> terms_;
};

std::int64_t total_degree(const Point& u);

/// F_i(pi L) = sum over u >= 0 with sum u_a a = i, |u| <= degmax, of
/// pi^|u| L^u / prod u_a!.
MultiSeries hyperg_coefficient_series(const ExponentSet& A, const Point& i, int degmax, const RingSpec& ring);

/// F_0(pi L) / F_0(pi L^p) truncated to total degree degmax.
MultiSeries calF_series(const ExponentSet& A, int degmax, const RingSpec& ring);

/// Product of calF over lambda^{p^i}, i = 0 .. s-1, at a fixed truncation.
RingElem unit_root_route_A(const LaurentSpec& spec, int degmax, const RingSpec& ring);

struct RouteAResult {
  RingElem u;
  int degmax = 0;                  // the truncation reported
  RationalVal stability;           // last agreement checked
  std::vector<int> tried;          // truncations evaluated
};

inline constexpr int kRouteAStartDegree = 16;
inline constexpr int kRouteAMaxDegree = 1 << 19;

/// With `degmax` set, compares degmax with 2 degmax once.  Otherwise doubles
/// d from kRouteAStartDegree until u(d) agrees to N digits with every
/// u(2^j d) up to u(p d).  Throws PrecisionUnstable when that fails.
RouteAResult unit_root_route_A_stable(const LaurentSpec& spec, std::optional<int> degmax, const RingSpec& ring);

// Exact rational forms, for the differential system and the generating identity.

using BigRational = boost::multiprecision::cpp_rational;
using RationalSeries = std::map<Point, BigRational>;

/// F_i(L) with rational coefficients 1 / prod u_a!.
RationalSeries hyperg_coefficient_rational(const ExponentSet& A, const Point& i, int degmax);

struct AnnihilatorResidual {
  int box_degree = 0;             // residual of box_l checked through this degree
  std::size_t box_nonzero = 0;
  int euler_degree = 0;
  std::size_t euler_nonzero = 0;  // summed over j
  bool vanishes() const { return box_nonzero == 0 && euler_nonzero == 0; }
};

/// Applies box_l = prod_{l_a>0} d_a^{l_a} - prod_{l_a<0} d_a^{-l_a} and
/// Z_j = sum_a a_j L_a d_a - i_j to the truncated F_i.  Throws NotARelation
/// unless sum l_a a = 0.
AnnihilatorResidual check_annihilators(const ExponentSet& A, const Point& i, const Point& ell, int degmax);

/// Expands prod_a exp(L_a X^a) directly and compares each X^i coefficient,
/// i in `indices`, with hyperg_coefficient_rational.  `perturb` adds 1 to one
/// coefficient of the direct expansion (a negative control).
bool generating_identity_check(const ExponentSet& A, const std::vector<Point>& indices, int degmax,
                               bool perturb = false);

}  // namespace unitroot
