#pragma once

// Routes B and C: the splitting function theta(t) = exp(pi (t - t^p)), the
// Frobenius kernel F(lambda, X) = prod_a theta(lambda_a X^a), the operator
// alpha on a weight-truncated monomial basis, its Fredholm determinant, and
// the dual operator with power iteration for the unit eigenvalue.

#include <map>
#include <optional>
#include <vector>

#include "unitroot/kernels.hpp"
#include "unitroot/laurent.hpp"
#include "unitroot/padic.hpp"
#include "unitroot/polytope.hpp"

namespace unitroot {

struct SplittingCoeffs {
  std::vector<RingElem> b;  // b_0 .. b_imax
};

/// b_i by multiplying the truncations of exp(pi t) and exp(-pi t^p).
/// Checks ord b_i >= i (p-1)/p^2 for every i.
SplittingCoeffs splitting_coefficients(const RingSpec& ring, std::size_t imax);

/// S_cut = ceil(N p^2 / (p-1)): terms of B_mu with |nu| > S_cut vanish mod p^N.
int splitting_cut(std::int64_t p, int N);

/// B_mu(lambda) = sum over nu >= 0 with sum nu_a a = mu, |nu| <= cut, of
/// prod_a b_{nu_a} lambda_a^{nu_a}.  Throws OutsideM if mu is not in C.
/// Checks ord B_mu >= w(mu) (p-1)/p^2.
RingElem bigF_coefficient(const std::vector<RingElem>& lambda, const Point& mu, const WeightData& W,
                          const SplittingCoeffs& sc, int cut);

/// Default weight truncation max(4, N p^2/(p-1)^2) rounded up into (1/D) Z.
Rational default_wmax(std::int64_t p, int N, std::int64_t D);

enum class Side { B, BDual };

/// Finitely supported series on M.  Side B stores the coefficient of X^mu,
/// side BDual the coefficient of X^{-mu}.
struct XSeries {
  Side side = Side::BDual;
  Rational wmax{0};
  std::map<Point, RingElem> coeffs;

  RingElem coefficient(const Point& mu, const RingSpec& ring) const;
  /// Norm in the weighted metric as an ord: min over mu of
  /// ord c_mu - s (p-1) w(mu)/p^2, with s = +1 on B and -1 on BDual.
  RationalVal norm_ord(const WeightData& W, std::int64_t p) const;
};

/// Precomputed b_i and B_mu tables, one table per orbit step.
struct BigFTables {
  SplittingCoeffs splitting;
  std::vector<std::map<Point, RingElem>> tables;
};

/// Everything Routes B and C share for one spec at one truncation.
class DworkSetup {
 public:
  /// `cached` replaces the b_i and B_mu computation when its shape matches.
  DworkSetup(const LaurentSpec& spec, const RingSpec& ring, std::optional<Rational> wmax = std::nullopt,
             bool parallel = true, const BigFTables* cached = nullptr);

  const LaurentSpec& spec() const { return spec_; }
  const RingSpec& ring() const { return ring_; }
  const WeightData& weights() const { return W_; }
  Rational wmax() const { return wmax_; }
  int cut() const { return cut_; }
  int cycle() const { return static_cast<int>(orbit_.size()); }
  bool parallel() const { return parallel_; }
  const SplittingCoeffs& splitting() const { return sc_; }

  /// Basis {mu in M : w(mu) <= wmax} in weight-then-lex order.
  const std::vector<Point>& basis() const { return basis_; }
  const std::vector<Rational>& basis_weights() const { return basis_w_; }
  std::optional<std::size_t> index_of(const Point& mu) const;

  /// lambda^{p^i}, componentwise, for i = 0 .. s-1.
  const std::vector<RingElem>& orbit_point(int i) const { return orbit_[i]; }
  /// B_mu(lambda^{p^i}); zero for mu outside M or beyond the cut.
  RingElem bigF(int i, const Point& mu) const;
  /// Every nonzero B_mu(lambda^{p^i}) that the truncated operators use.
  const std::map<Point, RingElem>& bigF_table(int i) const { return tables_[i]; }
  BigFTables export_tables() const { return {sc_, tables_}; }
  bool used_cache() const { return used_cache_; }

 private:
  LaurentSpec spec_;
  RingSpec ring_;
  WeightData W_;
  Rational wmax_;
  int cut_;
  bool parallel_;
  bool used_cache_ = false;
  SplittingCoeffs sc_;
  std::vector<Point> basis_;
  std::vector<Rational> basis_w_;
  std::map<Point, std::size_t> index_;
  std::vector<std::vector<RingElem>> orbit_;
  std::vector<std::map<Point, RingElem>> tables_;
};

/// One application of gamma' o F(lambda^{p^i}, X) o Phi on B*: the output
/// coefficient at X^{-omega} is sum_nu B_{p nu - omega} xi_nu, for
/// w(omega) <= wmax.  Checks that the weighted norm does not increase.
XSeries one_step_dual(const DworkSetup& setup, int i, const XSeries& xi);

/// Full dual cycle: step s-1 first, step 0 last.
XSeries dual_cycle(const DworkSetup& setup, const XSeries& xi);

struct PowerIterationResult {
  RingElem u;
  XSeries eigenvector;              // normalized to 1 at X^0
  std::vector<RingElem> normalizers;
  std::vector<RationalVal> differences;  // ord(c_{k+1} - c_k)
  int cycles = 0;
  int budget = 0;
};

inline int power_iteration_budget(std::int64_t p, int N, std::int64_t D) {
  const std::int64_t num = static_cast<std::int64_t>(N) * D * p * p, den = (p - 1) * (p - 1);
  return static_cast<int>((num + den - 1) / den) + 3;
}

/// Iterates the dual cycle from xi = 1, normalizing by the X^0 coefficient,
/// until both the normalizer and the vector are stable mod p^N.  Throws
/// NoConvergence past the budget.
PowerIterationResult power_iteration_unit_root(const DworkSetup& setup);

/// One-step matrix of Psi o F(lambda^{p^i}, X) on the basis: (omega, nu)
/// entry B_{p omega - nu}.
RingMatrix one_step_matrix(const DworkSetup& setup, int i);

/// ord of a one-step entry in the weighted basis,
/// ord B_{p omega - nu} + (p-1)/p^2 (w(nu) - w(omega)); at least
/// (p-1)^2 w(omega)/p^2 and positive off (0, 0).
RationalVal weighted_entry_ord(const DworkSetup& setup, const RingMatrix& one_step, std::size_t row, std::size_t col);

/// M_{s-1} ... M_1 M_0.
RingMatrix frobenius_matrix(const DworkSetup& setup);

struct NewtonSegment {
  Rational slope;
  std::int64_t length = 0;
  friend bool operator==(const NewtonSegment&, const NewtonSegment&) = default;
};

using NewtonPolygon = std::vector<NewtonSegment>;

/// Lower convex hull of (i, ord c_i) over the coefficients known to be nonzero.
NewtonPolygon newton_polygon(const std::vector<RingElem>& P);

/// Smallest K with s (p-1)^2/p^2 * (sum of the K smallest weights) >= N,
/// so that c_k vanishes mod p^N for k > K.
std::size_t fredholm_truncation(const DworkSetup& setup);

struct FredholmResult {
  std::vector<RingElem> P;  // c_0 .. c_K of det(I - T alpha)
  NewtonPolygon polygon;
  RingElem root;            // the unit zero T of P
  RingElem u;               // 1 / root
  std::size_t K = 0;
};

/// det(I - T Mx) through degree K, its Newton polygon, and the reciprocal of
/// its unique unit zero by Newton iteration from -1/c_1.  Throws NoUnitRoot or
/// MultipleUnitRoots unless the slope-0 part is a single segment of length 1.
FredholmResult fredholm_unit_root(const RingMatrix& Mx, std::size_t K, bool parallel = true);

/// The unique unit zero of a polynomial with P(0) = 1, with the same checks.
RingElem unit_zero(const std::vector<RingElem>& P);

struct LFunctionData {
  std::vector<RingElem> numerator, denominator;  // through degree K
  std::vector<RingElem> series;                  // numerator / denominator
  RingElem unit_root;  // reciprocal unit zero of the truncated series; exact when the tail vanishes mod p^N
};

/// prod_{k=0..n} P(p^{k s} T)^{(-1)^k binom(n, k)}, which equals
/// L(T)^{(-1)^{n+1}} through the degree of P.
LFunctionData lfunction_from_fredholm(const std::vector<RingElem>& P, int n, int s);

struct AdjointReport {
  std::size_t pairs = 0;
  RationalVal worst;  // min over interior pairs of ord(<a* x, y> - <x, a y>)
};

/// Compares the dual cycle against the matrix of alpha on all pairs of basis
/// monomials with weight <= wmax / p.
AdjointReport adjoint_check(const DworkSetup& setup);

}  // namespace unitroot
