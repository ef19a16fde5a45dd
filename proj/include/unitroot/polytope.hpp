#pragma once

// Exact rational polytope machinery for Delta = conv(A u {0}): facet forms,
// the cone C generated by A, the weight function and lattice enumeration.

#include <cstdint>
#include <functional>
#include <vector>

#include "unitroot/padic.hpp"

namespace unitroot {

using Point = std::vector<std::int64_t>;

struct ExponentSet {
  int n = 0;
  std::vector<Point> vectors;

  ExponentSet() = default;
  /// Validates dimensions and distinctness; throws NotSpanning if rank < n.
  ExponentSet(int n, std::vector<Point> vectors);
  std::size_t size() const { return vectors.size(); }
};

struct WeightData {
  ExponentSet A;
  std::vector<std::vector<Rational>> facet_forms;        // l_i with l_i = 1 on a facet missing 0
  std::vector<Point> cone_inequalities;                  // C = {x : c.x <= 0 for all c}
  std::int64_t D = 1;
  std::vector<Point> lineality_basis;                    // lattice basis of M0
  std::vector<Point> scaled_forms;                       // D * l_i, integral

  int n() const { return A.n; }
};

int rank(const std::vector<Point>& rows, int n);

/// Lattice basis of {x in Z^n : c.x = 0 for all rows c}.
std::vector<Point> integer_kernel(const std::vector<Point>& rows, int n);

/// Basis of the relation lattice {l in Z^|A| : sum l_a a = 0}.
std::vector<Point> relation_basis(const ExponentSet& A);

WeightData build_weight_data(const ExponentSet& A);

bool in_cone(const WeightData& W, const Point& nu);
bool in_lineality(const WeightData& W, const Point& nu);

/// max_i l_i(nu); throws OutsideCone if nu is not in C.
Rational weight(const WeightData& W, const Point& nu);
/// D * weight, without the cone check.
std::int64_t scaled_weight(const WeightData& W, const Point& nu);

/// Definitional weight min{c : nu in c Delta}, by bisection over (1/D)Z on exact
/// LP membership.  Independent of the facet description; used as an oracle.
Rational definitional_weight(const WeightData& W, const Point& nu);

/// {mu in M : w(mu) <= wmax}, ordered by weight then lexicographically.
std::vector<Point> enumerate_weighted_monomials(const WeightData& W, Rational wmax);

/// Solutions nu in Z_{>=0}^|A| of sum nu_a a = mu with |nu| <= max_total.
class Decomposer {
 public:
  explicit Decomposer(const ExponentSet& A);

  std::vector<Point> solve(const Point& mu, std::int64_t max_total) const;

  template <class F>
  void for_each(const Point& mu, std::int64_t max_total, F&& f) const;

 private:
  void enumerate(const Point& mu, std::int64_t max_total, const std::function<void(const Point&)>& f) const;

  ExponentSet A_;
  std::vector<int> basis_;  // indices of n linearly independent vectors
  std::vector<int> free_;   // remaining indices
  std::vector<Point> adj_;  // adjugate of the basis matrix
  std::int64_t det_ = 1;
};

template <class F>
void Decomposer::for_each(const Point& mu, std::int64_t max_total, F&& f) const {
  enumerate(mu, max_total, std::function<void(const Point&)>(std::forward<F>(f)));
}

}  // namespace unitroot
