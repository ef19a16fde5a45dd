#pragma once

// Invariant suites shared by the selftest subcommand and the acceptance
// binary.  Each returns a named verdict with a one-line detail.

#include <cstdint>
#include <string>
#include <vector>

#include "unitroot/dwork.hpp"
#include "unitroot/polytope.hpp"

namespace unitroot {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string detail;
};

/// Weight properties on `samples` random cone points: w >= 0 with equality
/// only at 0, w(c nu) = c w(nu), subadditivity, D w integral; and agreement
/// with the definitional weight on `def_samples` points.
CheckResult weight_property_suite(const ExponentSet& A, int samples, int def_samples, std::uint64_t seed);

/// Three relations of A (fewer only when the relation lattice is smaller):
/// multiples k r of a rank-1 generator, or b_1, b_2, b_1 + b_2.
std::vector<Point> test_relations(const ExponentSet& A);

/// 0 and a nonzero lattice point of M0 (a nonzero point of M when M0 = 0).
std::vector<Point> test_indices(const ExponentSet& A);

/// Box and Euler residuals of F_i through `degree` for test_relations x test_indices.
CheckResult annihilator_suite(const ExponentSet& A, int degree);

/// ord b_i >= i (p-1)/p^2 for the setup's b_0 .. b_cut.
CheckResult splitting_bound_suite(const DworkSetup& S);

/// ord B_mu >= w(mu)(p-1)/p^2 on every tabulated B_mu of every orbit step.
CheckResult bigF_bound_suite(const DworkSetup& S);

/// One-step matrices: zero outside M, ord B_{p omega - nu} >= w(mu)(p-1)/p^2,
/// weighted ord >= (p-1)^2 w(omega)/p^2 and > 0 off (0, 0).
CheckResult matrix_entry_suite(const DworkSetup& S);

/// Interior pairing discrepancy between the dual cycle and the matrix of alpha.
CheckResult adjoint_suite(const DworkSetup& S);

/// Ring laws, inverses, digit reconstruction, Teichmueller and zeta_p on random elements.
CheckResult ring_suite(std::int64_t p, int m, int N, int trials, std::uint64_t seed);

/// Serial and OpenMP kernels agree on the setup's matrices.
CheckResult kernel_suite(const DworkSetup& S);

/// Everything above on small instances, plus oracle identities.
std::vector<CheckResult> selftest();

}  // namespace unitroot
