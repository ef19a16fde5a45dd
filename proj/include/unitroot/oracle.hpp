#pragma once

// Brute-force exponential sums S_l = sum_{x in torus} zeta^{Tr f(x)} over
// F_{p^{sl}}, s = epsilon * d, stored as exact counts per trace value.

#include <cstdint>
#include <optional>
#include <vector>

#include "unitroot/laurent.hpp"
#include "unitroot/padic.hpp"

namespace unitroot {

inline constexpr std::uint64_t kEnumerationGuard = 100'000'000;

struct OracleOptions {
  std::uint64_t guard = kEnumerationGuard;
  bool override_guard = false;
  bool parallel = true;
};

struct CharSumRow {
  int l = 0;
  int field_degree = 0;              // over F_p
  std::uint64_t field_order = 0;
  std::vector<std::uint64_t> counts;  // N_c, c in F_p
};

struct CharSumTable {
  std::vector<CharSumRow> rows;  // l = 1 .. lmax
};

/// Embeds F_{p^s} (as the subfield of F_{p^m} holding the coefficients) into
/// F_{p^{sl}} defined by the least primitive polynomial, and returns the
/// exponents e_a with lambda_a = g^{e_a} (nullopt for lambda_a = 0).
std::vector<std::optional<std::uint64_t>> embed_coefficients(const LaurentSpec& spec, const FpPoly& big_poly);

CharSumRow char_sum(const LaurentSpec& spec, int l, const OracleOptions& opts = {});
CharSumTable char_sum_table(const LaurentSpec& spec, int lmax, const OracleOptions& opts = {});

/// S_l as an integer vector on 1, zeta, ..., zeta^{p-2}.
std::vector<std::int64_t> cyclotomic_coefficients(const CharSumRow& row);

RingElem embed_char_sum(const CharSumRow& row, const RingSpec& ring);

struct OracleEstimates {
  std::vector<RingElem> S;              // S_1 .. S_lmax
  std::vector<RingElem> u;              // u_l = S_{l+1}/S_l, l = 1 .. lmax-1
  std::vector<RationalVal> successive;  // ord(u_{l+1} - u_l)
};

OracleEstimates embed_and_estimate(const CharSumTable& table, const RingSpec& ring);

/// A torus point of F_{p^m} where the face polynomial f_sigma = sum_{a in face}
/// lambda_a x^a and all x_j d/dx_j f_sigma vanish together, if one exists.
std::optional<std::vector<GaloisField::Elem>> face_singular_point(const LaurentSpec& spec,
                                                                   const std::vector<int>& face);

}  // namespace unitroot
