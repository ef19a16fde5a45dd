#pragma once

// Truncated arithmetic in O_N = Z_q[pi] / p^N, where Z_q = Z_p[t]/(g) is the
// unramified extension with residue field F_{p^m} and pi^{p-1} = -p.
//
// An element is stored as a (p-1) x m array of residues mod p^N, row j holding
// the Z_q-coefficient of pi^j.  All arithmetic is exact modulo p^N.

#include <boost/rational.hpp>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "unitroot/gf.hpp"

namespace unitroot {

using Rational = boost::rational<std::int64_t>;

/// A p-adic order.  When `capped` is set the element was indistinguishable
/// from zero and `value` is the precision cap N (a lower bound).
struct RationalVal {
  Rational value{0};
  bool capped = false;

  static RationalVal exact(Rational v) { return {v, false}; }
  static RationalVal at_least(Rational v) { return {v, true}; }

  double to_double() const { return boost::rational_cast<double>(value); }
  std::string str() const;

  friend bool operator==(const RationalVal&, const RationalVal&) = default;
};

RationalVal min(const RationalVal& a, const RationalVal& b);

namespace detail {
struct RingData;
}

class RingElem;

/// Immutable descriptor of O_N.  Cheap to copy; shared between threads.
class RingSpec {
 public:
  RingSpec() = default;

  std::int64_t p() const;
  int degree() const;     // m
  int precision() const;  // N
  std::int64_t modulus() const;  // p^N
  int pi_degree() const;  // p - 1
  std::size_t stride() const;    // (p-1) * m residues per element
  const std::vector<std::int64_t>& defining_polynomial() const;  // g, monic, mod p^N
  const FpPoly& residue_polynomial() const;                      // g mod p
  const GaloisField& residue_field() const;

  RingElem zero() const;
  RingElem one() const;
  RingElem pi() const;
  RingElem from_int(std::int64_t v) const;
  /// Element of Z_q with the given t-coefficients (reduced mod p^N).
  RingElem from_zq(std::span<const std::int64_t> t_coeffs) const;

  // Raw kernels on contiguous storage of stride() residues.
  void mul(const std::int64_t* a, const std::int64_t* b, std::int64_t* out) const;
  void mul_acc(const std::int64_t* a, const std::int64_t* b, std::int64_t* acc) const;
  void add_into(const std::int64_t* a, std::int64_t* acc) const;
  /// acc += sum_i a[i a_step] * b[i b_step] over `count` pairs (steps in
  /// int64 units), with one reduction at the end.
  void dot_acc(std::size_t count, const std::int64_t* a, std::ptrdiff_t a_step, const std::int64_t* b,
               std::ptrdiff_t b_step, std::int64_t* acc) const;

  bool same_as(const RingSpec& other) const { return d_ == other.d_; }
  explicit operator bool() const { return static_cast<bool>(d_); }

 private:
  friend RingSpec make_ring(std::int64_t, int, std::optional<std::vector<std::int64_t>>, int);
  friend class RingElem;
  std::shared_ptr<const detail::RingData> d_;
};

/// Builds O_N.  Without `g` the lexicographically least monic irreducible
/// polynomial of degree m mod p is used.
RingSpec make_ring(std::int64_t p, int m, std::optional<std::vector<std::int64_t>> g, int N);

class RingElem {
 public:
  RingElem() = default;
  explicit RingElem(const RingSpec& ring);

  const RingSpec& ring() const { return ring_; }
  std::span<const std::int64_t> data() const { return c_; }
  std::span<std::int64_t> data() { return c_; }
  std::int64_t coeff(int pi_deg, int t_deg) const;
  void set_coeff(int pi_deg, int t_deg, std::int64_t v);

  bool is_zero() const;
  bool is_unit() const;
  RationalVal valuation() const;

  RingElem operator-() const;
  RingElem& operator+=(const RingElem& o);
  RingElem& operator-=(const RingElem& o);
  RingElem& operator*=(const RingElem& o);
  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  friend bool operator==(const RingElem& a, const RingElem& b) { return a.c_ == b.c_; }

  RingElem pow(std::uint64_t e) const;
  /// Inverse of a unit; throws NonUnitDivision otherwise.
  RingElem inverse() const;
  /// Residue class mod pi as an F_{p^m} element.
  GaloisField::Elem residue() const;
  /// Digits d_k (each an m-vector over [0,p)) with x = sum_k d_k pi^k,
  /// k = 0 .. N(p-1)-1.
  std::vector<std::vector<std::int64_t>> pi_adic_digits() const;

 private:
  RingSpec ring_;
  std::vector<std::int64_t> c_;
};

RationalVal valuation(const RingElem& x);

/// ord(a - b), capped at N.
RationalVal agreement(const RingElem& a, const RingElem& b);

/// The unique root of unity (or zero) congruent to the residue.
RingElem teichmueller(const RingSpec& ring, std::span<const std::int64_t> residue);

/// The primitive p-th root of unity with zeta = 1 + pi (mod pi^2).
RingElem zeta_p(const RingSpec& ring);

/// pi^k / k!, computed without division by p: k! = p^v u with v = v_p(k!),
/// and pi^k / k! = (-1)^v pi^{s_p(k)} / u.
RingElem pi_power_over_factorial(const RingSpec& ring, std::uint64_t k);
std::vector<RingElem> pi_power_over_factorial_table(const RingSpec& ring, std::uint64_t kmax);

std::int64_t digit_sum(std::uint64_t k, std::int64_t p);

}  // namespace unitroot
