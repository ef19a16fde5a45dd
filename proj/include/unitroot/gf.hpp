#pragma once

// Dense polynomials over F_p and the finite fields F_p[t]/(h).
//
// Polynomials are coefficient vectors, lowest degree first, with no trailing
// zeros (the zero polynomial is the empty vector).  All coefficients lie in
// [0, p).

#include <cstdint>
#include <span>
#include <vector>

namespace unitroot {

using FpPoly = std::vector<std::int64_t>;

std::int64_t mod_floor(std::int64_t a, std::int64_t m);
bool is_prime(std::int64_t n);
std::vector<std::int64_t> prime_factors(std::uint64_t n);

namespace fp {

FpPoly normalize(FpPoly a, std::int64_t p);
int degree(const FpPoly& a);
FpPoly add(const FpPoly& a, const FpPoly& b, std::int64_t p);
FpPoly sub(const FpPoly& a, const FpPoly& b, std::int64_t p);
FpPoly mul(const FpPoly& a, const FpPoly& b, std::int64_t p);
FpPoly rem(const FpPoly& a, const FpPoly& m, std::int64_t p);
FpPoly mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& m, std::int64_t p);
FpPoly powmod(const FpPoly& a, std::uint64_t e, const FpPoly& m, std::int64_t p);
FpPoly gcd(FpPoly a, FpPoly b, std::int64_t p);

/// Rabin-style test: gcd(f, t^{p^k} - t) == 1 for every k <= deg/2.
bool is_irreducible(const FpPoly& f, std::int64_t p);

/// Monic irreducible polynomials of degree d are enumerated by the integer
/// sum_{i<d} c_i p^i; the first irreducible one is returned.
FpPoly find_irreducible(std::int64_t p, int degree);

/// As find_irreducible, additionally requiring that t generates the
/// multiplicative group of F_p[t]/(f).
FpPoly find_primitive(std::int64_t p, int degree);

}  // namespace fp

/// The field F_p[t]/(h) for a monic irreducible h.  Elements are dense
/// vectors of exactly deg(h) residues.
class GaloisField {
 public:
  using Elem = std::vector<std::int64_t>;

  GaloisField(std::int64_t p, FpPoly modulus);

  std::int64_t characteristic() const { return p_; }
  int degree() const { return k_; }
  std::uint64_t order() const { return order_; }
  const FpPoly& modulus() const { return modulus_; }

  Elem zero() const { return Elem(k_, 0); }
  Elem one() const;
  Elem gen() const;  // the class of t
  Elem from(std::span<const std::int64_t> coeffs) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem pow(const Elem& a, std::uint64_t e) const;
  Elem frobenius(const Elem& a, int times = 1) const;
  Elem inverse(const Elem& a) const;
  bool is_zero(const Elem& a) const;
  std::int64_t absolute_trace(const Elem& a) const;
  std::uint64_t multiplicative_order(const Elem& a) const;

 private:
  std::int64_t p_;
  int k_;
  FpPoly modulus_;
  std::uint64_t order_;
};

}  // namespace unitroot
