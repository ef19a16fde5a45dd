#pragma once

// Hot loops, each in a serial reference form and an OpenMP form.  The two
// forms return identical results; tests compare them.

#include <cstdint>
#include <vector>

#include "unitroot/padic.hpp"
#include "unitroot/polytope.hpp"

namespace unitroot {

/// Dense matrix over O_N, row-major, each entry stride() residues.
class RingMatrix {
 public:
  RingMatrix() = default;
  RingMatrix(RingSpec ring, std::size_t rows, std::size_t cols);

  static RingMatrix identity(const RingSpec& ring, std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const RingSpec& ring() const { return ring_; }

  std::int64_t* at(std::size_t i, std::size_t j) { return &data_[(i * cols_ + j) * stride_]; }
  const std::int64_t* at(std::size_t i, std::size_t j) const { return &data_[(i * cols_ + j) * stride_]; }
  bool is_zero(std::size_t i, std::size_t j) const;
  RingElem get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const RingElem& v);
  RingMatrix transposed() const;

  friend bool operator==(const RingMatrix& a, const RingMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  RingSpec ring_;
  std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<std::int64_t> data_;
};

/// Counting problem for sum_a Tr(lambda_a x^a) over x in (F_Q^*)^n with
/// x = (g^k_1, ..., g^k_n) and lambda_a = g^{e_a}.
struct TorusProblem {
  std::int64_t p = 0;
  std::uint64_t group_order = 0;       // Q - 1
  int n = 0;
  std::vector<std::uint8_t> trace;     // Tr(g^k), k in [0, Q-1)
  std::vector<std::uint64_t> offsets;  // e_a for the nonzero coefficients
  std::vector<Point> exponents;        // the matching a
};

namespace serial {
RingMatrix matmul(const RingMatrix& a, const RingMatrix& b);
std::vector<RingElem> matvec(const RingMatrix& m, const std::vector<RingElem>& v);
/// Coefficients c_0..c_K of det(I - T m) by the Berkowitz recursion, with
/// every intermediate polynomial truncated at degree K.
std::vector<RingElem> fredholm_coefficients(const RingMatrix& m, std::size_t K);
std::vector<std::uint64_t> torus_counts(const TorusProblem& t);
}  // namespace serial

namespace parallel {
RingMatrix matmul(const RingMatrix& a, const RingMatrix& b);
std::vector<RingElem> matvec(const RingMatrix& m, const std::vector<RingElem>& v);
std::vector<RingElem> fredholm_coefficients(const RingMatrix& m, std::size_t K);
std::vector<std::uint64_t> torus_counts(const TorusProblem& t);
}  // namespace parallel

int max_threads();

}  // namespace unitroot
