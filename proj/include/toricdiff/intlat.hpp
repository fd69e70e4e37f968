#pragma once

// Exact integer linear algebra: Smith and Hermite normal forms, saturated
// kernels and orthogonal complements of sublattices of Z^n.

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace toricdiff {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;

/// Thrown for malformed input to any library operation.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

IntVector to_int_vector(const std::vector<long long>& v);
std::vector<long long> to_small_vector(const IntVector& v);
Integer dot(const IntVector& a, const IntVector& b);
std::string to_string(const IntVector& v);

/// Dense row-major matrix of arbitrary-precision integers.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<IntVector>& rows, std::size_t cols);
  static IntMatrix from_rows(std::initializer_list<std::vector<long long>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static IntMatrix from_columns(const std::vector<IntVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntVector row(std::size_t i) const;
  IntVector column(std::size_t j) const;
  IntMatrix transposed() const;
  IntVector apply(const IntVector& x) const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);
  void negate_row(std::size_t i);
  void negate_col(std::size_t j);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

std::string to_string(const IntMatrix& m);

/// U * A * V == S with U, V unimodular and S diagonal, d_1 | d_2 | ... .
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;

  std::size_t rank() const;
  /// The nonzero diagonal entries of S, in order.
  std::vector<Integer> invariant_factors() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Exact determinant of a square matrix (fraction-free elimination).
Integer determinant(const IntMatrix& a);
std::size_t rank(const IntMatrix& a);

/// A sublattice of Z^ambient_rank given by a canonical basis.
struct Sublattice {
  std::size_t ambient_rank = 0;
  std::vector<IntVector> basis;

  std::size_t rank() const { return basis.size(); }
  bool contains(const IntVector& v) const;
  /// True iff every vector of the lattice pairs to zero with v.
  bool orthogonal_to(const IntVector& v) const;

  friend bool operator==(const Sublattice&, const Sublattice&) = default;
};

/// Hermite-reduces the row span of `vectors` and sorts rows lexicographically.
std::vector<IntVector> canonical_basis(const std::vector<IntVector>& vectors, std::size_t ambient);

Sublattice make_sublattice(const std::vector<IntVector>& generators, std::size_t ambient);

/// Saturated integer kernel {x : A x = 0}.
Sublattice kernel_basis(const IntMatrix& a);

struct CokernelInvariants {
  std::vector<Integer> torsion;  // invariant factors > 1
  std::size_t free_rank = 0;

  bool is_free_rank_one() const { return torsion.empty() && free_rank == 1; }
};

/// Presents coker(A: Z^cols -> Z^rows) as a sum of cyclic groups.
CokernelInvariants cokernel_invariants(const IntMatrix& a);

/// Saturated lattice of vectors pairing to zero with all of L.
Sublattice orthogonal_complement(const Sublattice& l);

/// Some integer x with A x = b, if one exists.
std::optional<IntVector> solve_integer(const IntMatrix& a, const IntVector& b);

}  // namespace toricdiff
