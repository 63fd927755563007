#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace substar {

using Integer = mpz_class;

/// Dense integer matrix with arbitrary-precision entries.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix transpose() const;
  IntMatrix column(std::size_t j) const;
  /// Columns of this followed by columns of o.
  IntMatrix hcat(const IntMatrix& o) const;
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
  friend IntMatrix operator+(const IntMatrix& x, const IntMatrix& y);
  friend IntMatrix operator-(const IntMatrix& x, const IntMatrix& y);
  bool operator==(const IntMatrix& o) const = default;

  std::vector<std::vector<std::string>> to_strings() const;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix power(const IntMatrix& m, unsigned k);
Integer determinant(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);

/// U * M * V = S with U, V unimodular and S diagonal, d1 | d2 | ...
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix S;
  IntMatrix V;
  std::vector<Integer> invariant_factors() const;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Finitely generated abelian group Z^free + sum Z/t_i, t_i >= 2, t_1 | t_2 | ...
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool trivial() const { return free_rank == 0 && torsion.empty(); }
  /// Z + this.
  AbelianGroup plus_z() const;
  std::string to_string() const;
  bool operator==(const AbelianGroup&) const = default;
};

/// Z^rows / M Z^cols.
AbelianGroup cokernel(const IntMatrix& m);

/// Column-style HNF of the lattice spanned by the columns: lower triangular,
/// positive pivots, entries left of a pivot reduced into [0, pivot). Zero columns dropped.
IntMatrix hermite_normal_form(const IntMatrix& m);

/// Basis (as columns, in HNF) of ker_Q(M) intersected with Z^cols.
IntMatrix rational_kernel(const IntMatrix& m);

/// Solves B x = y exactly for B in column HNF; throws if y is not in the lattice.
IntMatrix solve_hnf(const IntMatrix& basis, const IntMatrix& y);

struct EventualRange {
  std::size_t rank = 0;
  unsigned stage = 0;  // least m with rank(M^m) = rank(M^(m+1))
  IntMatrix basis;     // HNF basis of the columns of M^m
  IntMatrix A;         // M restricted to the span, in that basis
};

EventualRange eventual_range(const IntMatrix& m);

}  // namespace substar
