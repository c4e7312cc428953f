#ifndef HECKEANEMIC_LINALG_HPP
#define HECKEANEMIC_LINALG_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace heckeanemic {

using IntVec = std::vector<mpz_class>;
using RatVec = std::vector<mpq_class>;

// Dense row-major matrix over arbitrary-precision integers.  All entries are
// exact; nothing in this module ever rounds.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(long rows, long cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static IntMatrix identity(long n);

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  mpz_class& at(long r, long c) { return data_[r * cols_ + c]; }
  const mpz_class& at(long r, long c) const { return data_[r * cols_ + c]; }

  IntVec row(long r) const;
  void set_row(long r, const IntVec& v);
  void append_row(const IntVec& v);
  void swap_rows(long r1, long r2);

  bool is_zero() const;
  bool operator==(const IntMatrix& o) const = default;

 private:
  long rows_ = 0;
  long cols_ = 0;
  std::vector<mpz_class> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

// Dense matrix of exact rationals; entries are kept canonical (denominator
// positive and coprime to the numerator).
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(long rows, long cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RatMatrix(const IntMatrix& num, const mpz_class& den);

  static RatMatrix identity(long n);

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  mpq_class& at(long r, long c) { return data_[r * cols_ + c]; }
  const mpq_class& at(long r, long c) const { return data_[r * cols_ + c]; }

  void swap_rows(long r1, long r2);

  bool is_zero() const;
  bool operator==(const RatMatrix& o) const = default;

  // Smallest positive d with d * (*this) integral, together with the scaled
  // integer matrix.  Lattice indices downstream are invariant under this
  // simultaneous scaling.
  std::pair<IntMatrix, mpz_class> cleared() const;

 private:
  long rows_ = 0;
  long cols_ = 0;
  std::vector<mpq_class> data_;
};

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator+(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator-(const RatMatrix& a, const RatMatrix& b);
RatMatrix operator*(const mpq_class& s, const RatMatrix& a);

// Reduced row echelon form; records the pivot column of each nonzero row.
RatMatrix rref(const RatMatrix& m, std::vector<long>* pivot_cols = nullptr);

// Basis of the right kernel {v : m v = 0}, one vector per row, echelonized so
// that the free coordinates (ascending) carry an identity block.
RatMatrix rat_nullspace(const RatMatrix& m, std::vector<long>* free_cols = nullptr);

// Matrix over GF(2) with rows packed into 64-bit words.
class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(long rows, long cols);

  static F2Matrix identity(long n);
  static F2Matrix reduction(const IntMatrix& m);  // entries mod 2

  long rows() const { return rows_; }
  long cols() const { return cols_; }

  bool get(long r, long c) const;
  void set(long r, long c, bool v);
  void xor_rows(long dst, long src);

  bool operator==(const F2Matrix& o) const = default;

 private:
  long rows_ = 0;
  long cols_ = 0;
  long words_ = 0;
  std::vector<uint64_t> bits_;
};

F2Matrix operator*(const F2Matrix& a, const F2Matrix& b);
long f2_rank(const F2Matrix& m);

// Basis rows of the right kernel, deterministic: reduced row echelon
// pivoting with free variables taken in ascending column order.
F2Matrix f2_nullspace(const F2Matrix& m);

// Row-style Hermite normal form: same row span over Z, zero rows removed,
// pivots positive, entries above each pivot reduced into [0, pivot).
IntMatrix hnf(const IntMatrix& m);

struct HnfTransform {
  IntMatrix h;  // the Hermite normal form
  IntMatrix u;  // h = u * m
};
HnfTransform hnf_with_transform(const IntMatrix& m);

// Elementary divisors d1 | d2 | ... of the Smith normal form, zeros last;
// the list has min(rows, cols) entries.
IntVec snf_divisors(const IntMatrix& m);

// Integer coordinates with respect to a matrix already in HNF.
class HermiteBasis {
 public:
  explicit HermiteBasis(IntMatrix hnf_rows);

  const IntMatrix& basis() const { return h_; }
  long rank() const { return h_.rows(); }

  // x with x * H = v, when v lies in the row lattice.
  std::optional<IntVec> coordinates(const IntVec& v) const;

 private:
  IntMatrix h_;
  std::vector<long> pivots_;
};

struct LatticeQuotient {
  std::optional<mpz_class> index;  // empty when the sublattice has lower rank
  IntVec divisors;                 // invariant factors of span(sup)/span(sub), zeros last
};

// Structure of span(sup)/span(sub), via the SNF of sub expressed in the HNF
// coordinates of sup.  Throws NotASublattice if containment fails.
LatticeQuotient lattice_quotient(const IntMatrix& sup, const IntMatrix& sub);

// [span(sup) : span(sub)], or empty for infinite index.
std::optional<mpz_class> lattice_index(const IntMatrix& sup, const IntMatrix& sub);

// x with x * rows = target over Z, when solvable.
std::optional<IntVec> solve_integer(const IntMatrix& rows, const IntVec& target);

}  // namespace heckeanemic

#endif
