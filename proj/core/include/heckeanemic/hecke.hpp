#ifndef HECKEANEMIC_HECKE_HPP
#define HECKEANEMIC_HECKE_HPP

#include <gmpxx.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "heckeanemic/linalg.hpp"
#include "heckeanemic/manin.hpp"

namespace heckeanemic {

// ceil((N+1)/6): number of leading q-expansion coefficients that determine a
// weight-2 form of level N.
long sturm_bound(long N);

// Matrix of the n-th Hecke operator on cuspidal_basis coordinates.
struct HeckeOperator {
  long n = 0;
  RatMatrix matrix;
};

// Memoizes prime operator matrices for one level; composite operators are
// cheap to rebuild through the recurrences, so only primes are retained.
// Lookups behave as a single-writer-per-key map under concurrent use.
class HeckeCache {
 public:
  const RatMatrix* find(long n) const;
  void store(long n, RatMatrix m);

 private:
  mutable std::mutex mu_;
  std::map<long, RatMatrix> prime_ops_;
};

// T_p via the p+1 determinant-p representatives [1,j;0,p] (0 <= j < p) and
// [p,0;0,1] acting on geodesics; for p = N the last one is dropped and the
// result is U_N.
HeckeOperator hecke_prime(const ModSymSpace& space, long p);

// T_n for any n >= 1 through multiplicativity and the prime-power
// recurrence T_{p^{r+1}} = T_p T_{p^r} - p T_{p^{r-1}} (U_N^r when p = N).
HeckeOperator hecke_n(const ModSymSpace& space, long n, HeckeCache& cache);

// Integer matrix A with A[n][j] = a_n(f_j) for the basis {f_j} of
// S_2(Gamma_0(N), Z) dual to the Hecke lattice; row n is simultaneously the
// coordinate vector of T_n in an integral basis of the Hecke algebra.
class CoefficientMatrix {
 public:
  long level = 0;
  long genus = 0;
  long sturm = 0;
  long bound = 0;       // rows cover 1 <= n <= bound
  IntMatrix entries;    // bound x genus

  const mpz_class& at(long n, long j) const { return entries.at(n - 1, j); }
  IntVec row(long n) const { return entries.row(n - 1); }

  // Rows n in [1, bound] with chosen indices, stacked in ascending order.
  IntMatrix rows_upto(long n_max) const;
  IntMatrix rows_at(const std::vector<long>& indices) const;
};

// Incrementally extends a CoefficientMatrix to larger bounds while reusing
// the Hecke cache and the fixed duality lattice built from T_1..T_sturm.
class CoefficientMatrixBuilder {
 public:
  CoefficientMatrixBuilder(const ModSymSpace& space, HeckeCache& cache);

  void ensure(long bound);
  CoefficientMatrix matrix(long bound);

  const ModSymSpace& space() const { return space_; }
  HeckeCache& cache() { return cache_; }

 private:
  IntVec scaled_flat(long n);

  const ModSymSpace& space_;
  HeckeCache& cache_;
  mpz_class scale_;                      // common denominator of T_1..T_sturm
  std::unique_ptr<HermiteBasis> basis_;  // HNF of the flattened operator lattice
  IntMatrix rows_;                       // grows with ensure()
};

// pre: bound >= sturm_bound(N).  Throws RankDeficient if T_1..T_sturm do not
// span a rank-g lattice.
CoefficientMatrix coefficient_matrix(const ModSymSpace& space, long bound, HeckeCache& cache);

}  // namespace heckeanemic

#endif
