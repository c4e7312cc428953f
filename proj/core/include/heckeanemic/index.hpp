#ifndef HECKEANEMIC_INDEX_HPP
#define HECKEANEMIC_INDEX_HPP

#include <gmpxx.h>

#include <optional>
#include <utility>
#include <vector>

#include "heckeanemic/hecke.hpp"
#include "heckeanemic/linalg.hpp"

namespace heckeanemic {

// strict: n coprime to 2N.  extended: all odd n; the difference is the odd
// multiples of N, which belong to the anemic algebra anyway (U_N does).
enum class AnemicMode { strict, extended };

struct AnemicRowSet {
  AnemicMode mode = AnemicMode::extended;
  long level = 0;
  long bound = 0;
  std::vector<long> rows;  // ascending indices n

  static AnemicRowSet make(AnemicMode mode, long level, long bound);
};

struct IndexResult {
  mpz_class index;
  IntVec divisors;  // invariant factors of T / T^an
};

// [T : T^an] with T spanned by rows 1..sturm and T^an by the anemic rows.
// Throws BoundTooSmall when the anemic rows do not reach full rank.
IndexResult compute_index(const CoefficientMatrix& A, const AnemicRowSet& rows);

// Dimension over GF(2) of the forms whose odd-power coefficients all vanish
// mod 2, i.e. the nullity of the anemic rows of A mod 2.
long theta_kernel_dim(const CoefficientMatrix& A, const AnemicRowSet& rows);

// Mod-2 q-expansion prefixes (coefficients 1..bound) of a kernel basis; every
// odd position is zero by construction.
F2Matrix theta_kernel_basis(const CoefficientMatrix& A, const AnemicRowSet& rows);

// Coefficients (n, c_n), zeros omitted, with T_2 = sum c_n T_n over the given
// anemic rows; empty optional when T_2 is not in their Z-span.
using HeckeCombination = std::vector<std::pair<long, mpz_class>>;
std::optional<HeckeCombination> express_t2(const CoefficientMatrix& A, const AnemicRowSet& rows);

// Whether row N (the U_N functional) lies in the Z-span of the strict anemic
// rows.  Requires bound >= N; empty optional when the bound is too small.
std::optional<bool> un_membership(const CoefficientMatrix& A);

struct IndexReport {
  long level = 0;
  long sturm_bound = 0;
  long genus = 0;
  long bound_used = 0;

  mpz_class index;
  long two_rank = 0;  // log2(index); -1 if the index is not a power of two
  IntVec elementary_divisors;

  long theta_kernel_dim = 0;
  long weight1_dim = 0;  // equals theta_kernel_dim

  bool un_in_anemic = false;
  std::optional<HeckeCombination> t2_expression;

  bool stabilized = false;
  bool methods_agree = false;

  bool operator==(const IndexReport&) const = default;
};

// Computes index and kernel dimension at the initial bound (default 4 times
// the Sturm bound), then doubles the bound until both are unchanged across
// one doubling.  Throws NoStabilization past 32 times the Sturm bound and
// NotPrime for composite levels.
IndexReport stabilized_report(long N, long initial_bound = 0,
                              AnemicMode mode = AnemicMode::extended);

// Same, but reuses an existing space/cache/builder session.
IndexReport stabilized_report(CoefficientMatrixBuilder& builder, long initial_bound = 0,
                              AnemicMode mode = AnemicMode::extended);

}  // namespace heckeanemic

#endif
