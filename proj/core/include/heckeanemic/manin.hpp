#ifndef HECKEANEMIC_MANIN_HPP
#define HECKEANEMIC_MANIN_HPP

#include <gmpxx.h>

#include <vector>

#include "heckeanemic/linalg.hpp"

namespace heckeanemic {

// A point (c:d) of P^1(Z/N) in canonical form.  The canonical representative
// is (0,1) when c == 0 and (1, d*c^-1) otherwise; enumeration order is
// (c asc, d asc), so (0,1) comes first, then (1,0), (1,1), ..., (1,N-1).
struct ManinSymbol {
  long c = 0;
  long d = 0;
  auto operator<=>(const ManinSymbol&) const = default;
};

ManinSymbol p1_normalize(long c, long d, long N);

enum class Cusp { zero, infinity };

// Formal difference [plus] - [minus] of cusp classes.
struct CuspDifference {
  Cusp plus;
  Cusp minus;
};

// A cusp a/b in lowest terms; den == 0 encodes the cusp at infinity.
struct CuspPoint {
  mpz_class num;
  mpz_class den;

  CuspPoint(mpz_class n, mpz_class d);
  CuspPoint(long n, long d) : CuspPoint(mpz_class(n), mpz_class(d)) {}
  static CuspPoint infinity() { return CuspPoint(1, 0); }

  bool is_infinity() const { return den == 0; }
  bool operator==(const CuspPoint&) const = default;
};

/*
 * Conventions, fixed once for the whole project:
 *
 *   - (c:d) names the right coset of Gamma_0(N) whose matrices have bottom
 *     row congruent to (c,d) mod N.
 *   - S = [0,-1;1,0] and T = [0,-1;1,-1] act on the right:
 *     (c:d)S = (d:-c), (c:d)T = (d:-c-d).  The relation quotient is by
 *     x + xS and x + xT + xT^2, over Q.
 *   - The geodesic attached to (c:d) with lift g = [a,b;c,d] runs from g.oo
 *     to g.0, so its boundary is [g.0] - [g.oo], and a cusp a/b lies in the
 *     infinity class exactly when N | b.
 *
 * Everything downstream (Hecke matrices, golden coefficient values, the
 * convention fingerprint in scan records) assumes these choices.
 */
class ModSymSpace {
 public:
  long level = 0;
  long full_dim = 0;   // 2g + 1 at prime level
  long genus = 0;

  std::vector<ManinSymbol> generators;  // all of P^1(Z/N), canonical order

  // Quotient coordinates of each free generator, full_dim x (N+1).
  RatMatrix projection;

  // Generator index carried by each quotient coordinate.
  std::vector<long> basis_generator;

  // Rows span the kernel of the boundary map, echelonized; 2g x full_dim.
  RatMatrix cuspidal_basis;
  std::vector<long> cuspidal_pivots;

  long generator_index(const ManinSymbol& s) const { return s.c == 0 ? 0 : 1 + s.d; }
  long inverse_mod(long a) const { return inv_table_[a]; }

  friend ModSymSpace build_space(long N);

 private:
  std::vector<long> inv_table_;
};

ModSymSpace build_space(long N);

// Right action of the standard order-2 and order-3 matrices.
ManinSymbol apply_s(const ManinSymbol& s, long N);
ManinSymbol apply_t(const ManinSymbol& s, long N);

CuspDifference boundary_map(const ManinSymbol& s, long N);

// The geodesic {g.oo, g.0} attached to a canonical symbol, g a lift with
// bottom row (c,d).
std::pair<CuspPoint, CuspPoint> symbol_path(const ManinSymbol& s);

// Quotient coordinates of the modular symbol {from, to}, via the
// continued-fraction expansion of the endpoints.  Additive in concatenation.
RatVec path_to_symbols(const CuspPoint& from, const CuspPoint& to, const ModSymSpace& space);

// Adds to counts (indexed like ModSymSpace::generators) the signed multiset
// of generators whose projected sum is the class of {from, to}.
void accumulate_path_counts(std::vector<long>& counts, const CuspPoint& from, const CuspPoint& to,
                            long N);

}  // namespace heckeanemic

#endif
