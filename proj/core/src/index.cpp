#include "heckeanemic/index.hpp"

#include <algorithm>

#include "heckeanemic/errors.hpp"
#include "heckeanemic/primes.hpp"

namespace heckeanemic {

AnemicRowSet AnemicRowSet::make(AnemicMode mode, long level, long bound) {
  AnemicRowSet set;
  set.mode = mode;
  set.level = level;
  set.bound = bound;
  for (long n = 1; n <= bound; n += 2) {
    if (mode == AnemicMode::strict && n % level == 0) continue;
    set.rows.push_back(n);
  }
  return set;
}

IndexResult compute_index(const CoefficientMatrix& A, const AnemicRowSet& rows) {
  if (rows.bound > A.bound) throw std::invalid_argument("compute_index: row set exceeds bound");
  IntMatrix full = A.rows_upto(A.sturm);
  IntMatrix anemic = A.rows_at(rows.rows);
  LatticeQuotient q = lattice_quotient(full, anemic);
  if (!q.index) {
    throw BoundTooSmall("anemic rows up to " + std::to_string(rows.bound) +
                        " do not reach full rank at level " + std::to_string(A.level));
  }
  return {*q.index, q.divisors};
}

long theta_kernel_dim(const CoefficientMatrix& A, const AnemicRowSet& rows) {
  F2Matrix anemic = F2Matrix::reduction(A.rows_at(rows.rows));
  return A.genus - f2_rank(anemic);
}

F2Matrix theta_kernel_basis(const CoefficientMatrix& A, const AnemicRowSet& rows) {
  F2Matrix kernel = f2_nullspace(F2Matrix::reduction(A.rows_at(rows.rows)));
  F2Matrix prefixes(kernel.rows(), A.bound);
  for (long r = 0; r < kernel.rows(); ++r) {
    for (long n = 1; n <= A.bound; ++n) {
      bool bit = false;
      for (long j = 0; j < A.genus; ++j) {
        if (kernel.get(r, j) && mpz_odd_p(A.at(n, j).get_mpz_t())) bit = !bit;
      }
      prefixes.set(r, n - 1, bit);
    }
  }
  return prefixes;
}

std::optional<HeckeCombination> express_t2(const CoefficientMatrix& A, const AnemicRowSet& rows) {
  if (A.bound < 2) throw std::invalid_argument("express_t2: need at least two rows");
  auto x = solve_integer(A.rows_at(rows.rows), A.row(2));
  if (!x) return std::nullopt;
  HeckeCombination combo;
  for (long i = 0; i < (long)x->size(); ++i) {
    if ((*x)[i] != 0) combo.emplace_back(rows.rows[i], (*x)[i]);
  }
  return combo;
}

std::optional<bool> un_membership(const CoefficientMatrix& A) {
  if (A.bound < A.level) return std::nullopt;
  AnemicRowSet strict = AnemicRowSet::make(AnemicMode::strict, A.level, A.bound);
  return solve_integer(A.rows_at(strict.rows), A.row(A.level)).has_value();
}

namespace {

struct Snapshot {
  mpz_class index;
  IntVec divisors;
  long kernel_dim = 0;
};

// empty when the bound is still too small for full anemic rank
std::optional<Snapshot> snapshot_at(CoefficientMatrixBuilder& builder, long bound,
                                    AnemicMode mode) {
  CoefficientMatrix A = builder.matrix(bound);
  AnemicRowSet rows = AnemicRowSet::make(mode, A.level, bound);
  try {
    IndexResult res = compute_index(A, rows);
    return Snapshot{res.index, res.divisors, theta_kernel_dim(A, rows)};
  } catch (const BoundTooSmall&) {
    return std::nullopt;
  }
}

long exact_log2(const mpz_class& v) {
  if (v <= 0 || mpz_popcount(v.get_mpz_t()) != 1) return -1;
  return (long)mpz_sizeinbase(v.get_mpz_t(), 2) - 1;
}

}  // namespace

IndexReport stabilized_report(CoefficientMatrixBuilder& builder, long initial_bound,
                              AnemicMode mode) {
  const ModSymSpace& space = builder.space();
  long N = space.level;
  long b = sturm_bound(N);
  long limit = 32 * b;

  long bound = initial_bound > 0 ? initial_bound : 4 * b;
  bound = std::max({bound, b, 2L});

  std::optional<Snapshot> prev = snapshot_at(builder, bound, mode);
  long final_bound = bound;
  while (true) {
    long next = 2 * bound;
    std::optional<Snapshot> curr = snapshot_at(builder, next, mode);
    if (prev && curr && prev->index == curr->index && prev->kernel_dim == curr->kernel_dim) {
      final_bound = next;
      prev = std::move(curr);
      break;
    }
    if (next >= limit) {
      if (!curr) {
        throw BoundTooSmall("anemic rows do not reach full rank by bound " +
                            std::to_string(next) + " at level " + std::to_string(N));
      }
      throw NoStabilization("index and kernel dimension still changing at bound " +
                            std::to_string(next) + " > 32 * sturm at level " + std::to_string(N));
    }
    prev = std::move(curr);
    bound = next;
  }

  CoefficientMatrix A = builder.matrix(final_bound);
  AnemicRowSet rows = AnemicRowSet::make(mode, N, final_bound);

  IndexReport rep;
  rep.level = N;
  rep.sturm_bound = b;
  rep.genus = space.genus;
  rep.bound_used = final_bound;
  rep.index = prev->index;
  rep.two_rank = exact_log2(rep.index);
  rep.elementary_divisors = prev->divisors;
  rep.theta_kernel_dim = prev->kernel_dim;
  rep.weight1_dim = prev->kernel_dim;
  rep.t2_expression = express_t2(A, rows);

  // the membership check needs rows up to N; extend past the stable bound if
  // a custom initial bound left us short
  if (final_bound >= N) {
    rep.un_in_anemic = un_membership(A).value();
  } else {
    rep.un_in_anemic = un_membership(builder.matrix(N)).value();
  }

  rep.stabilized = true;
  bool torsion_ok = std::all_of(rep.elementary_divisors.begin(), rep.elementary_divisors.end(),
                                [](const mpz_class& d) { return d == 1 || d == 2; });
  rep.methods_agree = torsion_ok && rep.two_rank >= 0 && rep.two_rank == rep.theta_kernel_dim;
  return rep;
}

IndexReport stabilized_report(long N, long initial_bound, AnemicMode mode) {
  ModSymSpace space = build_space(N);
  HeckeCache cache;
  CoefficientMatrixBuilder builder(space, cache);
  return stabilized_report(builder, initial_bound, mode);
}

}  // namespace heckeanemic
