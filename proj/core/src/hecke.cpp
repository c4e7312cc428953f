#include "heckeanemic/hecke.hpp"

#include <array>

#include "heckeanemic/errors.hpp"
#include "heckeanemic/primes.hpp"

namespace heckeanemic {

long sturm_bound(long N) { return (N + 1 + 5) / 6; }

const RatMatrix* HeckeCache::find(long n) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = prime_ops_.find(n);
  return it == prime_ops_.end() ? nullptr : &it->second;
}

void HeckeCache::store(long n, RatMatrix m) {
  std::lock_guard<std::mutex> lock(mu_);
  prime_ops_.emplace(n, std::move(m));
}

namespace {

CuspPoint moebius(const std::array<long, 4>& g, const CuspPoint& x) {
  return CuspPoint(g[0] * x.num + g[1] * x.den, g[2] * x.num + g[3] * x.den);
}

}  // namespace

HeckeOperator hecke_prime(const ModSymSpace& space, long p) {
  if (!is_prime(p)) throw std::invalid_argument("hecke_prime: index must be prime");
  long N = space.level;
  long D = space.full_dim;
  long G = N + 1;
  long s = 2 * space.genus;

  std::vector<std::array<long, 4>> reps;
  reps.reserve(p + 1);
  for (long j = 0; j < p; ++j) reps.push_back({1, j, 0, p});
  if (p != N) reps.push_back({p, 0, 0, 1});

  auto [proj, proj_den] = space.projection.cleared();  // D x G

  // operator on the relation quotient, as proj_den * M
  IntMatrix m_num(D, D);
  std::vector<long> counts(G);
  for (long k = 0; k < D; ++k) {
    auto [from, to] = symbol_path(space.generators[space.basis_generator[k]]);
    std::fill(counts.begin(), counts.end(), 0L);
    for (const auto& g : reps) {
      accumulate_path_counts(counts, moebius(g, from), moebius(g, to), N);
    }
    for (long i = 0; i < G; ++i) {
      long c = counts[i];
      if (c == 0) continue;
      for (long r = 0; r < D; ++r) {
        if (c > 0) {
          mpz_addmul_ui(m_num.at(r, k).get_mpz_t(), proj.at(r, i).get_mpz_t(), (unsigned long)c);
        } else {
          mpz_submul_ui(m_num.at(r, k).get_mpz_t(), proj.at(r, i).get_mpz_t(), (unsigned long)-c);
        }
      }
    }
  }

  // restrict to the cuspidal subspace: with K the basis columns, solve
  // M K = K X by reading rows at the pivot coordinates, then verify
  auto [cusp, cusp_den] = space.cuspidal_basis.cleared();  // s x D
  IntMatrix mk_num(D, s);
  for (long i = 0; i < D; ++i) {
    for (long j = 0; j < s; ++j) {
      for (long t = 0; t < D; ++t) {
        mpz_addmul(mk_num.at(i, j).get_mpz_t(), m_num.at(i, t).get_mpz_t(),
                   cusp.at(j, t).get_mpz_t());
      }
    }
  }
  IntMatrix x_num(s, s);
  for (long i = 0; i < s; ++i) {
    for (long j = 0; j < s; ++j) x_num.at(i, j) = mk_num.at(space.cuspidal_pivots[i], j);
  }
  // K X = (C^t X) / cusp_den against MK / 1, both over the common num scale
  IntMatrix kx_num(D, s);
  for (long i = 0; i < D; ++i) {
    for (long j = 0; j < s; ++j) {
      for (long t = 0; t < s; ++t) {
        mpz_addmul(kx_num.at(i, j).get_mpz_t(), cusp.at(t, i).get_mpz_t(),
                   x_num.at(t, j).get_mpz_t());
      }
    }
  }
  for (long i = 0; i < D; ++i) {
    for (long j = 0; j < s; ++j) {
      if (kx_num.at(i, j) != mk_num.at(i, j) * cusp_den) {
        throw Error("Hecke operator " + std::to_string(p) +
                    " does not preserve the cuspidal subspace at level " + std::to_string(N));
      }
    }
  }

  return {p, RatMatrix(x_num, proj_den * cusp_den)};
}

namespace {

RatMatrix hecke_matrix(const ModSymSpace& space, long n, HeckeCache& cache) {
  long s = 2 * space.genus;
  if (n == 1) return RatMatrix::identity(s);
  if (const RatMatrix* hit = cache.find(n)) return *hit;

  long p = 2;
  while (n % p != 0) p = p == 2 ? 3 : p + 2;
  long pe = p, m = n / p;
  while (m % p == 0) {
    pe *= p;
    m /= p;
  }

  RatMatrix result;
  if (m > 1) {
    result = hecke_matrix(space, pe, cache) * hecke_matrix(space, m, cache);
  } else if (pe == p) {
    result = hecke_prime(space, p).matrix;
    cache.store(p, result);
  } else if (p == space.level) {
    result = hecke_matrix(space, p, cache) * hecke_matrix(space, pe / p, cache);
  } else {
    result = hecke_matrix(space, p, cache) * hecke_matrix(space, pe / p, cache) -
             mpq_class(p) * hecke_matrix(space, pe / (p * p), cache);
  }
  return result;
}

}  // namespace

HeckeOperator hecke_n(const ModSymSpace& space, long n, HeckeCache& cache) {
  if (n < 1) throw std::invalid_argument("hecke_n: index must be positive");
  return {n, hecke_matrix(space, n, cache)};
}

// -------------------------------------------------------- CoefficientMatrix

IntMatrix CoefficientMatrix::rows_upto(long n_max) const {
  IntMatrix out(n_max, genus);
  for (long n = 1; n <= n_max; ++n) out.set_row(n - 1, entries.row(n - 1));
  return out;
}

IntMatrix CoefficientMatrix::rows_at(const std::vector<long>& indices) const {
  IntMatrix out((long)indices.size(), genus);
  for (long i = 0; i < (long)indices.size(); ++i) out.set_row(i, entries.row(indices[i] - 1));
  return out;
}

namespace {

mpz_class denominator_lcm(const RatMatrix& m, mpz_class acc) {
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) {
      mpz_lcm(acc.get_mpz_t(), acc.get_mpz_t(), m.at(i, j).get_den_mpz_t());
    }
  }
  return acc;
}

IntVec flatten_scaled(const RatMatrix& m, const mpz_class& scale) {
  IntVec out;
  out.reserve(m.rows() * m.cols());
  mpz_class f;
  for (long i = 0; i < m.rows(); ++i) {
    for (long j = 0; j < m.cols(); ++j) {
      const mpq_class& q = m.at(i, j);
      mpz_class rem;
      mpz_fdiv_qr(f.get_mpz_t(), rem.get_mpz_t(), scale.get_mpz_t(), q.get_den_mpz_t());
      if (rem != 0) throw Error("operator denominator does not divide the common scale");
      out.push_back(mpz_class(q.get_num()) * f);
    }
  }
  return out;
}

}  // namespace

CoefficientMatrixBuilder::CoefficientMatrixBuilder(const ModSymSpace& space, HeckeCache& cache)
    : space_(space), cache_(cache), scale_(1) {
  long b = sturm_bound(space.level);
  long g = space.genus;
  long width = 4 * g * g;

  for (long n = 1; n <= b; ++n) {
    scale_ = denominator_lcm(hecke_matrix(space_, n, cache_), scale_);
  }
  IntMatrix flat(0, width);
  for (long n = 1; n <= b; ++n) {
    flat.append_row(flatten_scaled(hecke_matrix(space_, n, cache_), scale_));
  }
  IntMatrix h = hnf(flat);
  if (h.rows() != g) {
    throw RankDeficient("operators T_1..T_" + std::to_string(b) + " span rank " +
                        std::to_string(h.rows()) + ", expected genus " + std::to_string(g) +
                        " at level " + std::to_string(space.level));
  }
  basis_ = std::make_unique<HermiteBasis>(std::move(h));

  rows_ = IntMatrix(0, g);
  for (long n = 1; n <= b; ++n) {
    auto x = basis_->coordinates(flat.row(n - 1));
    if (!x) throw NotASublattice("T_" + std::to_string(n) + " escapes its own lattice");
    rows_.append_row(*x);
  }
}

IntVec CoefficientMatrixBuilder::scaled_flat(long n) {
  return flatten_scaled(hecke_matrix(space_, n, cache_), scale_);
}

void CoefficientMatrixBuilder::ensure(long bound) {
  for (long n = rows_.rows() + 1; n <= bound; ++n) {
    auto x = basis_->coordinates(scaled_flat(n));
    if (!x) {
      throw NotASublattice("T_" + std::to_string(n) +
                           " lies outside the lattice spanned by T_1..T_sturm at level " +
                           std::to_string(space_.level));
    }
    rows_.append_row(*x);
  }
}

CoefficientMatrix CoefficientMatrixBuilder::matrix(long bound) {
  long b = sturm_bound(space_.level);
  if (bound < b) {
    throw BoundTooSmall("coefficient matrix needs at least " + std::to_string(b) + " rows");
  }
  ensure(bound);
  CoefficientMatrix out;
  out.level = space_.level;
  out.genus = space_.genus;
  out.sturm = b;
  out.bound = bound;
  out.entries = IntMatrix(bound, space_.genus);
  for (long n = 1; n <= bound; ++n) out.entries.set_row(n - 1, rows_.row(n - 1));
  return out;
}

CoefficientMatrix coefficient_matrix(const ModSymSpace& space, long bound, HeckeCache& cache) {
  CoefficientMatrixBuilder builder(space, cache);
  return builder.matrix(bound);
}

}  // namespace heckeanemic
