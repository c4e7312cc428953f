#include "heckeanemic/manin.hpp"

#include <algorithm>
#include <utility>

#include "heckeanemic/errors.hpp"
#include "heckeanemic/primes.hpp"

namespace heckeanemic {

ManinSymbol p1_normalize(long c, long d, long N) {
  if (N < 2) throw std::invalid_argument("p1_normalize: level must be >= 2");
  c %= N;
  if (c < 0) c += N;
  d %= N;
  if (d < 0) d += N;
  if (c == 0 && d == 0) throw InvalidSymbol(c, d, N);
  if (c == 0) return {0, 1};
  // N prime, so any nonzero c is a unit
  return {1, (d * inv_mod(c, N)) % N};
}

ManinSymbol apply_s(const ManinSymbol& s, long N) {
  // (c:d) S = (d : -c)
  return p1_normalize(s.d, -s.c, N);
}

ManinSymbol apply_t(const ManinSymbol& s, long N) {
  // (c:d) T = (d : -c-d)
  return p1_normalize(s.d, -s.c - s.d, N);
}

CuspPoint::CuspPoint(mpz_class n, mpz_class d) : num(std::move(n)), den(std::move(d)) {
  if (den == 0) {
    if (num == 0) throw std::invalid_argument("CuspPoint: 0/0");
    num = 1;
    return;
  }
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  num /= g;
  den /= g;
  if (den < 0) {
    num = -num;
    den = -den;
  }
}

namespace {

// Lift a canonical symbol to g = [a,b;c,d] in SL_2(Z).
struct Lift {
  long a, b, c, d;
};

Lift lift_symbol(const ManinSymbol& s) {
  // canonical forms are (0,1) and (1,d), both coprime as integers
  long x, y;
  xgcd(s.d, s.c, x, y);  // x*d + y*c = 1
  return {x, -y, s.c, s.d};
}

Cusp cusp_class(long denominator, long N) {
  long r = denominator % N;
  return r == 0 ? Cusp::infinity : Cusp::zero;
}

}  // namespace

CuspDifference boundary_map(const ManinSymbol& s, long N) {
  ManinSymbol canon = p1_normalize(s.c, s.d, N);
  if (canon != s) throw InvalidSymbol(s.c, s.d, N);
  // path runs from g.oo = a/c to g.0 = b/d, so the boundary is [g.0] - [g.oo]
  return {cusp_class(s.d, N), cusp_class(s.c, N)};
}

std::pair<CuspPoint, CuspPoint> symbol_path(const ManinSymbol& s) {
  Lift g = lift_symbol(s);
  return {CuspPoint(g.a, g.c), CuspPoint(g.b, g.d)};
}

void accumulate_path_counts(std::vector<long>& counts, const CuspPoint& from, const CuspPoint& to,
                            long N) {
  // {from, to} = phi(to) - phi(from), where phi(x) = {oo, x} expands through
  // the convergents p_k/q_k of x as -sum_k [((-1)^{k-1} q_k : q_{k-1})].
  auto emit = [&](const CuspPoint& x, long delta) {
    if (x.is_infinity()) return;
    mpz_class r0 = x.num, r1 = x.den;
    mpz_class q_prev = 0;  // q_{-1}
    mpz_class q_curr;
    bool have = false;
    int sign = -1;  // (-1)^{k-1} at k = 0
    mpz_class a, r2;
    while (r1 != 0) {
      mpz_fdiv_q(a.get_mpz_t(), r0.get_mpz_t(), r1.get_mpz_t());
      r2 = r0 - a * r1;
      if (!have) {
        q_curr = 1;
        have = true;
      } else {
        mpz_class q_next = a * q_curr + q_prev;
        q_prev = q_curr;
        q_curr = q_next;
      }
      long qc = (long)mpz_fdiv_ui(q_curr.get_mpz_t(), N);
      long qp = (long)mpz_fdiv_ui(q_prev.get_mpz_t(), N);
      ManinSymbol sym = p1_normalize(sign < 0 ? -qc : qc, qp, N);
      counts[sym.c == 0 ? 0 : 1 + sym.d] += delta;
      sign = -sign;
      r0 = r1;
      r1 = r2;
    }
  };
  emit(to, -1);
  emit(from, +1);
}

RatVec path_to_symbols(const CuspPoint& from, const CuspPoint& to, const ModSymSpace& space) {
  long N = space.level;
  std::vector<long> counts(N + 1, 0);
  accumulate_path_counts(counts, from, to, N);
  RatVec out(space.full_dim);
  for (long i = 0; i <= N; ++i) {
    if (counts[i] == 0) continue;
    for (long k = 0; k < space.full_dim; ++k) {
      out[k] += counts[i] * space.projection.at(k, i);
    }
  }
  return out;
}

ModSymSpace build_space(long N) {
  if (!is_prime(N)) throw NotPrime(N);
  ModSymSpace sp;
  sp.level = N;

  sp.inv_table_.assign(N, 0);
  for (long a = 1; a < N; ++a) sp.inv_table_[a] = inv_mod(a, N);

  long G = N + 1;
  sp.generators.reserve(G);
  sp.generators.push_back({0, 1});
  for (long d = 0; d < N; ++d) sp.generators.push_back({1, d});

  auto gen_index = [&](const ManinSymbol& s) { return s.c == 0 ? 0L : 1 + s.d; };

  // two-term relations x + xS = 0: pair generators, kill S-fixed points
  std::vector<long> srep(G, -1);
  std::vector<int> ssign(G, 0);
  std::vector<char> szero(G, 0);
  for (long i = 0; i < G; ++i) {
    if (srep[i] >= 0 || szero[i]) continue;
    long j = gen_index(apply_s(sp.generators[i], N));
    if (j == i) {
      szero[i] = 1;
    } else {
      srep[i] = i;
      ssign[i] = 1;
      srep[j] = i;
      ssign[j] = -1;
    }
  }

  std::vector<long> scols;
  std::vector<long> scol_index(G, -1);
  for (long i = 0; i < G; ++i) {
    if (!szero[i] && srep[i] == i) {
      scol_index[i] = (long)scols.size();
      scols.push_back(i);
    }
  }
  long nS = (long)scols.size();

  // three-term relations x + xT + xT^2 = 0, one row per T-orbit
  std::vector<char> tdone(G, 0);
  std::vector<std::vector<long>> rel_rows;
  for (long i = 0; i < G; ++i) {
    if (tdone[i]) continue;
    long i1 = gen_index(apply_t(sp.generators[i], N));
    long i2 = gen_index(apply_t(sp.generators[i1], N));
    tdone[i] = tdone[i1] = tdone[i2] = 1;
    std::vector<long> row(nS, 0);
    bool nonzero = false;
    for (long x : {i, i1, i2}) {
      if (szero[x]) continue;
      row[scol_index[srep[x]]] += ssign[x];
    }
    for (long v : row) nonzero |= (v != 0);
    if (nonzero) rel_rows.push_back(std::move(row));
  }

  RatMatrix rel((long)rel_rows.size(), nS);
  for (long r = 0; r < rel.rows(); ++r)
    for (long jc = 0; jc < nS; ++jc) rel.at(r, jc) = rel_rows[r][jc];

  std::vector<long> piv;
  RatMatrix rr = rref(rel, &piv);
  long rank = (long)piv.size();
  long D = nS - rank;
  sp.full_dim = D;

  std::vector<long> free_cols;
  for (long c = 0, k = 0; c < nS; ++c) {
    if (k < rank && piv[k] == c) {
      ++k;
    } else {
      free_cols.push_back(c);
    }
  }
  sp.basis_generator.reserve(D);
  for (long f : free_cols) sp.basis_generator.push_back(scols[f]);

  // coordinates of each S-column in the relation quotient
  RatMatrix projS(D, nS);
  for (long k = 0; k < D; ++k) projS.at(k, free_cols[k]) = 1;
  for (long r = 0; r < rank; ++r) {
    for (long k = 0; k < D; ++k) projS.at(k, piv[r]) = -rr.at(r, free_cols[k]);
  }

  sp.projection = RatMatrix(D, G);
  for (long i = 0; i < G; ++i) {
    if (szero[i]) continue;
    long col = scol_index[srep[i]];
    for (long k = 0; k < D; ++k) {
      sp.projection.at(k, i) = ssign[i] > 0 ? projS.at(k, col) : -projS.at(k, col);
    }
  }

  // boundary on the quotient basis; row 0 holds the zero-class coefficient
  RatMatrix bnd(2, D);
  for (long k = 0; k < D; ++k) {
    CuspDifference cd = boundary_map(sp.generators[sp.basis_generator[k]], N);
    bnd.at(cd.plus == Cusp::zero ? 0 : 1, k) += 1;
    bnd.at(cd.minus == Cusp::zero ? 0 : 1, k) -= 1;
  }

  sp.cuspidal_basis = rat_nullspace(bnd, &sp.cuspidal_pivots);
  long cusp_dim = sp.cuspidal_basis.rows();
  if (cusp_dim != D - 1 || (D - 1) % 2 != 0) {
    throw Error("modular symbols presentation has unexpected dimensions at level " +
                std::to_string(N) + ": full " + std::to_string(D) + ", cuspidal " +
                std::to_string(cusp_dim));
  }
  sp.genus = (D - 1) / 2;
  return sp;
}

}  // namespace heckeanemic
