#include "heckeanemic/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "heckeanemic/errors.hpp"

namespace heckeanemic {

namespace {

// a -= q * b, componentwise from column `from` on.
void vec_submul(IntVec& a, const mpz_class& q, const IntVec& b, long from = 0) {
  if (q == 0) return;
  for (long j = from; j < (long)a.size(); ++j) {
    mpz_submul(a[j].get_mpz_t(), q.get_mpz_t(), b[j].get_mpz_t());
  }
}

void vec_negate(IntVec& a) {
  for (auto& x : a) x = -x;
}

long first_nonzero(const IntVec& v, long from) {
  for (long j = from; j < (long)v.size(); ++j) {
    if (v[j] != 0) return j;
  }
  return -1;
}

}  // namespace

// ---------------------------------------------------------------- IntMatrix

IntMatrix IntMatrix::identity(long n) {
  IntMatrix m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntVec IntMatrix::row(long r) const {
  return IntVec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

void IntMatrix::set_row(long r, const IntVec& v) {
  std::copy(v.begin(), v.end(), data_.begin() + r * cols_);
}

void IntMatrix::append_row(const IntVec& v) {
  if ((long)v.size() != cols_) throw std::invalid_argument("append_row: width mismatch");
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

void IntMatrix::swap_rows(long r1, long r2) {
  if (r1 == r2) return;
  for (long j = 0; j < cols_; ++j) std::swap(at(r1, j), at(r2, j));
}

bool IntMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (x != 0) return false;
  }
  return true;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("IntMatrix product: shape mismatch");
  IntMatrix c(a.rows(), b.cols());
  for (long i = 0; i < a.rows(); ++i) {
    for (long k = 0; k < a.cols(); ++k) {
      const mpz_class& aik = a.at(i, k);
      if (aik == 0) continue;
      for (long j = 0; j < b.cols(); ++j) {
        mpz_addmul(c.at(i, j).get_mpz_t(), aik.get_mpz_t(), b.at(k, j).get_mpz_t());
      }
    }
  }
  return c;
}

// ---------------------------------------------------------------- RatMatrix

RatMatrix::RatMatrix(const IntMatrix& num, const mpz_class& den)
    : rows_(num.rows()), cols_(num.cols()), data_(rows_ * cols_) {
  if (den == 0) throw std::invalid_argument("RatMatrix: zero denominator");
  for (long i = 0; i < rows_; ++i) {
    for (long j = 0; j < cols_; ++j) {
      mpq_class q(num.at(i, j), den);
      q.canonicalize();
      at(i, j) = std::move(q);
    }
  }
}

RatMatrix RatMatrix::identity(long n) {
  RatMatrix m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

void RatMatrix::swap_rows(long r1, long r2) {
  if (r1 == r2) return;
  for (long j = 0; j < cols_; ++j) std::swap(at(r1, j), at(r2, j));
}

bool RatMatrix::is_zero() const {
  for (const auto& x : data_) {
    if (x != 0) return false;
  }
  return true;
}

std::pair<IntMatrix, mpz_class> RatMatrix::cleared() const {
  mpz_class den = 1;
  for (const auto& x : data_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  IntMatrix num(rows_, cols_);
  for (long i = 0; i < rows_; ++i) {
    for (long j = 0; j < cols_; ++j) {
      const mpq_class& q = at(i, j);
      mpz_class f = den / mpz_class(q.get_den());
      num.at(i, j) = mpz_class(q.get_num()) * f;
    }
  }
  return {std::move(num), std::move(den)};
}

RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("RatMatrix product: shape mismatch");
  auto [ai, da] = a.cleared();
  auto [bi, db] = b.cleared();
  return RatMatrix(ai * bi, da * db);
}

RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("RatMatrix sum: shape mismatch");
  RatMatrix c(a.rows(), a.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) + b.at(i, j);
  return c;
}

RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("RatMatrix difference: shape mismatch");
  RatMatrix c(a.rows(), a.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) c.at(i, j) = a.at(i, j) - b.at(i, j);
  return c;
}

RatMatrix operator*(const mpq_class& s, const RatMatrix& a) {
  RatMatrix c(a.rows(), a.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) c.at(i, j) = s * a.at(i, j);
  return c;
}

RatMatrix rref(const RatMatrix& m, std::vector<long>* pivot_cols) {
  RatMatrix a = m;
  std::vector<long> pivots;
  long r = 0;
  for (long col = 0; col < a.cols() && r < a.rows(); ++col) {
    long piv = -1;
    for (long i = r; i < a.rows(); ++i) {
      if (a.at(i, col) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    a.swap_rows(r, piv);
    mpq_class inv = 1 / a.at(r, col);
    for (long j = col; j < a.cols(); ++j) a.at(r, j) *= inv;
    for (long i = 0; i < a.rows(); ++i) {
      if (i == r || a.at(i, col) == 0) continue;
      mpq_class f = a.at(i, col);
      for (long j = col; j < a.cols(); ++j) a.at(i, j) -= f * a.at(r, j);
    }
    pivots.push_back(col);
    ++r;
  }
  if (pivot_cols) *pivot_cols = std::move(pivots);
  return a;
}

RatMatrix rat_nullspace(const RatMatrix& m, std::vector<long>* free_cols) {
  std::vector<long> piv;
  RatMatrix rr = rref(m, &piv);
  std::vector<long> free_list;
  for (long c = 0, k = 0; c < m.cols(); ++c) {
    if (k < (long)piv.size() && piv[k] == c) {
      ++k;
    } else {
      free_list.push_back(c);
    }
  }
  RatMatrix basis((long)free_list.size(), m.cols());
  for (long b = 0; b < (long)free_list.size(); ++b) {
    long f = free_list[b];
    basis.at(b, f) = 1;
    for (long i = 0; i < (long)piv.size(); ++i) basis.at(b, piv[i]) = -rr.at(i, f);
  }
  if (free_cols) *free_cols = std::move(free_list);
  return basis;
}

// ----------------------------------------------------------------- F2Matrix

F2Matrix::F2Matrix(long rows, long cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_) {}

F2Matrix F2Matrix::identity(long n) {
  F2Matrix m(n, n);
  for (long i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

F2Matrix F2Matrix::reduction(const IntMatrix& m) {
  F2Matrix r(m.rows(), m.cols());
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) r.set(i, j, mpz_odd_p(m.at(i, j).get_mpz_t()));
  return r;
}

bool F2Matrix::get(long r, long c) const {
  return (bits_[r * words_ + c / 64] >> (c % 64)) & 1u;
}

void F2Matrix::set(long r, long c, bool v) {
  uint64_t& w = bits_[r * words_ + c / 64];
  uint64_t mask = uint64_t(1) << (c % 64);
  if (v) {
    w |= mask;
  } else {
    w &= ~mask;
  }
}

void F2Matrix::xor_rows(long dst, long src) {
  for (long w = 0; w < words_; ++w) bits_[dst * words_ + w] ^= bits_[src * words_ + w];
}

F2Matrix operator*(const F2Matrix& a, const F2Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("F2Matrix product: shape mismatch");
  F2Matrix c(a.rows(), b.cols());
  for (long i = 0; i < a.rows(); ++i) {
    for (long k = 0; k < a.cols(); ++k) {
      if (!a.get(i, k)) continue;
      for (long j = 0; j < b.cols(); ++j) {
        if (b.get(k, j)) c.set(i, j, !c.get(i, j));
      }
    }
  }
  return c;
}

namespace {

F2Matrix f2_rref(const F2Matrix& m, std::vector<long>& pivots) {
  F2Matrix a = m;
  long r = 0;
  for (long col = 0; col < a.cols() && r < a.rows(); ++col) {
    long piv = -1;
    for (long i = r; i < a.rows(); ++i) {
      if (a.get(i, col)) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    if (piv != r) {
      for (long j = 0; j < a.cols(); ++j) {
        bool t = a.get(r, j);
        a.set(r, j, a.get(piv, j));
        a.set(piv, j, t);
      }
    }
    for (long i = 0; i < a.rows(); ++i) {
      if (i != r && a.get(i, col)) a.xor_rows(i, r);
    }
    pivots.push_back(col);
    ++r;
  }
  return a;
}

}  // namespace

long f2_rank(const F2Matrix& m) {
  std::vector<long> piv;
  f2_rref(m, piv);
  return (long)piv.size();
}

F2Matrix f2_nullspace(const F2Matrix& m) {
  std::vector<long> piv;
  F2Matrix rr = f2_rref(m, piv);
  std::vector<long> free_list;
  for (long c = 0, k = 0; c < m.cols(); ++c) {
    if (k < (long)piv.size() && piv[k] == c) {
      ++k;
    } else {
      free_list.push_back(c);
    }
  }
  F2Matrix basis((long)free_list.size(), m.cols());
  for (long b = 0; b < (long)free_list.size(); ++b) {
    long f = free_list[b];
    basis.set(b, f, true);
    for (long i = 0; i < (long)piv.size(); ++i) basis.set(b, piv[i], rr.get(i, f));
  }
  return basis;
}

// ---------------------------------------------------------------- HNF / SNF

namespace {

struct EchelonRow {
  long pivot;
  IntVec v;
  IntVec u;  // transform row, empty when not tracked
};

// Kannan-Bachem style insertion with immediate reduction to limit growth.
void echelon_insert(std::vector<EchelonRow>& ech, IntVec v, IntVec u, bool track) {
  long scan = 0;
  while (true) {
    long c = first_nonzero(v, scan);
    if (c < 0) return;  // row died
    scan = c;
    auto it = std::lower_bound(ech.begin(), ech.end(), c,
                               [](const EchelonRow& e, long col) { return e.pivot < col; });
    if (it == ech.end() || it->pivot != c) {
      if (v[c] < 0) {
        vec_negate(v);
        if (track) vec_negate(u);
      }
      // bring entries at later pivots into range
      for (auto jt = it; jt != ech.end(); ++jt) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), v[jt->pivot].get_mpz_t(), jt->v[jt->pivot].get_mpz_t());
        vec_submul(v, q, jt->v, jt->pivot);
        if (track) vec_submul(u, q, jt->u);
      }
      it = ech.insert(it, EchelonRow{c, std::move(v), std::move(u)});
      // bring entries of earlier rows at column c into range
      for (auto jt = ech.begin(); jt != it; ++jt) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), jt->v[c].get_mpz_t(), it->v[c].get_mpz_t());
        vec_submul(jt->v, q, it->v, c);
        if (track) vec_submul(jt->u, q, it->u);
      }
      return;
    }
    EchelonRow& e = *it;
    if (mpz_divisible_p(v[c].get_mpz_t(), e.v[c].get_mpz_t())) {
      mpz_class q = v[c] / e.v[c];
      vec_submul(v, q, e.v, c);
      if (track) vec_submul(u, q, e.u);
    } else {
      mpz_class g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), e.v[c].get_mpz_t(),
                 v[c].get_mpz_t());
      mpz_class q1 = e.v[c] / g;
      mpz_class q2 = v[c] / g;
      long n = (long)v.size();
      IntVec new_e(n), new_v(n);
      for (long j = c; j < n; ++j) {
        new_e[j] = s * e.v[j] + t * v[j];
        new_v[j] = q1 * v[j] - q2 * e.v[j];
      }
      IntVec new_eu, new_vu;
      if (track) {
        long k = (long)u.size();
        new_eu.resize(k);
        new_vu.resize(k);
        for (long j = 0; j < k; ++j) {
          new_eu[j] = s * e.u[j] + t * u[j];
          new_vu[j] = q1 * u[j] - q2 * e.u[j];
        }
      }
      e.v = std::move(new_e);
      e.u = std::move(new_eu);
      v = std::move(new_v);
      u = std::move(new_vu);
    }
  }
}

void echelon_reduce(std::vector<EchelonRow>& ech, bool track) {
  for (long j = 1; j < (long)ech.size(); ++j) {
    long p = ech[j].pivot;
    for (long i = 0; i < j; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), ech[i].v[p].get_mpz_t(), ech[j].v[p].get_mpz_t());
      vec_submul(ech[i].v, q, ech[j].v, p);
      if (track) vec_submul(ech[i].u, q, ech[j].u);
    }
  }
}

HnfTransform hnf_impl(const IntMatrix& m, bool track) {
  std::vector<EchelonRow> ech;
  for (long i = 0; i < m.rows(); ++i) {
    IntVec u;
    if (track) {
      u.assign(m.rows(), 0);
      u[i] = 1;
    }
    echelon_insert(ech, m.row(i), std::move(u), track);
  }
  echelon_reduce(ech, track);
  HnfTransform out;
  out.h = IntMatrix((long)ech.size(), m.cols());
  if (track) out.u = IntMatrix((long)ech.size(), m.rows());
  for (long i = 0; i < (long)ech.size(); ++i) {
    out.h.set_row(i, ech[i].v);
    if (track) out.u.set_row(i, ech[i].u);
  }
  return out;
}

}  // namespace

IntMatrix hnf(const IntMatrix& m) { return hnf_impl(m, false).h; }

HnfTransform hnf_with_transform(const IntMatrix& m) { return hnf_impl(m, true); }

IntVec snf_divisors(const IntMatrix& m) {
  long r = m.rows(), c = m.cols();
  long n = std::min(r, c);
  IntMatrix a = m;
  IntVec divs;

  auto swap_cols = [&](long c1, long c2) {
    if (c1 == c2) return;
    for (long i = 0; i < r; ++i) std::swap(a.at(i, c1), a.at(i, c2));
  };

  long t = 0;
  while (t < n) {
    // minimal |nonzero| entry of the trailing block becomes the pivot
    long pi = -1, pj = -1;
    for (long i = t; i < r; ++i) {
      for (long j = t; j < c; ++j) {
        if (a.at(i, j) == 0) continue;
        if (pi < 0 || mpz_cmpabs(a.at(i, j).get_mpz_t(), a.at(pi, pj).get_mpz_t()) < 0) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi < 0) break;
    a.swap_rows(t, pi);
    swap_cols(t, pj);

    bool clean = false;
    while (!clean) {
      clean = true;
      if (a.at(t, t) < 0) {
        for (long j = t; j < c; ++j) a.at(t, j) = -a.at(t, j);
      }
      for (long i = t + 1; i < r; ++i) {
        if (a.at(i, t) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a.at(i, t).get_mpz_t(), a.at(t, t).get_mpz_t());
        for (long j = t; j < c; ++j) {
          mpz_submul(a.at(i, j).get_mpz_t(), q.get_mpz_t(), a.at(t, j).get_mpz_t());
        }
        if (a.at(i, t) != 0) {
          a.swap_rows(i, t);
          clean = false;
        }
      }
      for (long j = t + 1; j < c; ++j) {
        if (a.at(t, j) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a.at(t, j).get_mpz_t(), a.at(t, t).get_mpz_t());
        for (long i = t; i < r; ++i) {
          mpz_submul(a.at(i, j).get_mpz_t(), q.get_mpz_t(), a.at(i, t).get_mpz_t());
        }
        if (a.at(t, j) != 0) {
          swap_cols(j, t);
          clean = false;
        }
      }
      if (clean) {
        // enforce d_t | every remaining entry
        for (long i = t + 1; i < r && clean; ++i) {
          for (long j = t + 1; j < c && clean; ++j) {
            if (!mpz_divisible_p(a.at(i, j).get_mpz_t(), a.at(t, t).get_mpz_t())) {
              for (long k = t; k < c; ++k) a.at(t, k) += a.at(i, k);
              clean = false;
            }
          }
        }
      }
    }
    divs.push_back(abs(a.at(t, t)));
    ++t;
  }
  while ((long)divs.size() < n) divs.push_back(0);
  return divs;
}

// ------------------------------------------------------------- HermiteBasis

HermiteBasis::HermiteBasis(IntMatrix hnf_rows) : h_(std::move(hnf_rows)) {
  pivots_.reserve(h_.rows());
  for (long i = 0; i < h_.rows(); ++i) {
    long p = first_nonzero(h_.row(i), 0);
    if (p < 0 || (i > 0 && p <= pivots_.back()))
      throw std::invalid_argument("HermiteBasis: rows are not in echelon form");
    pivots_.push_back(p);
  }
}

std::optional<IntVec> HermiteBasis::coordinates(const IntVec& v) const {
  if ((long)v.size() != h_.cols()) throw std::invalid_argument("coordinates: width mismatch");
  IntVec w = v;
  IntVec x(h_.rows());
  for (long i = 0; i < h_.rows(); ++i) {
    long p = pivots_[i];
    if (w[p] == 0) continue;
    mpz_class q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), w[p].get_mpz_t(), h_.at(i, p).get_mpz_t());
    if (rem != 0) return std::nullopt;
    x[i] = q;
    for (long j = p; j < h_.cols(); ++j) {
      mpz_submul(w[j].get_mpz_t(), q.get_mpz_t(), h_.at(i, j).get_mpz_t());
    }
  }
  for (const auto& e : w) {
    if (e != 0) return std::nullopt;
  }
  return x;
}

// ----------------------------------------------------------- lattice index

LatticeQuotient lattice_quotient(const IntMatrix& sup, const IntMatrix& sub) {
  if (sup.cols() != sub.cols()) throw std::invalid_argument("lattice_quotient: width mismatch");
  HermiteBasis basis(hnf(sup));
  IntMatrix hsub = hnf(sub);
  long rsup = basis.rank();
  long rsub = hsub.rows();

  IntMatrix coords(rsub, rsup);
  for (long i = 0; i < rsub; ++i) {
    auto x = basis.coordinates(hsub.row(i));
    if (!x) throw NotASublattice();
    coords.set_row(i, *x);
  }

  LatticeQuotient out;
  out.divisors = snf_divisors(coords);
  while ((long)out.divisors.size() < rsup) out.divisors.push_back(0);
  if (rsub == rsup) {
    mpz_class idx = 1;
    bool finite = true;
    for (const auto& d : out.divisors) {
      if (d == 0) finite = false;
      idx *= d;
    }
    if (finite) out.index = idx;
  }
  return out;
}

std::optional<mpz_class> lattice_index(const IntMatrix& sup, const IntMatrix& sub) {
  return lattice_quotient(sup, sub).index;
}

std::optional<IntVec> solve_integer(const IntMatrix& rows, const IntVec& target) {
  if ((long)target.size() != rows.cols())
    throw std::invalid_argument("solve_integer: width mismatch");
  HnfTransform ht = hnf_with_transform(rows);
  HermiteBasis basis(ht.h);
  auto y = basis.coordinates(target);
  if (!y) return std::nullopt;
  IntVec x(rows.rows());
  for (long i = 0; i < (long)y->size(); ++i) {
    if ((*y)[i] == 0) continue;
    for (long j = 0; j < rows.rows(); ++j) {
      mpz_addmul(x[j].get_mpz_t(), (*y)[i].get_mpz_t(), ht.u.at(i, j).get_mpz_t());
    }
  }
  return x;
}

}  // namespace heckeanemic
