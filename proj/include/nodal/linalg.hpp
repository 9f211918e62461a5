#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "nodal/scalar.hpp"

namespace nodal {

// rank, pivot columns and a kernel basis (one column per kernel vector)
template <class S>
struct RankKernel {
  long rank = 0;
  std::vector<long> pivot_cols;
  MatX<S> kernel;
};

namespace detail {

inline void check_same_modulus(const PrimeField& k, const MatX<Fp>& m) {
  for (long i = 0; i < m.rows(); ++i)
    for (long j = 0; j < m.cols(); ++j) {
      const Fp& e = m(i, j);
      if (e.attached() && e.modulus() != k.p)
        throw std::invalid_argument("rank_and_kernel: mixed-field entries");
    }
}

// kernel basis from a reduced row echelon form: one vector per free column
template <class Field>
MatX<typename Field::Scalar> kernel_from_rref(
    const Field& k, const MatX<typename Field::Scalar>& r, long rank,
    const std::vector<long>& pivot_cols) {
  using S = typename Field::Scalar;
  long cols = r.cols();
  std::vector<long> pivot_of_col(cols, -1);
  for (long i = 0; i < rank; ++i) pivot_of_col[pivot_cols[i]] = i;
  long free_count = cols - rank;
  MatX<S> ker(cols, free_count);
  for (long i = 0; i < cols; ++i)
    for (long j = 0; j < free_count; ++j) ker(i, j) = k.zero();
  long slot = 0;
  for (long f = 0; f < cols; ++f) {
    if (pivot_of_col[f] >= 0) continue;
    ker(f, slot) = k.one();
    for (long i = 0; i < rank; ++i) {
      // row i reads x_{pivot} + sum_{free j} r(i,j) x_j = 0
      ker(pivot_cols[i], slot) = -r(i, f);
    }
    ++slot;
  }
  return ker;
}

}  // namespace detail

// Gauss-Jordan reduction over a prime field.  Returns rank, pivot columns and
// kernel basis; the input matrix is reduced in place on a copy.
inline RankKernel<Fp> rank_and_kernel(const PrimeField& k, MatX<Fp> m) {
  detail::check_same_modulus(k, m);
  long rows = m.rows(), cols = m.cols();
  RankKernel<Fp> out;
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i)
      if (!k.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r)
      for (long j = c; j < cols; ++j) std::swap(m(piv, j), m(r, j));
    Fp inv = k.inv(m(r, c));
    for (long j = c; j < cols; ++j) m(r, j) = m(r, j) * inv;
    for (long i = 0; i < rows; ++i) {
      if (i == r || k.is_zero(m(i, c))) continue;
      Fp f = m(i, c);
      for (long j = c; j < cols; ++j) m(i, j) = m(i, j) - f * m(r, j);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  out.kernel = detail::kernel_from_rref(k, m, r, out.pivot_cols);
  return out;
}

inline long rank_of(const PrimeField& k, const MatX<Fp>& m) {
  return rank_and_kernel(k, m).rank;
}

// Fraction-free Bareiss echelon over the integers.  After step t the entries
// are t x t minors of the input, so every division is exact.
struct BareissEchelon {
  MatX<mpz_class> u;
  std::vector<long> pivot_cols;
  long rank = 0;
  int det_sign = 1;
};

inline BareissEchelon bareiss_echelon(MatX<mpz_class> m) {
  long rows = m.rows(), cols = m.cols();
  BareissEchelon out;
  mpz_class prev = 1;
  long r = 0;
  for (long c = 0; c < cols && r < rows; ++c) {
    long piv = -1;
    for (long i = r; i < rows; ++i)
      if (m(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) {
      for (long j = 0; j < cols; ++j) std::swap(m(piv, j), m(r, j));
      out.det_sign = -out.det_sign;
    }
    for (long i = r + 1; i < rows; ++i) {
      for (long j = c + 1; j < cols; ++j) {
        mpz_class num = m(r, c) * m(i, j) - m(i, c) * m(r, j);
        mpz_divexact(m(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  out.u = std::move(m);
  return out;
}

// Rational rank and kernel: clear denominators per row, run Bareiss, then
// back-substitute on the integer echelon for an exact rational kernel.
inline RankKernel<Rat> rank_and_kernel(const RationalField& k, MatX<Rat> m) {
  long rows = m.rows(), cols = m.cols();
  MatX<mpz_class> z(rows, cols);
  for (long i = 0; i < rows; ++i) {
    mpz_class lcm = 1;
    for (long j = 0; j < cols; ++j) {
      m(i, j).canonicalize();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
              m(i, j).get_den().get_mpz_t());
    }
    for (long j = 0; j < cols; ++j) {
      mpq_class scaled = m(i, j) * Rat(lcm);
      z(i, j) = scaled.get_num();
    }
  }
  BareissEchelon ech = bareiss_echelon(std::move(z));
  RankKernel<Rat> out;
  out.rank = ech.rank;
  out.pivot_cols = ech.pivot_cols;

  std::vector<long> pivot_of_col(cols, -1);
  for (long i = 0; i < ech.rank; ++i) pivot_of_col[ech.pivot_cols[i]] = i;
  long free_count = cols - ech.rank;
  out.kernel = MatX<Rat>(cols, free_count);
  for (long i = 0; i < cols; ++i)
    for (long j = 0; j < free_count; ++j) out.kernel(i, j) = k.zero();
  long slot = 0;
  for (long f = 0; f < cols; ++f) {
    if (pivot_of_col[f] >= 0) continue;
    VecX<Rat> x(cols);
    for (long i = 0; i < cols; ++i) x(i) = k.zero();
    x(f) = k.one();
    for (long i = ech.rank - 1; i >= 0; --i) {
      long pc = ech.pivot_cols[i];
      Rat acc(0);
      for (long j = pc + 1; j < cols; ++j) {
        if (ech.u(i, j) != 0 && x(j) != 0) acc += Rat(ech.u(i, j)) * x(j);
      }
      x(pc) = -acc / Rat(ech.u(i, pc));
    }
    for (long i = 0; i < cols; ++i) out.kernel(i, slot) = x(i);
    ++slot;
  }
  return out;
}

inline long rank_of(const RationalField& k, const MatX<Rat>& m) {
  return rank_and_kernel(k, m).rank;
}

inline Fp determinant(const PrimeField& k, MatX<Fp> m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("determinant: matrix not square");
  detail::check_same_modulus(k, m);
  long n = m.rows();
  Fp det = k.one();
  for (long c = 0; c < n; ++c) {
    long piv = -1;
    for (long i = c; i < n; ++i)
      if (!k.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) return k.zero();
    if (piv != c) {
      for (long j = c; j < n; ++j) std::swap(m(piv, j), m(c, j));
      det = -det;
    }
    det = det * m(c, c);
    Fp inv = k.inv(m(c, c));
    for (long i = c + 1; i < n; ++i) {
      if (k.is_zero(m(i, c))) continue;
      Fp f = m(i, c) * inv;
      for (long j = c; j < n; ++j) m(i, j) = m(i, j) - f * m(c, j);
    }
  }
  return det;
}

inline Rat determinant(const RationalField&, MatX<Rat> m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("determinant: matrix not square");
  long n = m.rows();
  if (n == 0) return Rat(1);
  MatX<mpz_class> z(n, n);
  Rat scale(1);
  for (long i = 0; i < n; ++i) {
    mpz_class lcm = 1;
    for (long j = 0; j < n; ++j) {
      m(i, j).canonicalize();
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(),
              m(i, j).get_den().get_mpz_t());
    }
    for (long j = 0; j < n; ++j) {
      mpq_class scaled = m(i, j) * Rat(lcm);
      z(i, j) = scaled.get_num();
    }
    scale *= Rat(lcm);
  }
  BareissEchelon ech = bareiss_echelon(std::move(z));
  if (ech.rank < n) return Rat(0);
  // for a full-rank square Bareiss echelon the last pivot is the determinant
  Rat det(ech.u(n - 1, n - 1));
  if (ech.det_sign < 0) det = -det;
  return det / scale;
}

// Bareiss determinant over any integral domain with exact division.  Used for
// resultants whose entries are themselves polynomials.
template <class T, class Ring>
T bareiss_determinant_ring(const Ring& ring, std::vector<std::vector<T>> a) {
  std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n)
      throw std::invalid_argument("bareiss_determinant_ring: not square");
  if (n == 0) return ring.one();
  T prev = ring.one();
  int sign = 1;
  for (std::size_t c = 0; c + 1 < n; ++c) {
    std::size_t piv = n;
    for (std::size_t i = c; i < n; ++i)
      if (!ring.is_zero(a[i][c])) {
        piv = i;
        break;
      }
    if (piv == n) return ring.zero();
    if (piv != c) {
      std::swap(a[piv], a[c]);
      sign = -sign;
    }
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j) {
        T num = ring.sub(ring.mul(a[c][c], a[i][j]), ring.mul(a[i][c], a[c][j]));
        a[i][j] = ring.div_exact(num, prev);
      }
      a[i][c] = ring.zero();
    }
    prev = a[c][c];
  }
  T det = a[n - 1][n - 1];
  if (sign < 0) det = ring.neg(det);
  return det;
}

}  // namespace nodal
