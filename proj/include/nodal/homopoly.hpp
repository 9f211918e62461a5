#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nodal/linalg.hpp"
#include "nodal/scalar.hpp"
#include "nodal/unipoly.hpp"

namespace nodal {

inline long binomial_long(long a, long b) {
  if (b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  long r = 1;
  for (long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

// Monomials of fixed degree d in n+1 variables, graded lexicographic with
// x0 highest: index 0 is x0^d, the last index is xn^d.
class MonomialBasis {
 public:
  MonomialBasis(int n, long d) : n_(n), d_(d) {
    if (n < 0 || d < 0)
      throw std::invalid_argument("MonomialBasis: negative parameters");
    std::vector<int> e(static_cast<std::size_t>(n) + 1, 0);
    emit(e, 0, d);
    for (std::size_t i = 0; i < exps_.size(); ++i)
      index_[exps_[i]] = static_cast<long>(i);
  }

  int vars() const { return n_ + 1; }
  int n() const { return n_; }
  long degree() const { return d_; }
  long size() const { return static_cast<long>(exps_.size()); }
  const std::vector<int>& exponents(long i) const {
    return exps_[static_cast<std::size_t>(i)];
  }
  long index(const std::vector<int>& e) const {
    auto it = index_.find(e);
    if (it == index_.end())
      throw std::invalid_argument("MonomialBasis: exponent not in basis");
    return it->second;
  }

 private:
  void emit(std::vector<int>& e, int var, long rest) {
    if (var == n_) {
      e[static_cast<std::size_t>(var)] = static_cast<int>(rest);
      exps_.push_back(e);
      return;
    }
    for (long v = rest; v >= 0; --v) {
      e[static_cast<std::size_t>(var)] = static_cast<int>(v);
      emit(e, var + 1, rest - v);
    }
  }

  int n_;
  long d_;
  std::vector<std::vector<int>> exps_;
  std::map<std::vector<int>, long> index_;
};

// shared cache so repeated constructions of the same basis are free
inline const MonomialBasis& monomial_basis(int n, long d) {
  static std::map<std::pair<int, long>, std::unique_ptr<MonomialBasis>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, d);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<MonomialBasis>(n, d)).first;
  return *it->second;
}

// Dense homogeneous polynomial of fixed degree in n+1 variables, coefficients
// stored in graded-lex basis order.  A degree-0 polynomial is allowed only as
// the zero form.
template <class Field>
class HomogeneousPoly {
 public:
  using S = typename Field::Scalar;

  HomogeneousPoly(const Field& k, int n, long d)
      : k_(k), n_(n), d_(d), c_(monomial_basis(n, d).size()) {
    for (long i = 0; i < c_.size(); ++i) c_(i) = k_.zero();
  }
  HomogeneousPoly(const Field& k, int n, long d, VecX<S> coeffs)
      : k_(k), n_(n), d_(d), c_(std::move(coeffs)) {
    if (c_.size() != monomial_basis(n, d).size())
      throw std::invalid_argument("HomogeneousPoly: coefficient count");
    if (d_ == 0 && !k_.is_zero(c_(0)))
      throw std::invalid_argument(
          "HomogeneousPoly: nonzero constant form not allowed");
  }

  const Field& field() const { return k_; }
  int n() const { return n_; }
  int vars() const { return n_ + 1; }
  long degree() const { return d_; }
  const MonomialBasis& basis() const { return monomial_basis(n_, d_); }
  long terms() const { return c_.size(); }

  const S& coeff(long i) const { return c_(i); }
  S& coeff(long i) { return c_(i); }
  const S& coeff(const std::vector<int>& e) const {
    return c_(basis().index(e));
  }
  S& coeff(const std::vector<int>& e) { return c_(basis().index(e)); }
  const VecX<S>& coeffs() const { return c_; }

  bool is_zero() const {
    for (long i = 0; i < c_.size(); ++i)
      if (!k_.is_zero(c_(i))) return false;
    return true;
  }

  friend HomogeneousPoly operator+(const HomogeneousPoly& a,
                                   const HomogeneousPoly& b) {
    a.check_compatible(b);
    HomogeneousPoly r(a.k_, a.n_, a.d_);
    for (long i = 0; i < a.c_.size(); ++i) r.c_(i) = a.c_(i) + b.c_(i);
    return r;
  }
  friend HomogeneousPoly operator-(const HomogeneousPoly& a,
                                   const HomogeneousPoly& b) {
    a.check_compatible(b);
    HomogeneousPoly r(a.k_, a.n_, a.d_);
    for (long i = 0; i < a.c_.size(); ++i) r.c_(i) = a.c_(i) - b.c_(i);
    return r;
  }
  friend HomogeneousPoly operator*(const S& s, const HomogeneousPoly& a) {
    HomogeneousPoly r(a.k_, a.n_, a.d_);
    for (long i = 0; i < a.c_.size(); ++i) r.c_(i) = s * a.c_(i);
    return r;
  }
  friend bool operator==(const HomogeneousPoly& a, const HomogeneousPoly& b) {
    if (a.n_ != b.n_ || a.d_ != b.d_) return false;
    for (long i = 0; i < a.c_.size(); ++i)
      if (a.c_(i) != b.c_(i)) return false;
    return true;
  }
  friend bool operator!=(const HomogeneousPoly& a, const HomogeneousPoly& b) {
    return !(a == b);
  }

  S evaluate(const VecX<S>& point) const {
    if (point.size() != n_ + 1)
      throw std::invalid_argument("HomogeneousPoly::evaluate: wrong arity");
    const MonomialBasis& mb = basis();
    // powers[j][k] = point_j^k
    std::vector<std::vector<S>> powers(static_cast<std::size_t>(n_) + 1);
    for (int j = 0; j <= n_; ++j) {
      powers[static_cast<std::size_t>(j)].resize(
          static_cast<std::size_t>(d_) + 1, k_.one());
      for (long k = 1; k <= d_; ++k)
        powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
            powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - 1)] *
            point(j);
    }
    S acc = k_.zero();
    for (long i = 0; i < mb.size(); ++i) {
      if (k_.is_zero(c_(i))) continue;
      const std::vector<int>& e = mb.exponents(i);
      S term = c_(i);
      for (int j = 0; j <= n_; ++j)
        term = term *
               powers[static_cast<std::size_t>(j)][static_cast<std::size_t>(
                   e[static_cast<std::size_t>(j)])];
      acc += term;
    }
    return acc;
  }

  // normalize so the first nonzero coefficient in basis order is 1
  HomogeneousPoly normalized() const {
    for (long i = 0; i < c_.size(); ++i)
      if (!k_.is_zero(c_(i))) return k_.inv(c_(i)) * *this;
    return *this;
  }

 private:
  void check_compatible(const HomogeneousPoly& o) const {
    if (n_ != o.n_ || d_ != o.d_)
      throw std::invalid_argument("HomogeneousPoly: shape mismatch");
  }

  Field k_;
  int n_;
  long d_;
  VecX<S> c_;
};

template <class Field>
HomogeneousPoly<Field> partial(const HomogeneousPoly<Field>& f, int var) {
  const Field& k = f.field();
  if (var < 0 || var > f.n())
    throw std::invalid_argument("partial: variable out of range");
  check_characteristic(k, f.degree());
  if (f.degree() == 0) return HomogeneousPoly<Field>(k, f.n(), 0);
  HomogeneousPoly<Field> r(k, f.n(), f.degree() - 1);
  const MonomialBasis& mb = f.basis();
  const MonomialBasis& rb = r.basis();
  for (long i = 0; i < mb.size(); ++i) {
    const std::vector<int>& e = mb.exponents(i);
    int ev = e[static_cast<std::size_t>(var)];
    if (ev == 0 || k.is_zero(f.coeff(i))) continue;
    std::vector<int> e2 = e;
    e2[static_cast<std::size_t>(var)] -= 1;
    r.coeff(rb.index(e2)) += k.from_int(ev) * f.coeff(i);
  }
  return r;
}

template <class Field>
HomogeneousPoly<Field> multiply(const HomogeneousPoly<Field>& a,
                                const HomogeneousPoly<Field>& b) {
  if (a.n() != b.n())
    throw std::invalid_argument("multiply: ambient dimension mismatch");
  const Field& k = a.field();
  HomogeneousPoly<Field> r(k, a.n(), a.degree() + b.degree());
  const MonomialBasis& ab = a.basis();
  const MonomialBasis& bb = b.basis();
  const MonomialBasis& rb = r.basis();
  for (long i = 0; i < ab.size(); ++i) {
    if (k.is_zero(a.coeff(i))) continue;
    for (long j = 0; j < bb.size(); ++j) {
      if (k.is_zero(b.coeff(j))) continue;
      std::vector<int> e = ab.exponents(i);
      const std::vector<int>& f = bb.exponents(j);
      for (std::size_t v = 0; v < e.size(); ++v) e[v] += f[v];
      r.coeff(rb.index(e)) += a.coeff(i) * b.coeff(j);
    }
  }
  return r;
}

// Substitute x = M s where M is (n+1) x m with full column rank, pulling the
// form back to the linear subspace parametrized by the columns; m = 2 gives
// the restriction to a line, m = 3 to a plane, m = n+1 a coordinate change.
template <class Field>
HomogeneousPoly<Field> restrict_poly(const HomogeneousPoly<Field>& f,
                                     const MatX<typename Field::Scalar>& m) {
  using S = typename Field::Scalar;
  const Field& k = f.field();
  if (m.rows() != f.n() + 1)
    throw std::invalid_argument("restrict_poly: row count must be n+1");
  long cols = m.cols();
  if (cols < 1 || cols > m.rows())
    throw std::invalid_argument("restrict_poly: column count out of range");
  if (rank_of(k, m) != cols)
    throw std::invalid_argument("restrict_poly: parametrization is degenerate");
  int rn = static_cast<int>(cols) - 1;
  long d = f.degree();
  HomogeneousPoly<Field> result(k, rn, d);
  if (f.is_zero()) return result;

  // linear forms L_j(s) = sum_i m(j,i) s_i and their powers up to d
  std::vector<std::vector<HomogeneousPoly<Field>>> pow;
  pow.reserve(static_cast<std::size_t>(f.n()) + 1);
  for (int j = 0; j <= f.n(); ++j) {
    HomogeneousPoly<Field> lin(k, rn, 1);
    for (long i = 0; i < cols; ++i) lin.coeff(i) = m(j, i);
    std::vector<HomogeneousPoly<Field>> powers;
    powers.push_back(HomogeneousPoly<Field>(k, rn, 0));  // placeholder at 0
    powers.push_back(lin);
    for (long e = 2; e <= d; ++e)
      powers.push_back(multiply(powers.back(), lin));
    pow.push_back(std::move(powers));
  }

  const MonomialBasis& mb = f.basis();
  for (long i = 0; i < mb.size(); ++i) {
    if (k.is_zero(f.coeff(i))) continue;
    const std::vector<int>& e = mb.exponents(i);
    HomogeneousPoly<Field> term(k, rn, 0);
    bool started = false;
    for (int j = 0; j <= f.n(); ++j) {
      int ej = e[static_cast<std::size_t>(j)];
      if (ej == 0) continue;
      const HomogeneousPoly<Field>& p =
          pow[static_cast<std::size_t>(j)][static_cast<std::size_t>(ej)];
      term = started ? multiply(term, p) : p;
      started = true;
    }
    if (!started) continue;  // impossible for d >= 1
    result = result + (f.coeff(i) * term);
  }
  return result;
}

// binary form (n = 1) to univariate by setting the first variable to 1;
// coefficient of t^j is the coefficient of x0^(d-j) x1^j
template <class Field>
UniPoly<Field> to_unipoly(const HomogeneousPoly<Field>& f) {
  if (f.n() != 1)
    throw std::invalid_argument("to_unipoly: binary form required");
  std::vector<typename Field::Scalar> c(
      static_cast<std::size_t>(f.degree()) + 1, f.field().zero());
  for (long j = 0; j <= f.degree(); ++j) c[static_cast<std::size_t>(j)] =
      f.coeff(j);
  return UniPoly<Field>(f.field(), std::move(c));
}

template <class Field>
HomogeneousPoly<Field> from_unipoly(const Field& k, const UniPoly<Field>& u,
                                    long d) {
  if (u.degree() > d)
    throw std::invalid_argument("from_unipoly: degree exceeds target");
  HomogeneousPoly<Field> f(k, 1, d);
  for (long j = 0; j <= u.degree(); ++j) f.coeff(j) = u.coeff(j);
  return f;
}

template <class Field>
HomogeneousPoly<Field> random_poly(const Field& k, int n, long d, Rng& rng) {
  HomogeneousPoly<Field> f(k, n, d);
  for (long i = 0; i < f.terms(); ++i) f.coeff(i) = k.random(rng);
  return f;
}

template <class Field>
VecX<typename Field::Scalar> gradient_at(
    const HomogeneousPoly<Field>& f,
    const VecX<typename Field::Scalar>& point) {
  VecX<typename Field::Scalar> g(f.n() + 1);
  for (int i = 0; i <= f.n(); ++i) g(i) = partial(f, i).evaluate(point);
  return g;
}

}  // namespace nodal
