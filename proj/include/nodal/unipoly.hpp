#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nodal/linalg.hpp"
#include "nodal/scalar.hpp"

namespace nodal {

// Dense univariate polynomial over a field descriptor.  The coefficient of
// t^i sits at index i; the zero polynomial has an empty coefficient vector
// and degree -1.
template <class Field>
class UniPoly {
 public:
  using S = typename Field::Scalar;

  explicit UniPoly(const Field& k) : k_(k) {}
  UniPoly(const Field& k, std::vector<S> coeffs)
      : k_(k), c_(std::move(coeffs)) {
    trim();
  }

  static UniPoly zero(const Field& k) { return UniPoly(k); }
  static UniPoly constant(const Field& k, const S& v) {
    return UniPoly(k, {v});
  }
  static UniPoly monomial(const Field& k, const S& v, long deg) {
    std::vector<S> c(static_cast<std::size_t>(deg) + 1, k.zero());
    c.back() = v;
    return UniPoly(k, std::move(c));
  }

  const Field& field() const { return k_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  S coeff(long i) const {
    if (i < 0 || i >= static_cast<long>(c_.size())) return k_.zero();
    return c_[static_cast<std::size_t>(i)];
  }
  S lc() const {
    if (c_.empty()) throw std::domain_error("UniPoly::lc: zero polynomial");
    return c_.back();
  }
  const std::vector<S>& coeffs() const { return c_; }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<S> c(std::max(a.c_.size(), b.c_.size()), a.k_.zero());
    for (std::size_t i = 0; i < c.size(); ++i)
      c[i] = a.coeff(static_cast<long>(i)) + b.coeff(static_cast<long>(i));
    return UniPoly(a.k_, std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<S> c(std::max(a.c_.size(), b.c_.size()), a.k_.zero());
    for (std::size_t i = 0; i < c.size(); ++i)
      c[i] = a.coeff(static_cast<long>(i)) - b.coeff(static_cast<long>(i));
    return UniPoly(a.k_, std::move(c));
  }
  UniPoly operator-() const {
    std::vector<S> c(c_.size(), k_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return UniPoly(k_, std::move(c));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return zero(a.k_);
    std::vector<S> c(a.c_.size() + b.c_.size() - 1, a.k_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.k_.is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        c[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(a.k_, std::move(c));
  }
  friend UniPoly operator*(const S& s, const UniPoly& a) {
    std::vector<S> c(a.c_.size(), a.k_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] = s * a.c_[i];
    return UniPoly(a.k_, std::move(c));
  }

  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    if (a.degree() != b.degree()) return false;
    for (long i = 0; i <= a.degree(); ++i)
      if (a.coeff(i) != b.coeff(i)) return false;
    return true;
  }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) {
    return !(a == b);
  }

  // multiply by t^k
  UniPoly shifted(long k) const {
    if (is_zero()) return *this;
    std::vector<S> c(c_.size() + static_cast<std::size_t>(k), k_.zero());
    for (std::size_t i = 0; i < c_.size(); ++i)
      c[i + static_cast<std::size_t>(k)] = c_[i];
    return UniPoly(k_, std::move(c));
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    return k_.inv(lc()) * *this;
  }

  UniPoly derivative() const {
    if (degree() <= 0) return zero(k_);
    std::vector<S> c(c_.size() - 1, k_.zero());
    for (std::size_t i = 1; i < c_.size(); ++i)
      c[i - 1] = k_.from_int(static_cast<std::int64_t>(i)) * c_[i];
    return UniPoly(k_, std::move(c));
  }

  S eval(const S& x) const {
    S acc = k_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  friend std::pair<UniPoly, UniPoly> divrem(const UniPoly& a,
                                            const UniPoly& b) {
    if (b.is_zero()) throw std::domain_error("UniPoly: division by zero");
    const Field& k = a.k_;
    UniPoly q = zero(k), r = a;
    S lead_inv = k.inv(b.lc());
    while (!r.is_zero() && r.degree() >= b.degree()) {
      long shift = r.degree() - b.degree();
      S f = r.lc() * lead_inv;
      q = q + monomial(k, f, shift);
      r = r - (f * b.shifted(shift));
    }
    return {q, r};
  }
  friend UniPoly operator/(const UniPoly& a, const UniPoly& b) {
    return divrem(a, b).first;
  }
  friend UniPoly operator%(const UniPoly& a, const UniPoly& b) {
    return divrem(a, b).second;
  }

  UniPoly div_exact(const UniPoly& b) const {
    auto [q, r] = divrem(*this, b);
    if (!r.is_zero())
      throw std::domain_error("UniPoly::div_exact: inexact division");
    return q;
  }

  UniPoly pow(long e) const {
    UniPoly acc = constant(k_, k_.one());
    for (long i = 0; i < e; ++i) acc = acc * *this;
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && k_.is_zero(c_.back())) c_.pop_back();
  }

  Field k_;
  std::vector<S> c_;
};

// gcd normalized monic; uni_gcd(f, 0) is the monic normalization of f
template <class Field>
UniPoly<Field> uni_gcd(UniPoly<Field> a, UniPoly<Field> b) {
  while (!b.is_zero()) {
    UniPoly<Field> r = a % b;
    a = b;
    b = r;
  }
  return a.monic();
}

template <class Field>
bool squarefree(const UniPoly<Field>& f) {
  if (f.is_zero()) return false;
  if (f.degree() == 0) return true;
  return uni_gcd(f, f.derivative()).degree() == 0;
}

// Sylvester matrix with the rows of f-coefficients first: deg(g) rows of f
// followed by deg(f) rows of g, each row holding the coefficients from the
// leading one downward.
template <class Field>
MatX<typename Field::Scalar> sylvester_matrix(const Field& k,
                                              const UniPoly<Field>& f,
                                              const UniPoly<Field>& g) {
  long m = f.degree(), n = g.degree();
  if (m < 0 || n < 0)
    throw std::invalid_argument("sylvester_matrix: zero polynomial");
  long size = m + n;
  MatX<typename Field::Scalar> s(size, size);
  for (long i = 0; i < size; ++i)
    for (long j = 0; j < size; ++j) s(i, j) = k.zero();
  for (long i = 0; i < n; ++i)
    for (long j = 0; j <= m; ++j) s(i, i + j) = f.coeff(m - j);
  for (long i = 0; i < m; ++i)
    for (long j = 0; j <= n; ++j) s(n + i, i + j) = g.coeff(n - j);
  return s;
}

// Resultant of f and g.  Edge conventions: if exactly one input is zero the
// result is 0 when the other has positive degree and 1 when it is a nonzero
// constant; two zero inputs are rejected.  When both are nonzero constants
// the (empty) Sylvester determinant is 1.
template <class Field>
typename Field::Scalar resultant(const Field& k, const UniPoly<Field>& f,
                                 const UniPoly<Field>& g) {
  if (f.is_zero() && g.is_zero())
    throw std::invalid_argument("resultant: both inputs zero");
  if (f.is_zero() || g.is_zero()) {
    const UniPoly<Field>& other = f.is_zero() ? g : f;
    return other.degree() >= 1 ? k.zero() : k.one();
  }
  if (f.degree() == 0 && g.degree() == 0) return k.one();
  // constant against positive degree: lc(const)^deg(other)
  if (f.degree() == 0) {
    typename Field::Scalar acc = k.one();
    for (long i = 0; i < g.degree(); ++i) acc = acc * f.coeff(0);
    return acc;
  }
  if (g.degree() == 0) {
    typename Field::Scalar acc = k.one();
    for (long i = 0; i < f.degree(); ++i) acc = acc * g.coeff(0);
    return acc;
  }
  return determinant(k, sylvester_matrix(k, f, g));
}

template <class Field>
UniPoly<Field> random_unipoly(const Field& k, long degree, Rng& rng) {
  if (degree < 0) return UniPoly<Field>::zero(k);
  std::vector<typename Field::Scalar> c(static_cast<std::size_t>(degree) + 1,
                                        k.zero());
  for (long i = 0; i < degree; ++i) c[static_cast<std::size_t>(i)] = k.random(rng);
  c.back() = k.random_nonzero(rng);
  return UniPoly<Field>(k, std::move(c));
}

// t^e mod f via square-and-multiply; used to split off rational roots
template <class Field>
UniPoly<Field> powmod_t(const Field& k, std::uint64_t e,
                        const UniPoly<Field>& f) {
  if (f.degree() < 1)
    throw std::invalid_argument("powmod_t: modulus must have degree >= 1");
  UniPoly<Field> result = UniPoly<Field>::constant(k, k.one());
  UniPoly<Field> base = UniPoly<Field>::monomial(k, k.one(), 1) % f;
  while (e) {
    if (e & 1) result = (result * base) % f;
    base = (base * base) % f;
    e >>= 1;
  }
  return result;
}

}  // namespace nodal
