#pragma once

#include <stdexcept>
#include <vector>

#include "nodal/homopoly.hpp"
#include "nodal/linalg.hpp"
#include "nodal/numerology.hpp"
#include "nodal/unipoly.hpp"

namespace nodal {

namespace detail {

template <class Field>
typename Field::Scalar binomial_scalar(const Field& k, long a, long b) {
  mpz_class v = binomial(a, b);
  if (!v.fits_slong_p())
    throw std::invalid_argument("binomial_scalar: degree out of desk range");
  return k.from_int(v.get_si());
}

}  // namespace detail

// Binary form stored against the binomial basis, f = sum of
// binomial(d,i) * c_i * x^(d-i) * y^i, so that the apolarity pairing is the
// plain Hankel pairing on the c sequence.
template <class Field>
class BinaryForm {
 public:
  using S = typename Field::Scalar;

  BinaryForm(const Field& k, std::vector<S> normalized)
      : k_(k), c_(std::move(normalized)) {
    if (c_.empty())
      throw std::invalid_argument("BinaryForm: empty coefficient list");
  }

  // plain monomial coefficients of x^(d-i) y^i, divided through by the
  // binomial weights
  static BinaryForm from_plain(const Field& k, const std::vector<S>& plain) {
    if (plain.empty())
      throw std::invalid_argument("BinaryForm: empty coefficient list");
    long d = static_cast<long>(plain.size()) - 1;
    std::vector<S> c;
    c.reserve(plain.size());
    for (long i = 0; i <= d; ++i)
      c.push_back(plain[static_cast<std::size_t>(i)] *
                  k.inv(detail::binomial_scalar(k, d, i)));
    return BinaryForm(k, std::move(c));
  }

  const Field& field() const { return k_; }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const S& c(long i) const { return c_[static_cast<std::size_t>(i)]; }
  const std::vector<S>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const S& v : c_)
      if (!k_.is_zero(v)) return false;
    return true;
  }

 private:
  Field k_;
  std::vector<S> c_;
};

template <class Field>
HomogeneousPoly<Field> to_homopoly(const BinaryForm<Field>& f) {
  const Field& k = f.field();
  HomogeneousPoly<Field> h(k, 1, f.degree());
  for (long i = 0; i <= f.degree(); ++i)
    h.coeff(i) = detail::binomial_scalar(k, f.degree(), i) * f.c(i);
  return h;
}

template <class Field>
BinaryForm<Field> from_homopoly(const HomogeneousPoly<Field>& h) {
  if (h.n() != 1)
    throw std::invalid_argument("from_homopoly: binary form required");
  std::vector<typename Field::Scalar> plain;
  for (long i = 0; i < h.terms(); ++i) plain.push_back(h.coeff(i));
  return BinaryForm<Field>::from_plain(h.field(), plain);
}

// linear substitution of the two variables
template <class Field>
BinaryForm<Field> transform(const BinaryForm<Field>& f,
                            const MatX<typename Field::Scalar>& m) {
  if (m.rows() != 2 || m.cols() != 2)
    throw std::invalid_argument("transform: 2x2 substitution required");
  return from_homopoly(restrict_poly(to_homopoly(f), m));
}

template <class Field>
struct Catalecticant {
  long a = 0;
  MatX<typename Field::Scalar> m;  // (d-a+1) x (a+1) Hankel
};

template <class Field>
Catalecticant<Field> catalecticant(const BinaryForm<Field>& f, long a) {
  if (a < 0 || a > f.degree())
    throw std::invalid_argument("catalecticant: order out of range");
  Catalecticant<Field> cat;
  cat.a = a;
  cat.m = MatX<typename Field::Scalar>(f.degree() - a + 1, a + 1);
  for (long i = 0; i <= f.degree() - a; ++i)
    for (long j = 0; j <= a; ++j) cat.m(i, j) = f.c(i + j);
  return cat;
}

// true iff g, read as a binary form of degree e, annihilates f under the
// differential action; with the binomial normalization this is vanishing of
// all Hankel residues sum_a g_a c_(a+j)
template <class Field>
bool apolarity_check(const BinaryForm<Field>& f, const UniPoly<Field>& g,
                     long e) {
  const Field& k = f.field();
  if (e < 0 || e > f.degree())
    throw std::invalid_argument("apolarity_check: degree out of range");
  if (g.degree() > e)
    throw std::invalid_argument("apolarity_check: generator exceeds degree");
  for (long j = 0; j + e <= f.degree(); ++j) {
    typename Field::Scalar acc = k.zero();
    for (long a = 0; a <= g.degree(); ++a) acc += g.coeff(a) * f.c(a + j);
    if (!k.is_zero(acc)) return false;
  }
  return true;
}

template <class Field>
struct DecompositionCertificate {
  long s = 0;           // claimed generic rank (d+1)/2
  long kernel_dim = 0;
  UniPoly<Field> apolar_generator;
  bool squarefree = false;
  bool unique = false;
};

// Middle catalecticant certificate for odd-degree binary forms: the kernel
// of the k x (k+1) Hankel matrix carries the degree-k apolar forms; a
// one-dimensional kernel with a squarefree generator certifies the unique
// length-k power-sum decomposition.
template <class Field>
DecompositionCertificate<Field> sylvester_certificate(
    const BinaryForm<Field>& f) {
  const Field& k = f.field();
  long d = f.degree();
  if (d % 2 == 0)
    throw std::invalid_argument("sylvester_certificate: odd degree required");
  if (f.is_zero())
    throw std::invalid_argument("sylvester_certificate: zero form");
  check_characteristic(k, d);
  long half = (d + 1) / 2;
  auto cat = catalecticant(f, half);
  auto rk = rank_and_kernel(k, cat.m);
  long kernel_dim = cat.m.cols() - rk.rank;
  std::vector<typename Field::Scalar> gen;
  for (long i = 0; i <= half; ++i) gen.push_back(rk.kernel(i, 0));
  UniPoly<Field> g(k, std::move(gen));
  if (!apolarity_check(f, g, half))
    throw std::logic_error("sylvester_certificate: kernel fails apolarity");
  // squarefreeness of the binary form: squarefree dehomogenization plus at
  // most a simple root at infinity
  bool sf = squarefree(g) && half - g.degree() <= 1;
  return DecompositionCertificate<Field>{half, kernel_dim, g, sf,
                                         kernel_dim == 1 && sf};
}

// max catalecticant rank; a lower bound for the Waring rank
template <class Field>
long rank_lower_bound(const BinaryForm<Field>& f) {
  const Field& k = f.field();
  long best = 0;
  for (long a = 0; a <= f.degree(); ++a)
    best = std::max(best, rank_of(k, catalecticant(f, a).m));
  return best;
}

// explicit power sum, sum of lam_i * (a_i x + b_i y)^d
template <class Field>
BinaryForm<Field> power_sum(const Field& k, long d,
                            const std::vector<typename Field::Scalar>& lam,
                            const std::vector<typename Field::Scalar>& a,
                            const std::vector<typename Field::Scalar>& b) {
  using S = typename Field::Scalar;
  if (lam.size() != a.size() || lam.size() != b.size())
    throw std::invalid_argument("power_sum: mismatched term lists");
  std::vector<S> c(static_cast<std::size_t>(d) + 1, k.zero());
  for (std::size_t t = 0; t < lam.size(); ++t) {
    S pa = k.one();
    std::vector<S> apow, bpow;
    for (long j = 0; j <= d; ++j) {
      apow.push_back(pa);
      pa = pa * a[t];
    }
    S pb = k.one();
    for (long j = 0; j <= d; ++j) {
      bpow.push_back(pb);
      pb = pb * b[t];
    }
    for (long j = 0; j <= d; ++j)
      c[static_cast<std::size_t>(j)] +=
          lam[t] * apow[static_cast<std::size_t>(d - j)] *
          bpow[static_cast<std::size_t>(j)];
  }
  return BinaryForm<Field>(k, std::move(c));
}

}  // namespace nodal
