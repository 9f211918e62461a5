#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "nodal/homopoly.hpp"
#include "nodal/linalg.hpp"
#include "nodal/rng.hpp"
#include "nodal/unipoly.hpp"

namespace nodal {

// ring adapter so fraction-free determinants run over polynomial entries
template <class Field>
struct UniPolyRing {
  Field k;
  using P = UniPoly<Field>;
  P one() const { return P::constant(k, k.one()); }
  P zero() const { return P::zero(k); }
  bool is_zero(const P& a) const { return a.is_zero(); }
  P mul(const P& a, const P& b) const { return a * b; }
  P sub(const P& a, const P& b) const { return a - b; }
  P neg(const P& a) const { return k.from_int(-1) * a; }
  P div_exact(const P& a, const P& b) const { return a.div_exact(b); }
};

template <class Field>
MatX<typename Field::Scalar> invert_matrix(const Field& k,
                                           MatX<typename Field::Scalar> m) {
  using S = typename Field::Scalar;
  long n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("invert_matrix: not square");
  MatX<S> inv(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) inv(i, j) = i == j ? k.one() : k.zero();
  for (long c = 0; c < n; ++c) {
    long piv = -1;
    for (long i = c; i < n; ++i)
      if (!k.is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) throw std::invalid_argument("invert_matrix: singular matrix");
    if (piv != c)
      for (long j = 0; j < n; ++j) {
        std::swap(m(piv, j), m(c, j));
        std::swap(inv(piv, j), inv(c, j));
      }
    S s = k.inv(m(c, c));
    for (long j = 0; j < n; ++j) {
      m(c, j) = s * m(c, j);
      inv(c, j) = s * inv(c, j);
    }
    for (long i = 0; i < n; ++i) {
      if (i == c || k.is_zero(m(i, c))) continue;
      S f = m(i, c);
      for (long j = 0; j < n; ++j) {
        m(i, j) = m(i, j) - f * m(c, j);
        inv(i, j) = inv(i, j) - f * inv(c, j);
      }
    }
  }
  return inv;
}

// A ternary form read as a polynomial in its last variable, coefficients
// dehomogenized along the first: slot j holds the z^j coefficient as a
// polynomial in t = y evaluated at x = 1.
template <class Field>
std::vector<UniPoly<Field>> z_profile(const HomogeneousPoly<Field>& f) {
  const Field& k = f.field();
  if (f.n() != 2) throw std::invalid_argument("z_profile: ternary form required");
  long d = f.degree();
  std::vector<std::vector<typename Field::Scalar>> c(
      static_cast<std::size_t>(d) + 1,
      std::vector<typename Field::Scalar>(static_cast<std::size_t>(d) + 1,
                                          k.zero()));
  const MonomialBasis& mb = f.basis();
  for (long i = 0; i < mb.size(); ++i) {
    const std::vector<int>& e = mb.exponents(i);
    c[static_cast<std::size_t>(e[2])][static_cast<std::size_t>(e[1])] =
        f.coeff(i);
  }
  std::vector<UniPoly<Field>> out;
  out.reserve(c.size());
  for (auto& row : c) out.push_back(UniPoly<Field>(k, std::move(row)));
  return out;
}

namespace detail {

template <class Field>
long profile_degree(const std::vector<UniPoly<Field>>& p) {
  for (std::size_t j = p.size(); j-- > 0;)
    if (!p[j].is_zero()) return static_cast<long>(j);
  return -1;
}

}  // namespace detail

// Resultant eliminating the last variable from two ternary forms, read along
// the chart x = 1.  Roots of the result are the y-coordinates of common
// zeros away from the line x = 0.
template <class Field>
UniPoly<Field> eliminant_z(const HomogeneousPoly<Field>& a,
                           const HomogeneousPoly<Field>& b) {
  using P = UniPoly<Field>;
  const Field& k = a.field();
  auto pa = z_profile(a);
  auto pb = z_profile(b);
  long da = detail::profile_degree(pa);
  long db = detail::profile_degree(pb);
  if (da < 0 && db < 0)
    throw std::domain_error("eliminant_z: both forms are zero");
  if (da < 0) return db >= 1 ? P::zero(k) : P::constant(k, k.one());
  if (db < 0) return da >= 1 ? P::zero(k) : P::constant(k, k.one());
  if (da == 0 && db == 0) return P::constant(k, k.one());
  if (da == 0) return pa[0].pow(db);
  if (db == 0) return pb[0].pow(da);

  std::size_t size = static_cast<std::size_t>(da + db);
  UniPolyRing<Field> ring{k};
  std::vector<std::vector<P>> m(size, std::vector<P>(size, P::zero(k)));
  for (long i = 0; i < db; ++i)
    for (long j = 0; j <= da; ++j)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] =
          pa[static_cast<std::size_t>(da - j)];
  for (long i = 0; i < da; ++i)
    for (long j = 0; j <= db; ++j)
      m[static_cast<std::size_t>(db + i)][static_cast<std::size_t>(i + j)] =
          pb[static_cast<std::size_t>(db - j)];
  return bareiss_determinant_ring<P>(ring, std::move(m));
}

namespace detail {

// Polynomials in a second variable u with coefficients in k[t], used as the
// working form for bivariate gcds; slot j is the u^j coefficient, kept
// trimmed so the top slot of a nonzero value is nonzero.
template <class Field>
struct BiPoly {
  std::vector<UniPoly<Field>> c;
};

template <class Field>
void bi_trim(BiPoly<Field>& p) {
  while (!p.c.empty() && p.c.back().is_zero()) p.c.pop_back();
}

template <class Field>
bool bi_is_zero(const BiPoly<Field>& p) {
  return p.c.empty();
}

template <class Field>
long bi_deg(const BiPoly<Field>& p) {
  return static_cast<long>(p.c.size()) - 1;
}

template <class Field>
UniPoly<Field> bi_content(const Field& k, const BiPoly<Field>& p) {
  UniPoly<Field> g = UniPoly<Field>::zero(k);
  for (const auto& coeff : p.c) g = uni_gcd(g, coeff);
  return g;
}

template <class Field>
BiPoly<Field> bi_primitive(const BiPoly<Field>& p,
                           const UniPoly<Field>& content) {
  BiPoly<Field> out;
  out.c.reserve(p.c.size());
  for (const auto& coeff : p.c) out.c.push_back(coeff.div_exact(content));
  return out;
}

// pseudo-remainder in u: repeatedly kills the leading term after scaling by
// the divisor's leading coefficient, staying inside k[t][u]
template <class Field>
BiPoly<Field> bi_prem(const Field& k, BiPoly<Field> r, const BiPoly<Field>& b) {
  const UniPoly<Field>& lead = b.c.back();
  long db = bi_deg(b);
  while (!bi_is_zero(r) && bi_deg(r) >= db) {
    long shift = bi_deg(r) - db;
    UniPoly<Field> rl = r.c.back();
    BiPoly<Field> next;
    next.c.assign(r.c.size(), UniPoly<Field>::zero(k));
    for (std::size_t j = 0; j < r.c.size(); ++j) {
      next.c[j] = lead * r.c[j];
      long bj = static_cast<long>(j) - shift;
      if (bj >= 0 && bj <= db)
        next.c[j] = next.c[j] - rl * b.c[static_cast<std::size_t>(bj)];
    }
    bi_trim(next);
    r = std::move(next);
  }
  return r;
}

template <class Field>
BiPoly<Field> bi_gcd(const Field& k, BiPoly<Field> a, BiPoly<Field> b) {
  bi_trim(a);
  bi_trim(b);
  if (bi_is_zero(a)) return b;
  if (bi_is_zero(b)) return a;
  UniPoly<Field> cg =
      uni_gcd(bi_content(k, a), bi_content(k, b));
  a = bi_primitive(a, bi_content(k, a));
  b = bi_primitive(b, bi_content(k, b));
  while (!bi_is_zero(b)) {
    if (bi_deg(a) < bi_deg(b)) std::swap(a, b);
    BiPoly<Field> r = bi_prem(k, a, b);
    a = std::move(b);
    if (bi_is_zero(r)) {
      b = r;
    } else {
      b = bi_primitive(r, bi_content(k, r));
    }
  }
  BiPoly<Field> out;
  out.c.reserve(a.c.size());
  for (const auto& coeff : a.c) out.c.push_back(cg * coeff);
  return out;
}

template <class Field>
long bi_total_degree(const BiPoly<Field>& p) {
  long best = -1;
  for (std::size_t j = 0; j < p.c.size(); ++j)
    if (!p.c[j].is_zero())
      best = std::max(best, static_cast<long>(j) + p.c[j].degree());
  return best;
}

}  // namespace detail

// exact divisibility of homogeneous forms, decided by solvability of the
// linear system quotient * divisor = dividend
template <class Field>
bool divides_exact(const HomogeneousPoly<Field>& divisor,
                   const HomogeneousPoly<Field>& dividend) {
  using S = typename Field::Scalar;
  const Field& k = divisor.field();
  if (divisor.n() != dividend.n())
    throw std::invalid_argument("divides_exact: ambient mismatch");
  if (divisor.is_zero()) return dividend.is_zero();
  if (dividend.is_zero()) return true;
  long r = dividend.degree() - divisor.degree();
  if (r < 0) return false;
  const MonomialBasis& qb = monomial_basis(divisor.n(), r);
  const MonomialBasis& tb = dividend.basis();
  MatX<S> m(tb.size(), qb.size());
  for (long j = 0; j < qb.size(); ++j) {
    HomogeneousPoly<Field> mono(k, divisor.n(), r);
    mono.coeff(j) = k.one();
    HomogeneousPoly<Field> prod = multiply(mono, divisor);
    for (long i = 0; i < tb.size(); ++i) m(i, j) = prod.coeff(i);
  }
  MatX<S> aug(tb.size(), qb.size() + 1);
  for (long i = 0; i < tb.size(); ++i) {
    for (long j = 0; j < qb.size(); ++j) aug(i, j) = m(i, j);
    aug(i, qb.size()) = dividend.coeff(i);
  }
  return rank_of(k, m) == rank_of(k, aug);
}

// Greatest common divisor of ternary forms, computed in a random chart and
// verified by exact divisibility; nullopt means the forms are coprime.  The
// chart randomization makes missing a factor through the chart's line at
// infinity a probability-zero event up to the field size, and any slip is
// caught by the verification and retried.
template <class Field>
std::optional<HomogeneousPoly<Field>> ternary_gcd(
    const Field& k, const std::vector<HomogeneousPoly<Field>>& forms,
    Rng& rng) {
  using S = typename Field::Scalar;
  std::vector<const HomogeneousPoly<Field>*> live;
  for (const auto& f : forms) {
    if (f.n() != 2)
      throw std::invalid_argument("ternary_gcd: ternary forms required");
    if (!f.is_zero()) live.push_back(&f);
  }
  if (live.empty())
    throw std::invalid_argument("ternary_gcd: all forms are zero");

  for (int attempt = 0; attempt < 8; ++attempt) {
    MatX<S> twist(3, 3);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) twist(i, j) = k.random(rng);
    } while (rank_of(k, twist) != 3);

    detail::BiPoly<Field> g;
    for (const auto* f : live) {
      detail::BiPoly<Field> bp;
      bp.c = z_profile(restrict_poly(*f, twist));
      detail::bi_trim(bp);
      g = detail::bi_gcd(k, std::move(g), std::move(bp));
      if (detail::bi_total_degree(g) == 0) return std::nullopt;
    }
    long total = detail::bi_total_degree(g);
    if (total == 0) return std::nullopt;

    HomogeneousPoly<Field> lifted(k, 2, total);
    for (std::size_t j = 0; j < g.c.size(); ++j)
      for (long b = 0; b <= g.c[j].degree(); ++b) {
        if (k.is_zero(g.c[j].coeff(b))) continue;
        std::vector<int> e = {
            static_cast<int>(total - static_cast<long>(j) - b),
            static_cast<int>(b), static_cast<int>(j)};
        lifted.coeff(e) = g.c[j].coeff(b);
      }
    HomogeneousPoly<Field> candidate =
        restrict_poly(lifted, invert_matrix(k, twist)).normalized();
    bool ok = true;
    for (const auto* f : live)
      if (!divides_exact(candidate, *f)) {
        ok = false;
        break;
      }
    if (ok) return candidate;
  }
  throw std::runtime_error("ternary_gcd: chart retries exhausted");
}

}  // namespace nodal
