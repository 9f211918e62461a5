#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nodal/interpolation.hpp"
#include "nodal/ternary.hpp"

namespace nodal {

struct NodeReport {
  bool on_hypersurface = false;
  bool is_singular = false;
  long hessian_rank = 0;  // affine Hessian rank, meaningful when singular
};

// An ordinary double point shows a full-rank affine Hessian in the chart
// where one coordinate of p is scaled to 1.
template <class Field>
NodeReport node_check(const HomogeneousPoly<Field>& f,
                      VecX<typename Field::Scalar> p) {
  using S = typename Field::Scalar;
  const Field& k = f.field();
  if (f.degree() < 2)
    throw std::invalid_argument("node_check: degree must be at least 2");
  if (p.size() != f.n() + 1)
    throw std::invalid_argument("node_check: point arity mismatch");
  check_characteristic(k, f.degree());
  long chart = -1;
  for (long i = p.size(); i-- > 0;)
    if (!k.is_zero(p(i))) {
      chart = i;
      break;
    }
  if (chart < 0) throw std::invalid_argument("node_check: zero point");
  S scale = k.inv(p(chart));
  for (long i = 0; i < p.size(); ++i) p(i) = scale * p(i);

  NodeReport rep;
  rep.on_hypersurface = k.is_zero(f.evaluate(p));
  if (!rep.on_hypersurface) return rep;
  auto grad = gradient_at(f, p);
  for (long i = 0; i < grad.size(); ++i)
    if (!k.is_zero(grad(i))) return rep;
  rep.is_singular = true;

  std::vector<long> affine;
  for (long i = 0; i <= f.n(); ++i)
    if (i != chart) affine.push_back(i);
  MatX<S> hess(f.n(), f.n());
  for (std::size_t a = 0; a < affine.size(); ++a) {
    HomogeneousPoly<Field> fa = partial(f, static_cast<int>(affine[a]));
    for (std::size_t b = 0; b < affine.size(); ++b)
      hess(static_cast<long>(a), static_cast<long>(b)) =
          partial(fa, static_cast<int>(affine[b])).evaluate(p);
  }
  rep.hessian_rank = rank_of(k, hess);
  return rep;
}

template <class Field>
struct PlaneSingularity {
  bool finite = true;
  std::optional<HomogeneousPoly<Field>> fixed_part;
};

// A plane curve has finitely many singular points iff its three partials
// are coprime; otherwise their gcd is a curve of singularities.
template <class Field>
PlaneSingularity<Field> plane_sing_finite(const HomogeneousPoly<Field>& f,
                                          std::uint64_t seed = 0xA5) {
  const Field& k = f.field();
  if (f.n() != 2)
    throw std::invalid_argument("plane_sing_finite: plane curve required");
  if (f.is_zero())
    throw std::invalid_argument("plane_sing_finite: zero form");
  check_characteristic(k, f.degree());
  PlaneSingularity<Field> rep;
  if (f.degree() == 1) return rep;  // a line is smooth
  std::vector<HomogeneousPoly<Field>> partials;
  for (int i = 0; i <= 2; ++i) partials.push_back(partial(f, i));
  Rng rng(Rng::mix(seed, 0x9CD));
  auto g = ternary_gcd(k, partials, rng);
  if (g) {
    rep.finite = false;
    rep.fixed_part = *g;
  }
  return rep;
}

template <class Field>
struct SquareRoot {
  typename Field::Scalar c;
  HomogeneousPoly<Field> g;  // f = c * g^2 with g normalized
};

// Perfect-square detection through the linear system g*df - 2*dg*f = 0:
// its solutions are exactly the square roots of f up to scale, so any
// nonzero solution that passes the exact product recheck certifies f.
template <class Field>
std::optional<SquareRoot<Field>> square_detect(const HomogeneousPoly<Field>& f) {
  using S = typename Field::Scalar;
  const Field& k = f.field();
  if (f.degree() % 2 != 0 || f.degree() < 2)
    throw std::invalid_argument("square_detect: positive even degree required");
  if (f.is_zero()) return std::nullopt;
  check_characteristic(k, f.degree());
  const int n = f.n();
  const long e = f.degree() / 2;
  std::vector<HomogeneousPoly<Field>> fpartials;
  for (int i = 0; i <= n; ++i) fpartials.push_back(partial(f, i));

  const MonomialBasis& gb = monomial_basis(n, e);
  const long relation_terms = monomial_basis(n, e + f.degree() - 1).size();
  MatX<S> m(static_cast<long>(n + 1) * relation_terms, gb.size());
  for (long j = 0; j < gb.size(); ++j) {
    HomogeneousPoly<Field> mono(k, n, e);
    mono.coeff(j) = k.one();
    for (int i = 0; i <= n; ++i) {
      HomogeneousPoly<Field> rel =
          multiply(mono, fpartials[static_cast<std::size_t>(i)]) -
          k.from_int(2) * multiply(partial(mono, i), f);
      for (long r = 0; r < relation_terms; ++r)
        m(static_cast<long>(i) * relation_terms + r, j) = rel.coeff(r);
    }
  }
  auto rk = rank_and_kernel(k, m);
  for (long v = 0; v < rk.kernel.cols(); ++v) {
    HomogeneousPoly<Field> g(k, n, e);
    for (long i = 0; i < g.terms(); ++i) g.coeff(i) = rk.kernel(i, v);
    if (g.is_zero()) continue;
    g = g.normalized();
    HomogeneousPoly<Field> g2 = multiply(g, g);
    long lead = -1;
    for (long i = 0; i < g2.terms(); ++i)
      if (!k.is_zero(g2.coeff(i))) {
        lead = i;
        break;
      }
    S c = f.coeff(lead) * k.inv(g2.coeff(lead));
    if (f == c * g2) return SquareRoot<Field>{c, g};
  }
  return std::nullopt;
}

struct SpaceSingReport {
  bool finite = true;
  int slices_run = 0;
  int hits = 0;
};

// Slices the singular locus of a threefold hypersurface with random planes:
// a common zero of the four restricted partials on a slice certifies a
// positive-dimensional singular locus, and repeated misses make finiteness
// overwhelmingly likely (false-positive odds are about d^2 over the field
// size per slice).
template <class Field>
SpaceSingReport space_sing_probe(const HomogeneousPoly<Field>& f, int slices,
                                 std::uint64_t seed) {
  using S = typename Field::Scalar;
  const Field& k = f.field();
  if (f.n() != 3)
    throw std::invalid_argument("space_sing_probe: threefold form required");
  if (f.degree() < 2)
    throw std::invalid_argument("space_sing_probe: degree must be at least 2");
  check_characteristic(k, f.degree());
  std::vector<HomogeneousPoly<Field>> partials;
  for (int i = 0; i <= 3; ++i) partials.push_back(partial(f, i));

  SpaceSingReport rep;
  for (int s = 0; s < slices; ++s) {
    ++rep.slices_run;
    Rng rng(Rng::mix(seed, 0x51C0 + static_cast<std::uint64_t>(s)));
    MatX<S> plane(4, 3);
    do {
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j) plane(i, j) = k.random(rng);
    } while (rank_of(k, plane) != 3);

    std::vector<HomogeneousPoly<Field>> restricted;
    for (const auto& p : partials) {
      auto r = restrict_poly(p, plane);
      if (!r.is_zero()) restricted.push_back(r);
    }
    bool hit = false;
    if (restricted.size() < 3) {
      // two or fewer independent conditions on a plane always share zeros
      hit = true;
    } else {
      auto combo = [&]() {
        HomogeneousPoly<Field> c(k, 2, f.degree() - 1);
        while (c.is_zero()) {
          HomogeneousPoly<Field> acc(k, 2, f.degree() - 1);
          for (const auto& r : restricted) acc = acc + k.random(rng) * r;
          c = acc;
        }
        return c;
      };
      auto a = combo();
      auto b = combo();
      auto c = combo();
      auto r1 = eliminant_z(a, b);
      auto r2 = eliminant_z(a, c);
      auto r3 = eliminant_z(b, c);
      if (r1.is_zero() || r2.is_zero() || r3.is_zero()) {
        hit = true;  // shared component among random combinations
      } else {
        auto g = uni_gcd(uni_gcd(r1, r2), r3);
        hit = g.degree() >= 1;
      }
    }
    if (hit) {
      ++rep.hits;
      rep.finite = false;
      return rep;
    }
  }
  return rep;
}

struct SecantReport {
  long d = 0, n = 0, k = 0;
  mpz_class N;
  mpz_class measured_dim;
  mpz_class expected_dim;
  mpz_class defect;
};

// Tangent spaces at k+1 random points of the degree-d Veronese of P^n,
// read as the row span of the double-point conditions matrix; the same
// matrix measures the interpolation dimension, so the two reports are two
// readings of one rank.
inline SecantReport veronese_secant_dim(long d, long n, long k,
                                        const OracleOptions& opt) {
  if (k < 0) throw std::invalid_argument("veronese_secant_dim: k >= 0 required");
  SpecializedSpec spec{{d, n, k + 1}, 0};
  detail::RankProbe probe = detail::oracle_rank(spec, opt);
  SecantReport rep;
  rep.d = d;
  rep.n = n;
  rep.k = k;
  rep.N = binomial(n + d, n) - 1;
  rep.measured_dim = probe.max_rank - 1;
  mpz_class span = mpz_class(k + 1) * (n + 1) - 1;
  rep.expected_dim = std::min(rep.N, span);
  rep.defect = rep.expected_dim - rep.measured_dim;
  return rep;
}

enum class MapVerdict { birational, composed_with_pencil, finite_degree_k,
                        inconclusive };

struct MapReport {
  long n = 0;
  long d = 0;
  long generic_jacobian_rank = 0;
  std::optional<long> fiber_count;
  MapVerdict verdict = MapVerdict::inconclusive;
};

inline const char* to_string(MapVerdict v) {
  switch (v) {
    case MapVerdict::birational: return "birational";
    case MapVerdict::composed_with_pencil: return "composed_with_pencil";
    case MapVerdict::finite_degree_k: return "finite_degree_k";
    case MapVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

// Degree probe for the rational map defined by n+1 forms: a generically
// rank-deficient Jacobian means the map factors through something smaller
// (composed with a pencil); otherwise, for plane systems, fibers over a
// random target are counted exactly by an eliminant whose base-point
// contributions (intersection multiplicity 4 at an imposed node) are
// divided out.
template <class Field>
MapReport map_rank_and_degree(
    const Field& k, const std::vector<HomogeneousPoly<Field>>& sys,
    const std::vector<VecX<typename Field::Scalar>>& base_points,
    std::uint64_t seed) {
  using S = typename Field::Scalar;
  if (sys.empty()) throw std::invalid_argument("map_rank_and_degree: no forms");
  const long n = sys[0].n();
  const long d = sys[0].degree();
  if (static_cast<long>(sys.size()) != n + 1)
    throw std::invalid_argument("map_rank_and_degree: need n+1 forms");
  for (const auto& f : sys)
    if (f.n() != n || f.degree() != d || f.is_zero())
      throw std::invalid_argument(
          "map_rank_and_degree: forms must share degree and be nonzero");
  check_characteristic(k, d);

  MapReport rep;
  rep.n = n;
  rep.d = d;
  std::vector<std::vector<HomogeneousPoly<Field>>> jac;
  for (const auto& f : sys) {
    std::vector<HomogeneousPoly<Field>> row;
    for (int j = 0; j <= n; ++j) row.push_back(partial(f, j));
    jac.push_back(std::move(row));
  }
  Rng jrng(Rng::mix(seed, 0x1ACB));
  for (int t = 0; t < 3; ++t) {
    VecX<S> pt(n + 1);
    for (long i = 0; i <= n; ++i) pt(i) = k.random(jrng);
    MatX<S> jm(n + 1, n + 1);
    for (long i = 0; i <= n; ++i)
      for (long j = 0; j <= n; ++j)
        jm(i, j) = jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                       .evaluate(pt);
    rep.generic_jacobian_rank = std::max(rep.generic_jacobian_rank,
                                         rank_of(k, jm));
  }
  if (rep.generic_jacobian_rank <= n) {
    rep.verdict = MapVerdict::composed_with_pencil;
    return rep;
  }
  if (n != 2) return rep;  // fiber counting implemented for plane systems

  for (int attempt = 0; attempt < 8; ++attempt) {
    Rng rng(Rng::mix(seed, 0xF1B0 + static_cast<std::uint64_t>(attempt)));
    MatX<S> twist(3, 3);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) twist(i, j) = k.random(rng);
    } while (rank_of(k, twist) != 3);
    MatX<S> tinv = invert_matrix(k, twist);

    std::vector<HomogeneousPoly<Field>> tf;
    for (const auto& f : sys) tf.push_back(restrict_poly(f, twist));

    std::vector<S> proj;
    bool proj_ok = true;
    for (const auto& p : base_points) {
      VecX<S> q(3);
      for (int i = 0; i < 3; ++i) {
        q(i) = k.zero();
        for (int j = 0; j < 3; ++j) q(i) += tinv(i, j) * p(j);
      }
      if (k.is_zero(q(0))) {
        proj_ok = false;
        break;
      }
      proj.push_back(q(1) * k.inv(q(0)));
    }
    if (!proj_ok) continue;
    bool distinct = true;
    for (std::size_t i = 0; i < proj.size() && distinct; ++i)
      for (std::size_t j = i + 1; j < proj.size(); ++j)
        if (proj[i] == proj[j]) {
          distinct = false;
          break;
        }
    if (!distinct) continue;

    S lam = k.random(rng), mu = k.random(rng);
    HomogeneousPoly<Field> a = tf[0] - lam * tf[2];
    HomogeneousPoly<Field> b = tf[1] - mu * tf[2];
    if (a.is_zero() || b.is_zero()) continue;
    if (detail::profile_degree(z_profile(a)) != d ||
        detail::profile_degree(z_profile(b)) != d)
      continue;
    UniPoly<Field> r = eliminant_z(a, b);
    if (r.degree() != d * d) continue;

    bool divided = true;
    UniPoly<Field> q = r;
    for (const S& t0 : proj) {
      UniPoly<Field> lin(k, {k.from_int(-1) * t0, k.one()});
      for (int rep4 = 0; rep4 < 4 && divided; ++rep4) {
        auto [quot, rem] = divrem(q, lin);
        if (!rem.is_zero()) divided = false;
        q = quot;
      }
      if (!divided) break;
    }
    if (!divided) continue;
    bool clean = true;
    for (const S& t0 : proj)
      if (k.is_zero(q.eval(t0))) {
        clean = false;
        break;
      }
    if (!clean) continue;
    if (q.degree() < 1 || !squarefree(q)) continue;

    rep.fiber_count = q.degree();
    rep.verdict =
        q.degree() == 1 ? MapVerdict::birational : MapVerdict::finite_degree_k;
    return rep;
  }
  rep.verdict = MapVerdict::inconclusive;
  return rep;
}

enum class Finiteness { finite, positive_dimensional, not_probed };

inline const char* to_string(Finiteness f) {
  switch (f) {
    case Finiteness::finite: return "finite";
    case Finiteness::positive_dimensional: return "curve";
    case Finiteness::not_probed: return "not_probed";
  }
  return "?";
}

struct SingularityReport {
  std::vector<bool> point_singular;
  std::vector<long> hessian_ranks;
  bool all_nodes = false;
  Finiteness finiteness = Finiteness::not_probed;
  long fixed_part_degree = -1;  // witness for plane curves
  int slices_run = 0;           // witness for threefolds
  int hits = 0;
};

// Singularity survey of one member: nodal check at each imposed point and a
// finiteness probe for the full singular locus where one is implemented
// (exact for plane curves, sliced for threefolds).
template <class Field>
SingularityReport singularity_scan(
    const HomogeneousPoly<Field>& f,
    const std::vector<VecX<typename Field::Scalar>>& points, int slices,
    std::uint64_t seed) {
  SingularityReport rep;
  rep.all_nodes = true;
  for (const auto& p : points) {
    NodeReport nr = node_check(f, p);
    rep.point_singular.push_back(nr.is_singular);
    rep.hessian_ranks.push_back(nr.hessian_rank);
    if (!nr.is_singular || nr.hessian_rank != f.n()) rep.all_nodes = false;
  }
  if (f.n() == 2) {
    auto ps = plane_sing_finite(f, seed);
    rep.finiteness =
        ps.finite ? Finiteness::finite : Finiteness::positive_dimensional;
    if (ps.fixed_part) rep.fixed_part_degree = ps.fixed_part->degree();
  } else if (f.n() == 3) {
    auto ss = space_sing_probe(f, slices, seed);
    rep.finiteness =
        ss.finite ? Finiteness::finite : Finiteness::positive_dimensional;
    rep.slices_run = ss.slices_run;
    rep.hits = ss.hits;
  }
  return rep;
}

}  // namespace nodal
