#include <cstdint>
#include <vector>

#include "doctest.h"
#include "nodal/probes.hpp"

using namespace nodal;

namespace {

const PrimeField kF(default_primes()[0]);

OracleOptions prime_opts(std::uint64_t seed = 11) {
  OracleOptions o;
  o.mode = FieldMode::prime;
  o.trials = 3;
  o.seed = seed;
  return o;
}

VecX<Fp> point(std::vector<long> coords) {
  VecX<Fp> p(static_cast<long>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i)
    p(static_cast<long>(i)) = kF.from_int(coords[i]);
  return p;
}

HomogeneousPoly<PrimeField> form(int n, long d,
                                 std::vector<std::pair<std::vector<int>, long>>
                                     terms) {
  HomogeneousPoly<PrimeField> f(kF, n, d);
  for (const auto& [e, c] : terms) f.coeff(e) = kF.from_int(c);
  return f;
}

}  // namespace

TEST_CASE("matrix inversion round-trips") {
  Rng rng(4);
  MatX<Fp> m(3, 3);
  do {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m(i, j) = kF.random(rng);
  } while (rank_of(kF, m) != 3);
  MatX<Fp> inv = invert_matrix(kF, m);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Fp acc = kF.zero();
      for (int t = 0; t < 3; ++t) acc += m(i, t) * inv(t, j);
      CHECK(acc == (i == j ? kF.one() : kF.zero()));
    }
}

TEST_CASE("eliminant of two planes picks out their common point") {
  auto a = form(2, 1, {{{1, 0, 0}, 1}, {{0, 0, 1}, -1}});  // x - z
  auto b = form(2, 1, {{{0, 1, 0}, 1}, {{0, 0, 1}, -1}});  // y - z
  auto r = eliminant_z(a, b);
  // common zero (1:1:1), so the eliminant vanishes exactly at t = 1
  REQUIRE(r.degree() == 1);
  CHECK(kF.is_zero(r.eval(kF.one())));
}

TEST_CASE("eliminant vanishes at the projection of an imposed common zero") {
  Rng rng(17);
  Fp t0 = kF.random(rng), z0 = kF.random(rng);
  // both forms lie in the ideal of the point (1 : t0 : z0)
  auto vanishing_form = [&]() {
    HomogeneousPoly<PrimeField> l1(kF, 2, 1), l2(kF, 2, 1);
    for (long i = 0; i < 3; ++i) {
      l1.coeff(i) = kF.random(rng);
      l2.coeff(i) = kF.random(rng);
    }
    HomogeneousPoly<PrimeField> gy(kF, 2, 1), gz(kF, 2, 1);
    gy.coeff(std::vector<int>{0, 1, 0}) = kF.one();
    gy.coeff(std::vector<int>{1, 0, 0}) = kF.from_int(-1) * t0;
    gz.coeff(std::vector<int>{0, 0, 1}) = kF.one();
    gz.coeff(std::vector<int>{1, 0, 0}) = kF.from_int(-1) * z0;
    return multiply(gy, l1) + multiply(gz, l2);
  };
  auto a = vanishing_form();
  auto b = vanishing_form();
  auto r = eliminant_z(a, b);
  REQUIRE(!r.is_zero());
  CHECK(kF.is_zero(r.eval(t0)));
}

TEST_CASE("exact divisibility of forms") {
  Rng rng(23);
  auto g = random_poly(kF, 2, 3, rng);
  auto q = random_poly(kF, 2, 2, rng);
  CHECK(divides_exact(g, multiply(g, q)));
  auto x = form(2, 1, {{{1, 0, 0}, 1}});
  auto y2 = form(2, 2, {{{0, 2, 0}, 1}});
  CHECK(!divides_exact(x, y2));
}

TEST_CASE("ternary gcd recovers a planted common factor") {
  Rng rng(31);
  auto g = random_poly(kF, 2, 3, rng);
  auto q1 = random_poly(kF, 2, 2, rng);
  auto q2 = random_poly(kF, 2, 2, rng);
  std::vector<HomogeneousPoly<PrimeField>> forms = {multiply(g, q1),
                                                    multiply(g, q2)};
  auto found = ternary_gcd(kF, forms, rng);
  REQUIRE(found.has_value());
  CHECK(*found == g.normalized());
}

TEST_CASE("ternary gcd reports coprime forms as coprime") {
  Rng rng(37);
  std::vector<HomogeneousPoly<PrimeField>> forms = {
      random_poly(kF, 2, 3, rng), random_poly(kF, 2, 3, rng),
      random_poly(kF, 2, 3, rng)};
  CHECK(!ternary_gcd(kF, forms, rng).has_value());
}

TEST_CASE("node check classifies the textbook local models") {
  SUBCASE("rank-2 quadratic cone point is a node") {
    auto f = form(2, 2, {{{2, 0, 0}, 1}, {{0, 2, 0}, 1}});  // x^2 + y^2
    auto rep = node_check(f, point({0, 0, 1}));
    CHECK(rep.on_hypersurface);
    CHECK(rep.is_singular);
    CHECK(rep.hessian_rank == 2);
  }
  SUBCASE("cuspidal cubic point is singular but not a node") {
    auto f = form(2, 3, {{{0, 2, 1}, 1}, {{3, 0, 0}, -1}});  // z y^2 - x^3
    auto rep = node_check(f, point({0, 0, 1}));
    CHECK(rep.on_hypersurface);
    CHECK(rep.is_singular);
    CHECK(rep.hessian_rank == 1);
  }
  SUBCASE("smooth point of a conic") {
    auto f = form(2, 2, {{{1, 0, 1}, 1}, {{0, 2, 0}, -1}});  // xz - y^2
    auto rep = node_check(f, point({1, 0, 0}));
    CHECK(rep.on_hypersurface);
    CHECK(!rep.is_singular);
  }
  SUBCASE("point off the hypersurface is flagged") {
    auto f = form(2, 2, {{{2, 0, 0}, 1}, {{0, 2, 0}, 1}});
    auto rep = node_check(f, point({0, 1, 0}));
    CHECK(!rep.on_hypersurface);
    CHECK(!rep.is_singular);
  }
}

TEST_CASE("node check is invariant under projective coordinate changes") {
  auto cfg = sample_config(kF, {{4, 2, 5}, 0}, 41);
  auto f = random_member(kF, 4, cfg, 43);
  Rng rng(47);
  for (int trial = 0; trial < 4; ++trial) {
    MatX<Fp> t(3, 3);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) t(i, j) = kF.random(rng);
    } while (rank_of(kF, t) != 3);
    auto ft = restrict_poly(f, t);
    MatX<Fp> tinv = invert_matrix(kF, t);
    for (const auto& p : cfg.general_points) {
      VecX<Fp> q(3);
      for (int i = 0; i < 3; ++i) {
        q(i) = kF.zero();
        for (int j = 0; j < 3; ++j) q(i) += tinv(i, j) * p(j);
      }
      auto before = node_check(f, p);
      auto after = node_check(ft, q);
      CHECK(before.is_singular == after.is_singular);
      CHECK(before.hessian_rank == after.hessian_rank);
    }
  }
}

TEST_CASE("imposed double points of a general quartic threefold are nodes") {
  auto cfg = sample_config(kF, {{4, 3, 7}, 0}, 53);
  auto f = random_member(kF, 4, cfg, 59);
  auto rep = singularity_scan(f, cfg.all_points(), 6, 61);
  REQUIRE(rep.hessian_ranks.size() == 7);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(rep.point_singular[i]);
    CHECK(rep.hessian_ranks[i] == 3);
  }
  CHECK(rep.all_nodes);
  CHECK(rep.finiteness == Finiteness::finite);
  CHECK(rep.slices_run == 6);
  CHECK(rep.hits == 0);
}

TEST_CASE("eight double points force a curve of singularities in degree 4") {
  auto cfg = sample_config(kF, {{4, 3, 8}, 0}, 67);
  auto f = random_member(kF, 4, cfg, 71);
  auto ss = space_sing_probe(f, 6, 73);
  CHECK(!ss.finite);
  CHECK(ss.hits == 1);
}

TEST_CASE("smooth space quadric passes every slice") {
  auto f = form(3, 2, {{{2, 0, 0, 0}, 1},
                       {{0, 2, 0, 0}, 1},
                       {{0, 0, 2, 0}, 1},
                       {{0, 0, 0, 2}, 1}});
  auto ss = space_sing_probe(f, 8, 79);
  CHECK(ss.finite);
  CHECK(ss.slices_run == 8);
}

TEST_CASE("general plane quintic with six nodes has finite singular locus") {
  auto cfg = sample_config(kF, {{5, 2, 6}, 0}, 83);
  auto f = random_member(kF, 5, cfg, 89);
  auto ps = plane_sing_finite(f);
  CHECK(ps.finite);
  CHECK(!ps.fixed_part.has_value());
}

TEST_CASE("fermat quintic is smooth") {
  auto f = form(2, 5, {{{5, 0, 0}, 1}, {{0, 5, 0}, 1}, {{0, 0, 5}, 1}});
  CHECK(plane_sing_finite(f).finite);
}

TEST_CASE("the double cubic carries its cubic as fixed singular part") {
  auto cfg = sample_config(kF, {{6, 2, 9}, 0}, 97);
  auto f = random_member(kF, 6, cfg, 101);

  auto cm = conditions_matrix(kF, 3, {}, cfg.all_points());
  auto rk = rank_and_kernel(kF, cm.m);
  REQUIRE(rk.kernel.cols() == 1);
  HomogeneousPoly<PrimeField> cubic(kF, 2, 3);
  for (long i = 0; i < cubic.terms(); ++i) cubic.coeff(i) = rk.kernel(i, 0);

  auto ps = plane_sing_finite(f);
  CHECK(!ps.finite);
  REQUIRE(ps.fixed_part.has_value());
  CHECK(*ps.fixed_part == cubic.normalized());
}

TEST_CASE("squares never have finite singular locus") {
  Rng rng(103);
  for (int t = 0; t < 3; ++t) {
    auto g = random_poly(kF, 2, 2 + t, rng);
    auto ps = plane_sing_finite(multiply(g, g));
    CHECK(!ps.finite);
    REQUIRE(ps.fixed_part.has_value());
    CHECK(*ps.fixed_part == g.normalized());
  }
}

TEST_CASE("square detection certifies constructed and imposed squares") {
  SUBCASE("constructed square") {
    auto g = form(2, 2, {{{2, 0, 0}, 1}, {{0, 1, 1}, 1}});  // x^2 + yz
    auto res = square_detect(multiply(g, g));
    REQUIRE(res.has_value());
    CHECK(res->g == g.normalized());
    CHECK(res->c * multiply(res->g, res->g) == multiply(g, g));
  }
  SUBCASE("generic quartic is not a square") {
    Rng rng(107);
    CHECK(!square_detect(random_poly(kF, 2, 4, rng)).has_value());
  }
  SUBCASE("the quartic through five double points is a conic squared") {
    auto cfg = sample_config(kF, {{4, 2, 5}, 0}, 109);
    auto f = random_member(kF, 4, cfg, 113);
    auto res = square_detect(f);
    REQUIRE(res.has_value());
    CHECK(res->g.degree() == 2);
    for (const auto& p : cfg.all_points())
      CHECK(kF.is_zero(res->g.evaluate(p)));
  }
  SUBCASE("the sextic through nine double points is a cubic squared") {
    auto cfg = sample_config(kF, {{6, 2, 9}, 0}, 127);
    auto f = random_member(kF, 6, cfg, 131);
    auto res = square_detect(f);
    REQUIRE(res.has_value());
    CHECK(res->g.degree() == 3);
  }
}

TEST_CASE("tangent space at a single point of the veronese has dimension n") {
  for (long d = 2; d <= 4; ++d)
    for (long n = 1; n <= 3; ++n) {
      auto rep = veronese_secant_dim(d, n, 0, prime_opts());
      CHECK(rep.measured_dim == n);
      CHECK(rep.defect == 0);
    }
}

TEST_CASE("defective secants of the veronese are detected") {
  SUBCASE("quartic plane veronese, five points") {
    auto rep = veronese_secant_dim(4, 2, 4, prime_opts());
    CHECK(rep.measured_dim == 13);
    CHECK(rep.expected_dim == 14);
    CHECK(rep.defect == 1);
  }
  SUBCASE("cubic four-space veronese, seven points") {
    auto rep = veronese_secant_dim(3, 4, 6, prime_opts());
    CHECK(rep.measured_dim == 33);
    CHECK(rep.expected_dim == 34);
    CHECK(rep.defect == 1);
  }
}

TEST_CASE("secant dimension and interpolation dimension are dual readings") {
  for (long d = 3; d <= 4; ++d)
    for (long n = 2; n <= 3; ++n)
      for (long k = 0; k <= 4; ++k) {
        auto opts = prime_opts(151);
        auto sec = veronese_secant_dim(d, n, k, opts);
        auto dim = system_dim({d, n, k + 1}, opts);
        CHECK(sec.measured_dim == binomial(n + d, n) - 2 - dim.actual);
      }
}

TEST_CASE("identity system maps the plane birationally") {
  std::vector<HomogeneousPoly<PrimeField>> sys = {
      form(2, 1, {{{1, 0, 0}, 1}}), form(2, 1, {{{0, 1, 0}, 1}}),
      form(2, 1, {{{0, 0, 1}, 1}})};
  auto rep = map_rank_and_degree(kF, sys, {}, 157);
  CHECK(rep.generic_jacobian_rank == 3);
  CHECK(rep.verdict == MapVerdict::birational);
  REQUIRE(rep.fiber_count.has_value());
  CHECK(*rep.fiber_count == 1);
}

TEST_CASE("coordinate squares give the standard degree four cover") {
  std::vector<HomogeneousPoly<PrimeField>> sys = {
      form(2, 2, {{{2, 0, 0}, 1}}), form(2, 2, {{{0, 2, 0}, 1}}),
      form(2, 2, {{{0, 0, 2}, 1}})};
  auto rep = map_rank_and_degree(kF, sys, {}, 163);
  CHECK(rep.verdict == MapVerdict::finite_degree_k);
  REQUIRE(rep.fiber_count.has_value());
  CHECK(*rep.fiber_count == 4);
}

TEST_CASE("the quintic system with six nodes defines a birational map") {
  auto cfg = sample_config(kF, {{5, 2, 6}, 0}, 167);
  auto cm = conditions_matrix(kF, 5, cfg);
  auto rk = rank_and_kernel(kF, cm.m);
  REQUIRE(rk.kernel.cols() == 3);
  std::vector<HomogeneousPoly<PrimeField>> sys;
  for (long v = 0; v < 3; ++v) {
    HomogeneousPoly<PrimeField> f(kF, 2, 5);
    for (long i = 0; i < f.terms(); ++i) f.coeff(i) = rk.kernel(i, v);
    sys.push_back(f);
  }
  auto rep = map_rank_and_degree(kF, sys, cfg.all_points(), 173);
  CHECK(rep.generic_jacobian_rank == 3);
  CHECK(rep.verdict == MapVerdict::birational);
  REQUIRE(rep.fiber_count.has_value());
  CHECK(*rep.fiber_count == 1);
}

TEST_CASE("the quartic system with four nodes is composed with a pencil") {
  auto cfg = sample_config(kF, {{4, 2, 4}, 0}, 179);
  auto cm = conditions_matrix(kF, 4, cfg);
  auto rk = rank_and_kernel(kF, cm.m);
  REQUIRE(rk.kernel.cols() == 3);
  std::vector<HomogeneousPoly<PrimeField>> sys;
  for (long v = 0; v < 3; ++v) {
    HomogeneousPoly<PrimeField> f(kF, 2, 4);
    for (long i = 0; i < f.terms(); ++i) f.coeff(i) = rk.kernel(i, v);
    sys.push_back(f);
  }
  auto rep = map_rank_and_degree(kF, sys, cfg.all_points(), 181);
  CHECK(rep.generic_jacobian_rank == 2);
  CHECK(rep.verdict == MapVerdict::composed_with_pencil);
  CHECK(!rep.fiber_count.has_value());
}
