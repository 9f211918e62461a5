#include <cstdint>
#include <vector>

#include "doctest.h"
#include "nodal/interpolation.hpp"

using namespace nodal;

namespace {

OracleOptions prime_opts(std::uint64_t seed = 11) {
  OracleOptions o;
  o.mode = FieldMode::prime;
  o.trials = 3;
  o.seed = seed;
  return o;
}

OracleOptions rational_opts(std::uint64_t seed = 11) {
  OracleOptions o;
  o.mode = FieldMode::rational;
  o.trials = 1;
  o.seed = seed;
  return o;
}

template <class Field>
VecX<typename Field::Scalar> make_point(const Field& k,
                                        std::vector<long> coords) {
  VecX<typename Field::Scalar> p(static_cast<long>(coords.size()));
  for (std::size_t i = 0; i < coords.size(); ++i)
    p(static_cast<long>(i)) = k.from_int(coords[i]);
  return p;
}

template <class Field>
bool vanishes_doubly(const HomogeneousPoly<Field>& f,
                     const VecX<typename Field::Scalar>& p) {
  const Field& k = f.field();
  auto g = gradient_at(f, p);
  for (long i = 0; i < g.size(); ++i)
    if (!k.is_zero(g(i))) return false;
  return k.is_zero(f.evaluate(p));
}

}  // namespace

TEST_CASE("conditions matrix for one double point of the projective line") {
  PrimeField f(default_primes()[0]);
  std::vector<VecX<Fp>> pts = {make_point(f, {1, 0})};
  auto cm = conditions_matrix(f, 2, pts);
  CHECK(cm.m.rows() == 2);
  CHECK(cm.m.cols() == 3);
  auto rk = rank_and_kernel(f, cm.m);
  CHECK(rk.rank == 2);
  REQUIRE(rk.kernel.cols() == 1);
  // kernel spanned by x1^2, the last basis monomial
  CHECK(f.is_zero(rk.kernel(0, 0)));
  CHECK(f.is_zero(rk.kernel(1, 0)));
  CHECK(!f.is_zero(rk.kernel(2, 0)));
}

TEST_CASE("row provenance tracks point and derivative variable") {
  PrimeField f(default_primes()[0]);
  SpecializedSpec spec{{4, 2, 5}, 0};
  auto cfg = sample_config(f, spec, 5);
  auto cm = conditions_matrix(f, 4, cfg.general_points,
                              {make_point(f, {1, 2, 3})});
  REQUIRE(cm.m.rows() == 16);
  REQUIRE(cm.rows.size() == 16);
  for (int i = 0; i < 15; ++i) {
    CHECK(cm.rows[static_cast<std::size_t>(i)].point == i / 3);
    CHECK(cm.rows[static_cast<std::size_t>(i)].var == i % 3);
  }
  CHECK(cm.rows[15].point == 0);
  CHECK(cm.rows[15].var == -1);
}

TEST_CASE("five double points of the plane in degree four drop one rank") {
  PrimeField f(default_primes()[0]);
  SpecializedSpec spec{{4, 2, 5}, 0};
  auto cfg = sample_config(f, spec, 7);
  auto cm = conditions_matrix(f, 4, cfg);
  CHECK(cm.m.rows() == 15);
  CHECK(cm.m.cols() == 15);
  CHECK(rank_and_kernel(f, cm.m).rank == 14);
}

TEST_CASE("sampling is reproducible and points are distinct and normalized") {
  PrimeField f(default_primes()[1]);
  SpecializedSpec spec{{4, 3, 7}, 3};
  auto a = sample_config(f, spec, 99);
  auto b = sample_config(f, spec, 99);
  REQUIRE(a.general_points.size() == 4);
  REQUIRE(a.hyperplane_points.size() == 3);
  auto all_a = a.all_points();
  auto all_b = b.all_points();
  for (std::size_t i = 0; i < all_a.size(); ++i)
    for (long j = 0; j < all_a[i].size(); ++j)
      CHECK(all_a[i](j) == all_b[i](j));
  for (std::size_t i = 0; i < all_a.size(); ++i)
    for (std::size_t j = i + 1; j < all_a.size(); ++j) {
      bool equal = true;
      for (long c = 0; c < all_a[i].size(); ++c)
        if (!(all_a[i](c) == all_a[j](c))) equal = false;
      CHECK(!equal);
    }
  for (const auto& q : a.hyperplane_points) CHECK(f.is_zero(q(3)));
  for (const auto& p : all_a) {
    long last = -1;
    for (long c = 0; c < p.size(); ++c)
      if (!f.is_zero(p(c))) last = c;
    REQUIRE(last >= 0);
    CHECK(p(last) == f.one());
  }
}

TEST_CASE("sampling rejects a field too small to hold the configuration") {
  // the guard needs l * 4 <= field size; fake it via the rational bound
  PrimeField f(default_primes()[0]);
  SpecializedSpec spec{{2, 1, 1 << 30}, 0};
  CHECK_THROWS_AS(sample_config(f, spec, 1), std::invalid_argument);
}

TEST_CASE("general quartic plane systems match the expected count") {
  auto rep = system_dim({4, 2, 3}, prime_opts());
  CHECK(rep.actual == 5);
  CHECK(rep.expected == 5);
  CHECK(rep.agreement);
}

TEST_CASE("measured dimensions agree with the classification in range") {
  SUBCASE("cubic threefolds, four nodes") {
    auto rep = system_dim({3, 3, 4}, prime_opts());
    CHECK(rep.actual == 3);
    CHECK(rep.agreement);
  }
  SUBCASE("quartic threefolds, eight nodes") {
    auto rep = system_dim({4, 3, 8}, prime_opts());
    CHECK(rep.actual == 2);
    CHECK(rep.agreement);
  }
  SUBCASE("plane sextics, nine nodes") {
    auto rep = system_dim({6, 2, 9}, prime_opts());
    CHECK(rep.actual == 0);
    CHECK(rep.agreement);
  }
  SUBCASE("plane quintics, six nodes") {
    auto rep = system_dim({5, 2, 6}, prime_opts());
    CHECK(rep.actual == 2);
    CHECK(rep.agreement);
  }
}

TEST_CASE("all four defective systems measure dimension zero") {
  struct Row {
    long d, n, l;
  };
  const Row rows[] = {{3, 4, 7}, {4, 2, 5}, {4, 3, 9}, {4, 4, 14}};
  for (const Row& r : rows) {
    CAPTURE(r.d);
    CAPTURE(r.n);
    auto st = ah_status({r.d, r.n, r.l});
    REQUIRE(st.tag == AhTag::exceptional);
    auto rep = system_dim({r.d, r.n, r.l}, prime_opts());
    CHECK(rep.actual == 0);
    CHECK(rep.actual == st.dim);
    CHECK(rep.agreement);
    CHECK(rep.expected <= -1);  // the naive count predicts emptiness
  }
}

TEST_CASE("quadrics through four double points of projective four-space") {
  // outside the classification; the measurement is the authority here
  auto rep = system_dim({2, 4, 4}, prime_opts());
  CHECK(rep.actual == 0);
  CHECK(!rep.agreement);  // naive count says empty, the system is not
}

TEST_CASE("rational arbiter matches the prime measurements") {
  auto rp = system_dim({3, 3, 4}, prime_opts());
  auto rr = system_dim({3, 3, 4}, rational_opts());
  CHECK(rp.actual == rr.actual);
  CHECK(rr.field_desc == "rational");
  auto sp = specialized_dim({{4, 2, 5}, 2}, prime_opts());
  auto sr = specialized_dim({{4, 2, 5}, 2}, rational_opts());
  CHECK(sp.actual == sr.actual);
}

TEST_CASE("specializing points onto a hyperplane keeps the dimension here") {
  auto rep = specialized_dim({{4, 3, 7}, 3}, prime_opts());
  CHECK(rep.actual == 6);
  CHECK(rep.agreement);
  auto general = system_dim({4, 3, 7}, prime_opts());
  CHECK(general.actual == 6);
}

TEST_CASE("specialization never shrinks the measured dimension") {
  auto spec3 = specialized_dim({{3, 2, 3}, 2}, prime_opts());
  auto gen3 = system_dim({3, 2, 3}, prime_opts());
  CHECK(spec3.actual >= gen3.actual);
}

TEST_CASE("dimension is monotone nonincreasing in the number of points") {
  long prev = 0;
  for (long l = 0; l <= 8; ++l) {
    auto rep = system_dim({4, 2, l}, prime_opts(3));
    if (l == 0) {
      CHECK(rep.actual == 14);
    } else {
      CHECK(rep.actual <= prev);
    }
    prev = rep.actual;
  }
}

TEST_CASE("hyperplane restriction bookkeeping is exact for quartic sevens") {
  auto rep = castelnuovo_check({{4, 3, 7}, 3}, prime_opts());
  CHECK(rep.h_d_minus_1 == 1);
  CHECK(rep.h_n_minus_1 == 6);
  CHECK(rep.total == 7);
  CHECK(rep.exact);
}

TEST_CASE("restriction bookkeeping is subadditive across a parameter sweep") {
  for (long d = 3; d <= 5; ++d)
    for (long l = 2; l <= 6; ++l)
      for (long h = 1; h <= std::min(l, 3L); ++h) {
        CAPTURE(d);
        CAPTURE(l);
        CAPTURE(h);
        auto rep = castelnuovo_check({{d, 2, l}, h}, prime_opts(17));
        CHECK(rep.total <= rep.h_d_minus_1 + rep.h_n_minus_1);
      }
}

TEST_CASE("castelnuovo check requires hyperplane points") {
  CHECK_THROWS_AS(castelnuovo_check({{4, 3, 7}, 0}, prime_opts()),
                  std::invalid_argument);
}

TEST_CASE("a random member vanishes doubly at the imposed points") {
  PrimeField f(default_primes()[0]);
  SpecializedSpec spec{{4, 2, 5}, 0};
  auto cfg = sample_config(f, spec, 21);
  auto member = random_member(f, 4, cfg, 31);
  CHECK(!member.is_zero());
  for (const auto& p : cfg.all_points()) CHECK(vanishes_doubly(member, p));
}

TEST_CASE("zero-dimensional systems have a unique member up to scale") {
  PrimeField f(default_primes()[0]);
  SUBCASE("quartics through five double points of the plane") {
    auto cfg = sample_config(f, {{4, 2, 5}, 0}, 43);
    auto a = random_member(f, 4, cfg, 1).normalized();
    auto b = random_member(f, 4, cfg, 2).normalized();
    CHECK(a == b);
  }
  SUBCASE("sextics through nine double points of the plane") {
    auto cfg = sample_config(f, {{6, 2, 9}, 0}, 43);
    auto a = random_member(f, 6, cfg, 1).normalized();
    auto b = random_member(f, 6, cfg, 2).normalized();
    CHECK(a == b);
  }
}

TEST_CASE("an overloaded system signals emptiness distinctly") {
  PrimeField f(default_primes()[0]);
  auto cfg = sample_config(f, {{3, 2, 5}, 0}, 8);
  CHECK_THROWS_AS(random_member(f, 3, cfg, 1), EmptySystemError);
  CHECK_THROWS_AS(base_probe(f, 3, cfg, make_point(f, {1, 1, 1})),
                  EmptySystemError);
}

TEST_CASE("base locus probe separates imposed points from random ones") {
  PrimeField f(default_primes()[0]);
  auto cfg = sample_config(f, {{5, 2, 6}, 0}, 13);
  CHECK(base_probe(f, 5, cfg, cfg.general_points[0]));
  Rng rng(977);
  VecX<Fp> random_pt(3);
  for (int i = 0; i < 3; ++i) random_pt(i) = f.random(rng);
  CHECK(!base_probe(f, 5, cfg, random_pt));
}

TEST_CASE("the sextic system is based on the cubic through its nine points") {
  PrimeField f(default_primes()[0]);
  auto cfg = sample_config(f, {{6, 2, 9}, 0}, 29);

  // unique cubic through the nine points, by simple vanishing
  auto cm = conditions_matrix(f, 3, {}, cfg.all_points());
  auto rk = rank_and_kernel(f, cm.m);
  REQUIRE(rk.kernel.cols() == 1);
  HomogeneousPoly<PrimeField> cubic(f, 2, 3);
  for (long i = 0; i < cubic.terms(); ++i) cubic.coeff(i) = rk.kernel(i, 0);

  // hunt for a rational point of the cubic along random lines
  Rng rng(555);
  bool found = false;
  VecX<Fp> on_cubic(3);
  for (int attempt = 0; attempt < 64 && !found; ++attempt) {
    MatX<Fp> line(3, 2);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 2; ++c) line(r, c) = f.random(rng);
    if (rank_of(f, line) != 2) continue;
    auto g = to_unipoly(restrict_poly(cubic, line));
    if (g.degree() < 1) continue;
    auto frob = powmod_t(f, f.p, g);
    auto roots = uni_gcd(frob - UniPoly<PrimeField>::monomial(f, f.one(), 1), g);
    if (roots.degree() != 1) continue;
    Fp t0 = f.inv(roots.coeff(1)) * (-roots.coeff(0));
    for (int r = 0; r < 3; ++r) on_cubic(r) = line(r, 0) + t0 * line(r, 1);
    found = true;
  }
  REQUIRE(found);
  REQUIRE(f.is_zero(cubic.evaluate(on_cubic)));
  CHECK(base_probe(f, 6, cfg, on_cubic));
}

TEST_CASE("reports carry the probe metadata") {
  auto opts = prime_opts(77);
  auto rep = system_dim({3, 2, 2}, opts);
  CHECK(rep.trials == 3);
  CHECK(rep.seed == 77);
  CHECK(rep.field_desc.substr(0, 2) == "p=");
  CHECK(rep.spec.base.d == 3);
  CHECK(rep.spec.h == 0);
  auto again = system_dim({3, 2, 2}, opts);
  CHECK(again.actual == rep.actual);
  CHECK(again.field_desc == rep.field_desc);
}

TEST_CASE("measured dimension never undershoots the expected count") {
  for (long d = 2; d <= 5; ++d)
    for (long n = 2; n <= 3; ++n)
      for (long l = 0; l <= 6; ++l) {
        auto rep = system_dim({d, n, l}, prime_opts(5));
        mpz_class floor = expected_dim({d, n, l});
        if (floor < -1) floor = -1;
        CHECK(mpz_class(rep.actual) >= floor);
      }
}
