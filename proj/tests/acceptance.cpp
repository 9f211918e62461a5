// End-to-end acceptance gate: one pass/fail line per criterion, with the
// runtime budget for each pinned next to its check.

#include <array>
#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "nodal/binary.hpp"
#include "nodal/golden.hpp"
#include "nodal/interpolation.hpp"
#include "nodal/numerology.hpp"
#include "nodal/probes.hpp"
#include "nodal/ternary.hpp"

namespace {

using namespace nodal;

bool fail(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  std::vfprintf(stderr, fmt, args);
  va_end(args);
  std::fputc('\n', stderr);
  return false;
}

OracleOptions prime_opts(std::uint64_t seed, int trials = 3) {
  OracleOptions opt;
  opt.mode = FieldMode::prime;
  opt.trials = trials;
  opt.seed = seed;
  return opt;
}

template <class Field>
std::vector<HomogeneousPoly<Field>> kernel_system(
    const Field& k, long d, const ConditionsMatrix<Field>& cm, long n) {
  auto rk = rank_and_kernel(k, cm.m);
  std::vector<HomogeneousPoly<Field>> sys;
  for (long v = 0; v < rk.kernel.cols(); ++v) {
    HomogeneousPoly<Field> f(k, n, d);
    for (long i = 0; i < f.terms(); ++i) f.coeff(i) = rk.kernel(i, v);
    sys.push_back(f);
  }
  return sys;
}

// 1. The induction leftover table matches the published one entry for entry.
bool c1_delta_table() {
  for (const auto& col : golden::kDeltaTable) {
    auto [l, h] = lh_params(col.d, col.n);
    if (l - h != col.l_minus_h || h != col.h)
      return fail("c1: (%ld,%ld) l-h/h mismatch", col.d, col.n);
    if (delta(col.d, col.n) != col.delta)
      return fail("c1: (%ld,%ld) delta mismatch", col.d, col.n);
  }
  return true;
}

// 2. Over d in 3..4, n in 2..4, every system with expected dim >= -(n+1):
// the oracle beats the naive count exactly at the four classified systems,
// each measuring dimension 0, and never disagrees with the classification.
bool c2_exception_scan() {
  auto rows = ah_scan(3, 4, 2, 4, prime_opts(2024));
  std::set<std::array<long, 3>> flagged;
  for (const auto& row : rows) {
    if (!row.theorem_match)
      return fail("c2: classification missed d=%ld n=%ld l=%ld (actual %ld)",
                  row.spec.d, row.spec.n, row.spec.l, row.actual);
    if (!row.naive_match) {
      if (row.actual != 0)
        return fail("c2: d=%ld n=%ld l=%ld exceptional but dim %ld",
                    row.spec.d, row.spec.n, row.spec.l, row.actual);
      flagged.insert({row.spec.d, row.spec.n, row.spec.l});
    }
  }
  std::set<std::array<long, 3>> expected;
  for (const auto& ex : golden::kDefectiveSystems)
    expected.insert({ex.d, ex.n, ex.l});
  if (flagged != expected)
    return fail("c2: flagged %zu systems, expected the classified 4",
                flagged.size());
  return true;
}

// 3. Parameter identities: l_d - h_d = l_{d-1}, delta > 0 on the full box,
// and the rounding leftover always lies in [0, 1).
bool c3_identity_chain() {
  for (long d = 4; d <= 30; ++d) {
    for (long n = 3; n <= 30; ++n) {
      auto [l, h] = lh_params(d, n);
      if (d >= 5 && l - h != lh_params(d - 1, n).first)
        return fail("c3: chain broken at d=%ld n=%ld", d, n);
      if (delta(d, n) <= 0) return fail("c3: delta <= 0 at d=%ld n=%ld", d, n);
    }
  }
  for (long a = 1; a <= 200; ++a) {
    for (long b = 1; b <= 200; ++b) {
      mpq_class f = frup(a, b);
      if (f < 0 || f >= 1) return fail("c3: frup out of range at %ld,%ld", a, b);
    }
  }
  return true;
}

// 4. The (6, 9, 500) side condition evaluates to exactly -1, so none of the
// finite-cover cases apply.
bool c4_cover_remark() {
  if (frup(8, 6) != mpq_class(1, 3)) return fail("c4: frup(8,6) != 1/3");
  if (frup(9, 6) != mpq_class(1, 2)) return fail("c4: frup(9,6) != 1/2");
  FcResult r = th_fc_applies(6, 9, 500);
  if (r.applies()) return fail("c4: a case unexpectedly applies");
  if (r.l0_side != mpq_class(-1)) return fail("c4: side condition not -1");
  return true;
}

// 5. For prime d, one of two consecutive rounding leftovers vanishes.
bool c5_prime_vanishing() {
  for (long d : {5L, 7L, 11L, 13L})
    for (long n = 2; n <= 10000; ++n)
      if (!prime_frup_vanishing(d, n))
        return fail("c5: nonvanishing at d=%ld n=%ld", d, n);
  return true;
}

// 6. Singular-locus verdicts: seven nodes stay nodes with a finite locus,
// eight force a singular curve, and the two zero-dimensional plane systems
// are perfect squares.
bool c6_singularity_verdicts() {
  PrimeField k(default_primes()[0]);

  auto cfg7 = sample_config(k, {{4, 3, 7}, 0}, 71);
  auto m7 = random_member(k, 4, cfg7, 71);
  auto rep7 = singularity_scan(m7, cfg7.all_points(), 6, 71);
  if (!rep7.all_nodes) return fail("c6: seven-node quartic not all nodes");
  for (long r : rep7.hessian_ranks)
    if (r != 3) return fail("c6: node rank %ld != 3", r);
  if (rep7.finiteness != Finiteness::finite)
    return fail("c6: seven-node locus not finite");

  auto cfg8 = sample_config(k, {{4, 3, 8}, 0}, 83);
  auto m8 = random_member(k, 4, cfg8, 83);
  auto rep8 = singularity_scan(m8, cfg8.all_points(), 6, 83);
  if (rep8.finiteness != Finiteness::positive_dimensional)
    return fail("c6: eight-node quartic missed the singular curve");

  auto cfg9 = sample_config(k, {{6, 2, 9}, 0}, 97);
  auto m9 = random_member(k, 6, cfg9, 97);
  auto sq9 = square_detect(m9);
  if (!sq9 || sq9->g.degree() != 3)
    return fail("c6: nine-node sextic is not a cubic squared");

  auto cfg5 = sample_config(k, {{4, 2, 5}, 0}, 53);
  auto m5 = random_member(k, 4, cfg5, 53);
  auto sq5 = square_detect(m5);
  if (!sq5 || sq5->g.degree() != 2)
    return fail("c6: five-node quartic is not a conic squared");
  return true;
}

// 7. Uniqueness holds exactly at (5, 2) among 1 < n < d <= 30, certified by
// a degree-1 map; the four-node quartic system factors through a pencil.
bool c7_waring_uniqueness() {
  for (long d = 2; d <= 30; ++d) {
    for (long n = 2; n < d; ++n) {
      UniquenessVerdict v = waring_verdict(d, n);
      bool should = d == 5 && n == 2;
      if ((v.tag == UniqTag::unique) != should)
        return fail("c7: verdict wrong at d=%ld n=%ld", d, n);
    }
  }

  PrimeField k(default_primes()[0]);
  for (std::uint64_t seed : {11ULL, 22ULL, 33ULL, 44ULL, 55ULL}) {
    auto cfg = sample_config(k, {{5, 2, 6}, 0}, seed);
    auto cm = conditions_matrix(k, 5, cfg);
    auto sys = kernel_system(k, 5, cm, 2);
    if (sys.size() != 3) return fail("c7: quintic system wrong size");
    auto rep = map_rank_and_degree(k, sys, cfg.all_points(), seed);
    if (rep.verdict != MapVerdict::birational || *rep.fiber_count != 1)
      return fail("c7: quintic map not birational at seed %llu",
                  (unsigned long long)seed);
  }

  auto cfg4 = sample_config(k, {{4, 2, 4}, 0}, 41);
  auto cm4 = conditions_matrix(k, 4, cfg4);
  auto sys4 = kernel_system(k, 4, cm4, 2);
  auto rep4 = map_rank_and_degree(k, sys4, cfg4.all_points(), 41);
  if (rep4.verdict != MapVerdict::composed_with_pencil)
    return fail("c7: four-node quartic map not pencil-composed");
  return true;
}

// 8. Odd-degree binary forms: 50 random forms per degree certify unique
// decompositions into (d+1)/2 powers, and short constructed power sums are
// recovered exactly through their apolar product.
bool c8_sylvester() {
  RationalField q;
  for (long d = 3; d <= 15; d += 2) {
    long half = (d + 1) / 2;
    for (int t = 0; t < 50; ++t) {
      Rng rng(Rng::mix(800 + static_cast<std::uint64_t>(d),
                       static_cast<std::uint64_t>(t)));
      std::vector<mpq_class> c;
      for (long i = 0; i <= d; ++i) c.push_back(q.random(rng));
      auto cert = sylvester_certificate(BinaryForm<RationalField>(q, c));
      if (!cert.unique || cert.s != half)
        return fail("c8: generic certificate failed at d=%ld trial %d", d, t);
    }

    long s = half - 1;
    if (s < 1) continue;
    Rng rng(Rng::mix(900, static_cast<std::uint64_t>(d)));
    std::vector<mpq_class> lam, av, bv;
    for (long i = 0; i < s; ++i) {
      lam.emplace_back(2 + i);
      av.emplace_back(1);
      bv.emplace_back(i);  // distinct lines x, x + y, x + 2y, ...
    }
    auto f = power_sum(q, d, lam, av, bv);
    if (rank_lower_bound(f) != s)
      return fail("c8: power sum rank bound != %ld at d=%ld", s, d);
    auto cat = catalecticant(f, s);
    if (static_cast<long>(cat.m.cols()) - rank_of(q, cat.m) != 1)
      return fail("c8: power sum kernel not a line at d=%ld", d);
    UniPoly<RationalField> prod = UniPoly<RationalField>::constant(q, q.one());
    for (long i = 0; i < s; ++i) {
      // b x - a y at x = 1, y = t: (b) - (a) t => represented monic in t
      std::vector<mpq_class> lin = {bv[i], -av[i]};
      prod = prod * UniPoly<RationalField>(q, lin);
    }
    if (!apolarity_check(f, prod, s))
      return fail("c8: apolar product rejected at d=%ld", d);
  }
  return true;
}

// 9. Secant dimensions are the dual reading of interpolation dimensions,
// including both classified defect-1 cases.
bool c9_secant_duality() {
  for (long d = 2; d <= 5; ++d) {
    for (long n = 1; n <= 3; ++n) {
      for (long k = 0; k <= 6; ++k) {
        OracleOptions opt = prime_opts(
            Rng::mix(90, static_cast<std::uint64_t>(d * 100 + n * 10 + k)));
        auto sec = veronese_secant_dim(d, n, k, opt);
        auto dim = system_dim({d, n, k + 1}, opt);
        if (sec.measured_dim != sec.N - 1 - dim.actual)
          return fail("c9: duality broken at d=%ld n=%ld k=%ld", d, n, k);
      }
    }
  }
  auto defect1 = veronese_secant_dim(4, 2, 4, prime_opts(91));
  if (defect1.defect != 1) return fail("c9: (4,2,4) defect != 1");
  auto defect2 = veronese_secant_dim(3, 4, 6, prime_opts(92));
  if (defect2.defect != 1) return fail("c9: (3,4,6) defect != 1");
  return true;
}

// 10. Cross-cutting properties: modular ranks never exceed the rational
// rank, restriction dimensions obey the exact-sequence bound, node verdicts
// survive charts and coordinate changes, and the two elimination routes
// agree on common factors.
bool c10_property_suites() {
  RationalField q;
  PrimeField k0(default_primes()[0]);

  // rank semicontinuity
  for (int t = 0; t < 20; ++t) {
    Rng rng(Rng::mix(1000, static_cast<std::uint64_t>(t)));
    MatX<mpq_class> mq(8, 6);
    for (long i = 0; i < 8; ++i)
      for (long j = 0; j < 6; ++j)
        mq(i, j) = mpq_class(static_cast<long>(rng.below(101)) - 50);
    long rational_rank = rank_of(q, mq);
    for (std::size_t pi = 0; pi < 3; ++pi) {
      PrimeField kp(default_primes()[pi]);
      MatX<Fp> mp(8, 6);
      for (long i = 0; i < 8; ++i)
        for (long j = 0; j < 6; ++j)
          mp(i, j) = kp.from_int(mq(i, j).get_num().get_si());
      if (rank_of(kp, mp) > rational_rank)
        return fail("c10: modular rank exceeded rational rank");
    }
  }
  {
    MatX<mpq_class> drop(1, 1);
    drop(0, 0) = mpq_class(static_cast<long>(default_primes()[0]));
    MatX<Fp> dropp(1, 1);
    dropp(0, 0) = k0.from_int(static_cast<long>(default_primes()[0]) %
                              static_cast<long>(k0.p));
    if (rank_of(q, drop) != 1 || rank_of(k0, dropp) != 0)
      return fail("c10: constructed rank drop not observed");
  }

  // restriction-sequence bound on 100 random specialized specs
  Rng pick(Rng::mix(1010, 7));
  for (int t = 0; t < 100; ++t) {
    long d = 3 + static_cast<long>(pick.below(4));
    long n = 2 + static_cast<long>(pick.below(2));
    long l = 1 + static_cast<long>(pick.below(8));
    long h = 1 + static_cast<long>(pick.below(static_cast<std::uint64_t>(l)));
    auto rep = castelnuovo_check({{d, n, l}, h},
                                 prime_opts(Rng::mix(1020, t)));
    if (rep.total > rep.h_d_minus_1 + rep.h_n_minus_1)
      return fail("c10: restriction bound violated at d=%ld n=%ld l=%ld h=%ld",
                  d, n, l, h);
  }

  // node_check chart and coordinate invariance
  {
    auto cfg = sample_config(k0, {{4, 2, 5}, 0}, 1030);
    auto f = random_member(k0, 4, cfg, 1030);
    Rng rng(1031);
    for (int t = 0; t < 3; ++t) {
      MatX<Fp> m(3, 3), minv(3, 3);
      while (true) {
        for (long i = 0; i < 3; ++i)
          for (long j = 0; j < 3; ++j) m(i, j) = k0.random(rng);
        try {
          minv = invert_matrix(k0, m);
          break;
        } catch (const std::exception&) {
        }
      }
      auto g = restrict_poly(f, m);
      for (const auto& p : cfg.all_points()) {
        VecX<Fp> pre(3);
        for (long i = 0; i < 3; ++i) {
          Fp acc = k0.zero();
          for (long j = 0; j < 3; ++j) acc = acc + minv(i, j) * p(j);
          pre(i) = acc;
        }
        NodeReport a = node_check(f, p);
        NodeReport b = node_check(g, pre);
        VecX<Fp> scaled = p;
        for (long i = 0; i < 3; ++i) scaled(i) = scaled(i) * k0.from_int(7);
        NodeReport c = node_check(f, scaled);
        if (a.is_singular != b.is_singular ||
            a.hessian_rank != b.hessian_rank ||
            a.is_singular != c.is_singular ||
            a.hessian_rank != c.hessian_rank)
          return fail("c10: node verdict not invariant");
      }
    }
  }

  // eliminant vs gcd on shared factors
  for (int t = 0; t < 5; ++t) {
    Rng rng(Rng::mix(1040, static_cast<std::uint64_t>(t)));
    auto g = random_poly(k0, 2, 2, rng);
    auto u = random_poly(k0, 2, 2, rng);
    auto v = random_poly(k0, 2, 2, rng);
    auto a = multiply(g, u);
    auto b = multiply(g, v);
    if (!eliminant_z(a, b).is_zero())
      return fail("c10: eliminant nonzero despite shared factor");
    Rng grng(Rng::mix(1050, static_cast<std::uint64_t>(t)));
    auto common = ternary_gcd(k0, {a, b}, grng);
    if (!common || common->degree() < 2)
      return fail("c10: gcd missed the planted factor");

    auto c = random_poly(k0, 2, 3, rng);
    auto d = random_poly(k0, 2, 3, rng);
    bool elim_zero = eliminant_z(c, d).is_zero();
    Rng hrng(Rng::mix(1060, static_cast<std::uint64_t>(t)));
    auto none = ternary_gcd(k0, {c, d}, hrng);
    if (elim_zero != none.has_value())
      return fail("c10: eliminant and gcd disagree on random pair");
  }
  return true;
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<bool()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {"delta-table reproduction", 1.0, c1_delta_table},
      {"exceptional-system scan", 300.0, c2_exception_scan},
      {"parameter identity chain", 10.0, c3_identity_chain},
      {"finite-cover remark (6,9,500)", 1.0, c4_cover_remark},
      {"prime leftover vanishing", 30.0, c5_prime_vanishing},
      {"singularity verdicts", 120.0, c6_singularity_verdicts},
      {"waring uniqueness", 60.0, c7_waring_uniqueness},
      {"binary decomposition certificates", 120.0, c8_sylvester},
      {"secant duality", 120.0, c9_secant_duality},
      {"property suites", 180.0, c10_property_suites},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = criteria[i].run();
    } catch (const std::exception& e) {
      std::fprintf(stderr, "criterion %zu threw: %s\n", i + 1, e.what());
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    bool in_budget = elapsed <= criteria[i].budget_s;
    if (!in_budget)
      std::fprintf(stderr, "criterion %zu over budget: %.2fs > %.0fs\n",
                   i + 1, elapsed, criteria[i].budget_s);
    bool pass = ok && in_budget;
    std::printf("[%s] %2zu %s (%.2fs)\n", pass ? "PASS" : "FAIL", i + 1,
                criteria[i].name, elapsed);
    if (!pass) ++failures;
  }
  if (failures == 0) {
    std::printf("all %zu acceptance criteria hold\n", criteria.size());
    return 0;
  }
  std::printf("%d criteria failed\n", failures);
  return 1;
}
