#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nodal/homopoly.hpp"
#include "nodal/linalg.hpp"
#include "nodal/numerology.hpp"
#include "nodal/rng.hpp"
#include "nodal/scalar.hpp"

namespace nodal {

struct EmptySystemError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FieldMode { prime, rational };

struct OracleOptions {
  FieldMode mode = FieldMode::prime;
  int trials = 3;
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> primes = default_primes();
};

// P = general points, Q = points on the hyperplane {x_n = 0}
template <class Field>
struct PointConfig {
  int n = 1;
  std::vector<VecX<typename Field::Scalar>> general_points;
  std::vector<VecX<typename Field::Scalar>> hyperplane_points;

  std::vector<VecX<typename Field::Scalar>> all_points() const {
    auto pts = general_points;
    pts.insert(pts.end(), hyperplane_points.begin(), hyperplane_points.end());
    return pts;
  }
};

template <class Field>
struct ConditionsMatrix {
  struct RowOrigin {
    long point = 0;
    int var = -1;  // derivative variable; -1 marks a plain evaluation row
  };
  MatX<typename Field::Scalar> m;
  std::vector<RowOrigin> rows;
};

namespace detail {

template <class Field>
VecX<typename Field::Scalar> sample_point(const Field& k, int coords,
                                          Rng& rng) {
  using S = typename Field::Scalar;
  while (true) {
    VecX<S> p(coords);
    bool nonzero = false;
    for (int i = 0; i < coords; ++i) {
      p(i) = k.random(rng);
      if (!k.is_zero(p(i))) nonzero = true;
    }
    if (!nonzero) continue;
    // normalize the last nonzero coordinate to 1
    for (int i = coords - 1; i >= 0; --i) {
      if (!k.is_zero(p(i))) {
        S inv = k.inv(p(i));
        for (int j = 0; j < coords; ++j) p(j) = p(j) * inv;
        break;
      }
    }
    return p;
  }
}

template <class S>
bool same_point(const VecX<S>& a, const VecX<S>& b) {
  if (a.size() != b.size()) return false;
  for (long i = 0; i < a.size(); ++i)
    if (!(a(i) == b(i))) return false;
  return true;
}

}  // namespace detail

// l-h uniform points of P^n plus h uniform points of the hyperplane,
// pairwise distinct, reproducible byte-for-byte from the seed
template <class Field>
PointConfig<Field> sample_config(const Field& k, const SpecializedSpec& spec,
                                 std::uint64_t seed) {
  using S = typename Field::Scalar;
  validate(spec);
  check_characteristic(k, spec.base.d);
  const int n = static_cast<int>(spec.base.n);
  const long general = spec.base.l - spec.h;

  // crude capacity guard: refuse fields that cannot hold distinct samples
  if (static_cast<double>(spec.base.l) * 4 > k.size_hint())
    throw std::invalid_argument("sample_config: field too small for l points");

  Rng rng(Rng::mix(seed, 0xC0FF));
  PointConfig<Field> cfg;
  cfg.n = n;
  long attempts = 0;
  const long max_attempts = 64 * (spec.base.l + 1);
  auto is_fresh = [&](const VecX<S>& candidate) {
    for (const auto& q : cfg.general_points)
      if (detail::same_point(candidate, q)) return false;
    for (const auto& q : cfg.hyperplane_points)
      if (detail::same_point(candidate, q)) return false;
    return true;
  };
  while (static_cast<long>(cfg.general_points.size()) < general) {
    if (++attempts > max_attempts)
      throw std::invalid_argument("sample_config: cannot find distinct points");
    VecX<S> p = detail::sample_point(k, n + 1, rng);
    if (is_fresh(p)) cfg.general_points.push_back(p);
  }
  while (static_cast<long>(cfg.hyperplane_points.size()) < spec.h) {
    if (++attempts > max_attempts)
      throw std::invalid_argument("sample_config: cannot find distinct points");
    VecX<S> q(n + 1);
    VecX<S> inner = detail::sample_point(k, n, rng);
    for (int i = 0; i < n; ++i) q(i) = inner(i);
    q(n) = k.zero();
    if (is_fresh(q)) cfg.hyperplane_points.push_back(q);
  }
  return cfg;
}

// One block of n+1 derivative rows per double point, then one evaluation row
// per simple point; columns follow the graded-lex monomial basis of degree d.
template <class Field>
ConditionsMatrix<Field> conditions_matrix(
    const Field& k, long d,
    const std::vector<VecX<typename Field::Scalar>>& double_points,
    const std::vector<VecX<typename Field::Scalar>>& simple_points = {}) {
  using S = typename Field::Scalar;
  if (d < 1) throw std::invalid_argument("conditions_matrix: need d >= 1");
  check_characteristic(k, d);
  int n = -1;
  for (const auto& p : double_points) n = static_cast<int>(p.size()) - 1;
  for (const auto& p : simple_points) n = static_cast<int>(p.size()) - 1;
  if (n < 1)
    throw std::invalid_argument("conditions_matrix: no points supplied");

  const MonomialBasis& mb = monomial_basis(n, d);
  long rows =
      static_cast<long>(double_points.size()) * (n + 1) +
      static_cast<long>(simple_points.size());
  ConditionsMatrix<Field> out;
  out.m = MatX<S>(rows, mb.size());
  out.rows.reserve(rows);

  auto power_table = [&](const VecX<S>& p) {
    std::vector<std::vector<S>> pw(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
      pw[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(d) + 1,
                                             k.one());
      for (long e = 1; e <= d; ++e)
        pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)] =
            pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(e - 1)] *
            p(j);
    }
    return pw;
  };

  long r = 0;
  for (std::size_t pi = 0; pi < double_points.size(); ++pi) {
    const VecX<S>& p = double_points[pi];
    if (p.size() != n + 1)
      throw std::invalid_argument("conditions_matrix: mixed point arity");
    auto pw = power_table(p);
    for (int var = 0; var <= n; ++var) {
      for (long c = 0; c < mb.size(); ++c) {
        const std::vector<int>& e = mb.exponents(c);
        int ev = e[static_cast<std::size_t>(var)];
        if (ev == 0) {
          out.m(r, c) = k.zero();
          continue;
        }
        S value = k.from_int(ev);
        for (int j = 0; j <= n; ++j) {
          int expo = e[static_cast<std::size_t>(j)] - (j == var ? 1 : 0);
          value = value *
                  pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(expo)];
        }
        out.m(r, c) = value;
      }
      out.rows.push_back({static_cast<long>(pi), var});
      ++r;
    }
  }
  for (std::size_t pi = 0; pi < simple_points.size(); ++pi) {
    const VecX<S>& p = simple_points[pi];
    if (p.size() != n + 1)
      throw std::invalid_argument("conditions_matrix: mixed point arity");
    auto pw = power_table(p);
    for (long c = 0; c < mb.size(); ++c) {
      const std::vector<int>& e = mb.exponents(c);
      S value = k.one();
      for (int j = 0; j <= n; ++j)
        value = value *
                pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(
                    e[static_cast<std::size_t>(j)])];
      out.m(r, c) = value;
    }
    out.rows.push_back({static_cast<long>(pi), -1});
    ++r;
  }
  return out;
}

template <class Field>
ConditionsMatrix<Field> conditions_matrix(const Field& k, long d,
                                          const PointConfig<Field>& cfg) {
  return conditions_matrix(k, d, cfg.all_points());
}

struct DimReport {
  SpecializedSpec spec;
  mpz_class expected;
  long actual = -1;  // projective dimension, -1 empty
  std::string field_desc;
  int trials = 0;
  std::uint64_t seed = 0;
  bool agreement = false;
};

struct ResidualReport {
  long h_d_minus_1 = 0;  // vector-space dimensions
  long h_n_minus_1 = 0;
  long total = 0;
  bool exact = false;
};

namespace detail {

struct RankProbe {
  long max_rank = 0;
  long cols = 0;
};

template <class Field>
long config_rank(const Field& k, const SpecializedSpec& spec,
                 std::uint64_t seed) {
  PointConfig<Field> cfg = sample_config(k, spec, seed);
  auto cm = conditions_matrix(k, spec.base.d, cfg);
  return rank_and_kernel(k, cm.m).rank;
}

inline RankProbe oracle_rank(const SpecializedSpec& spec,
                             const OracleOptions& opt) {
  validate(spec);
  if (opt.trials < 1)
    throw std::invalid_argument("oracle_rank: need at least one trial");
  RankProbe probe;
  probe.cols =
      static_cast<long>(binomial(spec.base.n + spec.base.d, spec.base.n)
                            .get_si());
  if (spec.base.l == 0) return probe;  // no conditions at all
  for (int t = 0; t < opt.trials; ++t) {
    std::uint64_t trial_seed = Rng::mix(opt.seed, static_cast<std::uint64_t>(t));
    long rank = 0;
    if (opt.mode == FieldMode::prime) {
      if (opt.primes.empty())
        throw std::invalid_argument("oracle_rank: no primes supplied");
      PrimeField f(opt.primes[static_cast<std::size_t>(t) % opt.primes.size()]);
      rank = config_rank(f, spec, trial_seed);
    } else {
      RationalField f;
      rank = config_rank(f, spec, trial_seed);
    }
    probe.max_rank = std::max(probe.max_rank, rank);
  }
  return probe;
}

inline std::string mode_desc(const OracleOptions& opt) {
  if (opt.mode == FieldMode::rational) return "rational";
  std::string s = "p=";
  for (int t = 0; t < opt.trials; ++t) {
    if (t) s += ",";
    s += std::to_string(
        opt.primes[static_cast<std::size_t>(t) % opt.primes.size()]);
  }
  return s;
}

}  // namespace detail

// Measured projective dimension of the specialized system, with the
// agreement flag comparing against the closed-form prediction when one
// exists (the interpolation theorem for h = 0; the raw expected count
// otherwise).
inline DimReport specialized_dim(const SpecializedSpec& spec,
                                 const OracleOptions& opt) {
  detail::RankProbe probe = detail::oracle_rank(spec, opt);
  DimReport rep;
  rep.spec = spec;
  rep.expected = expected_dim(spec.base);
  rep.actual = probe.cols - 1 - probe.max_rank;
  rep.field_desc = detail::mode_desc(opt);
  rep.trials = opt.trials;
  rep.seed = opt.seed;
  mpz_class predicted;
  if (spec.h == 0 && ah_in_range(spec.base.d, spec.base.n)) {
    predicted = ah_status(spec.base).dim;
  } else {
    predicted = rep.expected >= -1 ? rep.expected : mpz_class(-1);
  }
  rep.agreement = predicted == rep.actual;
  return rep;
}

inline DimReport system_dim(const SystemSpec& spec, const OracleOptions& opt) {
  return specialized_dim({spec, 0}, opt);
}

// Exactness check for the hyperplane restriction sequence: residual system
// of degree d-1 (P still double, Q simple), trace system of degree d on the
// hyperplane, against the full specialized system.
inline ResidualReport castelnuovo_check(const SpecializedSpec& spec,
                                        const OracleOptions& opt) {
  validate(spec);
  if (spec.h < 1)
    throw std::invalid_argument("castelnuovo_check: need h >= 1");
  if (spec.base.d < 2)
    throw std::invalid_argument("castelnuovo_check: need d >= 2");
  if (spec.base.n < 2)
    throw std::invalid_argument("castelnuovo_check: need n >= 2");

  auto run = [&](const auto& field) {
    using F = std::decay_t<decltype(field)>;
    PointConfig<F> cfg = sample_config(field, spec, opt.seed);

    ResidualReport rep;
    auto full = conditions_matrix(field, spec.base.d, cfg);
    rep.total = static_cast<long>(full.m.cols()) -
                rank_and_kernel(field, full.m).rank;

    auto residual = conditions_matrix(field, spec.base.d - 1,
                                      cfg.general_points,
                                      cfg.hyperplane_points);
    rep.h_d_minus_1 = static_cast<long>(residual.m.cols()) -
                      rank_and_kernel(field, residual.m).rank;

    std::vector<VecX<typename F::Scalar>> trace_points;
    for (const auto& q : cfg.hyperplane_points) {
      VecX<typename F::Scalar> t(cfg.n);
      for (int i = 0; i < cfg.n; ++i) t(i) = q(i);
      trace_points.push_back(t);
    }
    if (trace_points.empty()) {
      rep.h_n_minus_1 = 0;
    } else {
      auto trace = conditions_matrix(field, spec.base.d, trace_points);
      rep.h_n_minus_1 = static_cast<long>(trace.m.cols()) -
                        rank_and_kernel(field, trace.m).rank;
    }
    rep.exact = rep.total == rep.h_d_minus_1 + rep.h_n_minus_1;
    return rep;
  };

  if (opt.mode == FieldMode::prime) {
    if (opt.primes.empty())
      throw std::invalid_argument("castelnuovo_check: no primes supplied");
    return run(PrimeField(opt.primes[0]));
  }
  return run(RationalField{});
}

// random member of the system cut out by the double points of cfg
template <class Field>
HomogeneousPoly<Field> random_member(const Field& k, long d,
                                     const PointConfig<Field>& cfg,
                                     std::uint64_t seed) {
  using S = typename Field::Scalar;
  auto cm = conditions_matrix(k, d, cfg);
  auto rk = rank_and_kernel(k, cm.m);
  if (rk.kernel.cols() == 0)
    throw EmptySystemError("random_member: the system is empty");
  Rng rng(Rng::mix(seed, 0xBEEF));
  HomogeneousPoly<Field> f(k, cfg.n, d);
  while (f.is_zero()) {
    HomogeneousPoly<Field> combo(k, cfg.n, d);
    for (long v = 0; v < rk.kernel.cols(); ++v) {
      S c = k.random(rng);
      for (long i = 0; i < combo.terms(); ++i)
        combo.coeff(i) += c * rk.kernel(i, v);
    }
    f = combo;
  }
  return f;
}

struct AhScanRow {
  SystemSpec spec;
  mpz_class expected;
  long actual = -1;
  bool naive_match = false;    // actual == max(expected, -1)
  bool theorem_match = false;  // actual == classified dimension
};

// Measures every (d, n, l) in the box with expected dim >= -(n+1) and
// compares the oracle against both the naive count and the classification.
inline std::vector<AhScanRow> ah_scan(long d_lo, long d_hi, long n_lo,
                                      long n_hi, const OracleOptions& opt) {
  std::vector<AhScanRow> rows;
  for (long d = d_lo; d <= d_hi; ++d) {
    for (long n = n_lo; n <= n_hi; ++n) {
      for (long l = 0;; ++l) {
        SystemSpec spec{d, n, l};
        mpz_class expected = expected_dim(spec);
        if (expected < -(n + 1)) break;
        DimReport rep = system_dim(spec, opt);
        AhScanRow row;
        row.spec = spec;
        row.expected = expected;
        row.actual = rep.actual;
        mpz_class naive = expected >= -1 ? expected : mpz_class(-1);
        row.naive_match = naive == row.actual;
        row.theorem_match = rep.agreement;
        rows.push_back(row);
      }
    }
  }
  return rows;
}

// true iff every member of the system vanishes at the extra point
template <class Field>
bool base_probe(const Field& k, long d, const PointConfig<Field>& cfg,
                const VecX<typename Field::Scalar>& extra_point) {
  auto cm = conditions_matrix(k, d, cfg);
  auto rk = rank_and_kernel(k, cm.m);
  if (rk.kernel.cols() == 0)
    throw EmptySystemError("base_probe: the system is empty");
  for (long v = 0; v < rk.kernel.cols(); ++v) {
    HomogeneousPoly<Field> f(k, cfg.n, d);
    for (long i = 0; i < f.terms(); ++i) f.coeff(i) = rk.kernel(i, v);
    if (!k.is_zero(f.evaluate(extra_point))) return false;
  }
  return true;
}

}  // namespace nodal
