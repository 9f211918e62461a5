#include "nodal/numerology.hpp"

#include <array>
#include <stdexcept>

namespace nodal {

namespace {

struct AhException {
  long d, n, l;
};

// the four defective systems of the interpolation theorem
constexpr std::array<AhException, 4> kAhExceptions = {
    AhException{3, 4, 7}, AhException{4, 2, 5}, AhException{4, 3, 9},
    AhException{4, 4, 14}};

mpz_class max_mpz(const mpz_class& a, const mpz_class& b) {
  return a >= b ? a : b;
}

bool is_prime_small(long d) {
  if (d < 2) return false;
  for (long q = 2; q * q <= d; ++q)
    if (d % q == 0) return false;
  return true;
}

// l_d before the h subtraction; valid for any d >= 1
mpz_class l_param(long d, long n) {
  return ceil_div(binomial(n + d + 1, n), n + 1) -
         ceil_div(binomial(n + d, n - 1), n);
}

// Projective dimension when decidable without sampling: an empty point set,
// degree 0 or 1, a single double point on quadrics, the closed-form theorem
// range, or a caller-supplied oracle value.
std::optional<mpz_class> known_dim(const SystemSpec& s,
                                   const DimLookup& lookup) {
  if (s.l == 0) return binomial(s.n + s.d, s.n) - 1;
  if (s.d == 0) return mpz_class(-1);
  if (s.d == 1) return mpz_class(-1);
  if (s.d == 2 && s.l == 1) return binomial(s.n + 2, s.n) - (s.n + 1) - 1;
  if (ah_in_range(s.d, s.n)) return ah_status(s).dim;
  if (lookup) return lookup(s);
  return std::nullopt;
}

std::optional<bool> known_expected_effective(const SystemSpec& s,
                                             const DimLookup& lookup) {
  auto dim = known_dim(s, lookup);
  if (!dim) return std::nullopt;
  return *dim == expected_dim(s) && *dim >= 0;
}

std::optional<bool> known_expected(const SystemSpec& s,
                                   const DimLookup& lookup) {
  auto dim = known_dim(s, lookup);
  if (!dim) return std::nullopt;
  return *dim == max_mpz(expected_dim(s), mpz_class(-1));
}

}  // namespace

void validate(const SystemSpec& s) {
  if (s.d < 1 || s.n < 1 || s.l < 0)
    throw std::invalid_argument("SystemSpec: need d >= 1, n >= 1, l >= 0");
}

void validate(const SpecializedSpec& s) {
  validate(s.base);
  if (s.h < 0 || s.h > s.base.l)
    throw std::invalid_argument("SpecializedSpec: need 0 <= h <= l");
}

bool WinVerdict::condition(const std::string& name) const {
  for (const auto& [key, value] : conditions)
    if (key == name) return value;
  throw std::invalid_argument("WinVerdict: no condition named " + name);
}

mpz_class binomial(long a, long b) {
  if (a < 0) throw std::invalid_argument("binomial: negative upper index");
  if (b < 0 || b > a) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(a),
               static_cast<unsigned long>(b));
  return r;
}

mpz_class ceil_div(const mpz_class& num, const mpz_class& den) {
  if (den <= 0) throw std::invalid_argument("ceil_div: positive divisor only");
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

mpz_class expected_dim(const SystemSpec& spec) {
  validate(spec);
  return binomial(spec.n + spec.d, spec.n) - (spec.n + 1) * mpz_class(spec.l) -
         1;
}

FrupValue frup(long a, long b) {
  if (a < 1 || b < 1) throw std::invalid_argument("frup: need a, b >= 1");
  mpz_class bin = binomial(a + b, a);
  mpq_class exact(bin, mpz_class(a + 1));
  exact.canonicalize();
  return mpq_class(ceil_div(bin, a + 1)) - exact;
}

bool ah_in_range(long d, long n) { return d >= 3 && n >= 2; }

AhStatus ah_status(const SystemSpec& spec) {
  validate(spec);
  AhStatus st;
  st.dim = max_mpz(expected_dim(spec), mpz_class(-1));
  if (!ah_in_range(spec.d, spec.n)) {
    st.tag = AhTag::out_of_theorem_range;
    return st;
  }
  for (const auto& e : kAhExceptions) {
    if (e.d == spec.d && e.n == spec.n && e.l == spec.l) {
      st.tag = AhTag::exceptional;
      st.dim = 0;
      return st;
    }
  }
  mpz_class bound = ceil_div(binomial(spec.n + spec.d, spec.n), spec.n + 1);
  st.tag = mpz_class(spec.l) < bound ? AhTag::expected_effective
                                     : AhTag::expected_empty;
  return st;
}

WinVerdict win_check(const SpecializedSpec& spec) {
  validate(spec);
  long d = spec.base.d, n = spec.base.n, l = spec.base.l, h = spec.h;
  if (n < 3 || d < 3 || l <= h)
    throw std::invalid_argument("win_check: need n >= 3, d >= 3, l > h");

  bool cond_l =
      mpz_class(l) < ceil_div(binomial(n + d, n), n + 1);

  mpz_class trace_bin = binomial(n - 1 + d, n - 1);
  bool cond_h = mpz_class(h) < ceil_div(trace_bin, n);
  if (!cond_h && trace_bin % n == 0 && mpz_class(h) == trace_bin / n) {
    AhStatus trace = ah_status({d, n - 1, h});
    cond_h = trace.tag == AhTag::expected_effective ||
             trace.tag == AhTag::expected_empty;
  }

  bool cond_lh =
      mpz_class(l - h) < ceil_div(binomial(n + d - 1, n), n + 1);

  mpz_class c_value =
      binomial(n + d - 1, n) - mpz_class(n + 1) * (l - h) - h;
  bool cond_c = c_value > 0;

  bool cond_d4 = l - h > n;

  mpq_class d3_bound = mpq_class(binomial(n + 3, n), mpz_class(n + 1)) -
                       mpq_class(n + 2, 3) + 1;
  d3_bound.canonicalize();
  bool cond_d3 = mpq_class(l) < d3_bound && h == l - 1;

  WinVerdict v;
  v.conditions = {{"L", cond_l},   {"H", cond_h},   {"LH", cond_lh},
                  {"C", cond_c},   {"D4", cond_d4}, {"D3", cond_d3}};
  if (d >= 5) {
    v.rule = WinRule::d_ge_5;
    v.win = cond_l && cond_h && cond_lh && cond_c;
  } else if (d == 4) {
    v.rule = WinRule::d_eq_4;
    v.win = cond_l && cond_h && cond_lh && cond_c && cond_d4;
  } else {
    v.rule = WinRule::d_eq_3;
    v.win = cond_d3;
  }
  return v;
}

WinVerdict dimbase_check(const SpecializedSpec& spec, const DimLookup& lookup) {
  validate(spec);
  long d = spec.base.d, n = spec.base.n, l = spec.base.l, h = spec.h;
  if (d < 2) throw std::invalid_argument("dimbase_check: need d >= 2");
  if (n < 2) throw std::invalid_argument("dimbase_check: need n >= 2");

  std::optional<bool> full = known_expected_effective({d, n, l}, lookup);
  std::optional<bool> residual =
      known_expected_effective({d - 1, n, l - h}, lookup);
  std::optional<bool> trace = known_expected({d, n - 1, h}, lookup);

  std::optional<bool> bound;
  {
    mpz_class lhs = binomial(n + d - 1, n) - mpz_class(n + 1) * (l - h) - h;
    SystemSpec twice_down{d - 2, n, l - h};
    std::optional<mpz_class> dim2;
    if (d - 2 == 0) {
      dim2 = (l - h > 0) ? mpz_class(-1) : mpz_class(0);
    } else {
      dim2 = known_dim(twice_down, lookup);
    }
    if (dim2) bound = lhs >= max_mpz(mpz_class(1), *dim2);
  }

  WinVerdict v;
  v.rule = WinRule::dimbase_direct;
  auto record = [&v](const char* name, const std::optional<bool>& value) {
    v.conditions.emplace_back(name, value.value_or(false));
    return value;
  };
  auto h1 = record("ee_full", full);
  auto h2 = record("ee_residual", residual);
  auto h3 = record("expected_trace", trace);
  auto h4 = record("bound", bound);

  bool any_false = (h1 && !*h1) || (h2 && !*h2) || (h3 && !*h3) || (h4 && !*h4);
  bool any_unknown = !h1 || !h2 || !h3 || !h4;
  if (any_false) {
    v.win = false;
  } else if (any_unknown) {
    v.indeterminate = true;
  } else {
    v.win = true;
  }
  return v;
}

std::pair<mpz_class, mpz_class> lh_params(long d, long n) {
  if (d < 4 || n < 3)
    throw std::invalid_argument("lh_params: need d >= 4, n >= 3");
  mpz_class l = l_param(d, n);
  mpz_class h = l - l_param(d - 1, n);
  return {l, h};
}

mpz_class delta(long d, long n) {
  auto [l, h] = lh_params(d, n);
  return binomial(n + d - 1, n) - mpz_class(n + 1) * (l - h) - h;
}

std::pair<mpq_class, mpq_class> fr_values(long d, long n) {
  if (d < 4 || n < 3)
    throw std::invalid_argument("fr_values: need d >= 4, n >= 3");
  mpq_class fr_l = frup(n, d + 1) - frup(n - 1, d + 1);
  mpq_class fr_h = fr_l - frup(n, d) + frup(n - 1, d);
  return {fr_h, fr_l};
}

bool th_can_applies(const SystemSpec& spec) {
  validate(spec);
  long d = spec.d, n = spec.n;
  if (n < 3) return false;
  if (d >= 4) return mpz_class(spec.l) == lh_params(d, n).first;
  if (d == 3) {
    mpq_class bound = mpq_class(binomial(n + 3, n), mpz_class(n + 1)) -
                      mpq_class(n + 2, 3) + 1;
    bound.canonicalize();
    return mpq_class(spec.l) < bound;
  }
  return false;
}

FcResult th_fc_applies(long target_degree, long n, const mpz_class& l) {
  if (target_degree < 4 || n < 3)
    throw std::invalid_argument("th_fc_applies: need target degree >= 4, n >= 3");
  long d = target_degree - 1;
  FcResult r;
  mpz_class base = ceil_div(binomial(n + d + 1, n), n + 1);
  r.l0 = base - 1;
  r.l1 = base - 2;
  r.l2 = base - 1;
  r.l0_side = mpq_class(n) * frup(n - 1, d + 1) -
              mpq_class(n + 1) * frup(n, d + 1) + 1;
  r.l0_side.canonicalize();
  r.l2_frup_zero = frup(n - 1, d + 1) == 0;

  if (l == r.l0 && r.l0_side > 0) {
    r.tag = FcCase::l0;
  } else if (l == r.l1) {
    r.tag = FcCase::l1;
  } else if (l == r.l2 && r.l2_frup_zero && (d >= 4 || (d == 3 && n >= 6))) {
    r.tag = FcCase::l2;
  } else {
    r.tag = FcCase::none;
  }
  return r;
}

ConumVerdict conum_verdict(const SystemSpec& spec) {
  validate(spec);
  if (spec.n < 3)
    throw std::invalid_argument("conum_verdict: need n >= 3");
  AhStatus st = ah_status(spec);
  if (st.tag == AhTag::out_of_theorem_range || st.dim < 0)
    throw std::invalid_argument(
        "conum_verdict: system must be effective in the theorem range");

  ConumVerdict v;
  long d = spec.d;
  if (d == 4) {
    if (spec.n == 3 && spec.l == 8) {
      v.tag = ConumTag::exceptional;
      v.note = "pencil of quadrics squared";
    } else if (spec.n == 3 && spec.l == 9) {
      v.tag = ConumTag::exceptional;
      v.note = "double quadric through nine points";
    } else {
      v.tag = ConumTag::nodal;
    }
    return v;
  }
  if (d >= 5 && is_prime_small(d)) {
    v.tag = ConumTag::nodal;
    return v;
  }
  v.tag = ConumTag::indeterminate;
  v.note = d == 3 ? "cubics outside the corollary"
                  : "composite degree outside the corollary";
  return v;
}

bool is_prime_long(long d) { return is_prime_small(d); }

bool prime_frup_vanishing(long d, long n) {
  if (d < 5 || !is_prime_small(d))
    throw std::invalid_argument("prime_frup_vanishing: d must be a prime >= 5");
  if (n < 2) throw std::invalid_argument("prime_frup_vanishing: need n >= 2");
  return frup(n, d) == 0 || frup(n - 1, d) == 0;
}

bool cover_condition(long d, long n, long k) {
  if (d < 4 || n < 3)
    throw std::invalid_argument("cover_condition: need d >= 4, n >= 3");
  if (k < 0) throw std::invalid_argument("cover_condition: need k >= 0");
  mpz_class big_n = binomial(n + d, n) - 1;
  mpz_class filled = mpz_class(k + 1) * (n + 1) - 1;
  mpz_class codim = big_n - (filled < big_n ? filled : big_n);
  return codim >= n + 1;
}

std::optional<mpz_class> bridge_k(long d, long n) {
  if (d < 1 || n < 1) throw std::invalid_argument("bridge_k: need d, n >= 1");
  mpz_class bin = binomial(d + n, n);
  if (bin % (n + 1) != 0) return std::nullopt;
  return mpz_class(bin / (n + 1) - 1);
}

UniquenessVerdict waring_verdict(long d, long n) {
  if (d < 1 || n < 1)
    throw std::invalid_argument("waring_verdict: need d, n >= 1");
  UniquenessVerdict v;
  v.k = bridge_k(d, n);
  if (v.k) v.s = *v.k + 1;

  if (n == 1) {
    if (d % 2 == 1) {
      v.tag = UniqTag::unique;
      v.citation = "binary forms of odd degree";
    } else {
      v.tag = UniqTag::no_canonical_form;
      v.citation = "binary forms of even degree";
    }
    return v;
  }
  if (d == 1) {
    v.tag = UniqTag::unique;
    v.citation = "linear form";
    return v;
  }
  if (!v.k) {
    v.tag = UniqTag::no_canonical_form;
    v.citation = "summand count is not integral";
    return v;
  }
  if (d == 5 && n == 2) {
    v.tag = UniqTag::unique;
    v.citation = "general plane quintics";
    return v;
  }
  if (d == 3 && n == 3) {
    v.tag = UniqTag::unique;
    v.citation = "pentahedral cubic surfaces";
    return v;
  }
  if (d > n) {
    v.tag = UniqTag::not_unique;
    v.citation = "general forms of degree above dimension";
    return v;
  }
  if (n <= 3) {
    v.tag = UniqTag::not_unique;
    v.citation = "low-dimension classification";
    return v;
  }
  v.tag = UniqTag::out_of_theorem_range;
  v.citation = "degree at most dimension, above threefolds";
  return v;
}

const char* to_string(AhTag t) {
  switch (t) {
    case AhTag::expected_effective: return "expected_effective";
    case AhTag::expected_empty: return "expected_empty";
    case AhTag::exceptional: return "exceptional";
    case AhTag::out_of_theorem_range: return "out_of_theorem_range";
  }
  return "?";
}

const char* to_string(WinRule r) {
  switch (r) {
    case WinRule::d_ge_5: return "d>=5";
    case WinRule::d_eq_4: return "d=4";
    case WinRule::d_eq_3: return "d=3";
    case WinRule::dimbase_direct: return "dimbase_direct";
    case WinRule::explicit_override: return "explicit_override";
  }
  return "?";
}

const char* to_string(UniqTag t) {
  switch (t) {
    case UniqTag::unique: return "unique";
    case UniqTag::not_unique: return "not_unique";
    case UniqTag::no_canonical_form: return "no_canonical_form";
    case UniqTag::out_of_theorem_range: return "out_of_theorem_range";
  }
  return "?";
}

const char* to_string(ConumTag t) {
  switch (t) {
    case ConumTag::nodal: return "nodal";
    case ConumTag::exceptional: return "exceptional";
    case ConumTag::indeterminate: return "indeterminate";
  }
  return "?";
}

const char* to_string(FcCase c) {
  switch (c) {
    case FcCase::l0: return "l0";
    case FcCase::l1: return "l1";
    case FcCase::l2: return "l2";
    case FcCase::none: return "none";
  }
  return "?";
}

}  // namespace nodal
