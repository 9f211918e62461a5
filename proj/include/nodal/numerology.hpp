#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace nodal {

// degree-d hypersurfaces in P^n with l imposed double points
struct SystemSpec {
  long d = 1;
  long n = 1;
  long l = 0;
};

// the same system with h of the points specialized onto a hyperplane
struct SpecializedSpec {
  SystemSpec base;
  long h = 0;
};

void validate(const SystemSpec& s);
void validate(const SpecializedSpec& s);

enum class AhTag {
  expected_effective,
  expected_empty,
  exceptional,
  out_of_theorem_range
};

struct AhStatus {
  AhTag tag = AhTag::out_of_theorem_range;
  mpz_class dim;  // projective dimension; -1 means empty
};

enum class WinRule { d_ge_5, d_eq_4, d_eq_3, dimbase_direct, explicit_override };

struct WinVerdict {
  bool win = false;
  bool indeterminate = false;
  WinRule rule = WinRule::d_ge_5;
  std::vector<std::pair<std::string, bool>> conditions;

  bool condition(const std::string& name) const;
};

enum class UniqTag { unique, not_unique, no_canonical_form, out_of_theorem_range };

struct UniquenessVerdict {
  UniqTag tag = UniqTag::out_of_theorem_range;
  std::optional<mpz_class> k;  // present iff (n+1) divides binomial(d+n,n)
  std::optional<mpz_class> s;  // k+1, the number of summands
  std::string citation;
};

enum class ConumTag { nodal, exceptional, indeterminate };

struct ConumVerdict {
  ConumTag tag = ConumTag::indeterminate;
  std::string note;
};

enum class FcCase { l0, l1, l2, none };

struct FcResult {
  FcCase tag = FcCase::none;
  mpz_class l0, l1, l2;
  mpq_class l0_side;  // n*frup(n-1,d+1) - (n+1)*frup(n,d+1) + 1
  bool l2_frup_zero = false;

  bool applies() const { return tag != FcCase::none; }
};

// supplies projective dimensions the closed-form theorems cannot decide
using DimLookup =
    std::function<std::optional<mpz_class>(const SystemSpec&)>;

// exact fraction left over when rounding binomial(a+b,a)/(a+1) up
using FrupValue = mpq_class;

mpz_class binomial(long a, long b);
mpz_class ceil_div(const mpz_class& num, const mpz_class& den);

mpz_class expected_dim(const SystemSpec& spec);
FrupValue frup(long a, long b);

bool ah_in_range(long d, long n);
AhStatus ah_status(const SystemSpec& spec);

WinVerdict win_check(const SpecializedSpec& spec);
WinVerdict dimbase_check(const SpecializedSpec& spec,
                         const DimLookup& lookup = {});

std::pair<mpz_class, mpz_class> lh_params(long d, long n);
mpz_class delta(long d, long n);
std::pair<mpq_class, mpq_class> fr_values(long d, long n);  // (fr_h, fr_l)

bool th_can_applies(const SystemSpec& spec);
FcResult th_fc_applies(long target_degree, long n, const mpz_class& l);

ConumVerdict conum_verdict(const SystemSpec& spec);
bool prime_frup_vanishing(long d, long n);
bool cover_condition(long d, long n, long k);

std::optional<mpz_class> bridge_k(long d, long n);
UniquenessVerdict waring_verdict(long d, long n);

bool is_prime_long(long d);

const char* to_string(AhTag t);
const char* to_string(WinRule r);
const char* to_string(UniqTag t);
const char* to_string(ConumTag t);
const char* to_string(FcCase c);

}  // namespace nodal
