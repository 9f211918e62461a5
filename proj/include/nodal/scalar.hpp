#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <gmpxx.h>

#include "nodal/rng.hpp"

namespace nodal {

template <class S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

// Residue modulo an odd prime p > 2^20.  Every value carries its modulus;
// mixing moduli in one expression is an error.  A default-constructed value
// is the zero of a not-yet-attached field (needed for matrix resizing); it
// adopts the modulus of the first attached operand it meets.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t v, std::uint64_t p) : v_(v % p), p_(p) {}

  std::uint64_t value() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool attached() const { return p_ != 0; }
  bool is_zero() const { return v_ == 0; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    std::uint64_t p = reconcile(a, b);
    if (p == 0) return Fp();
    std::uint64_t s = a.v_ + b.v_;
    if (s >= p) s -= p;
    return Fp(s, p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    std::uint64_t p = reconcile(a, b);
    if (p == 0) return Fp();
    std::uint64_t s = a.v_ + p - b.v_;
    if (s >= p) s -= p;
    return Fp(s, p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    std::uint64_t p = reconcile(a, b);
    if (p == 0) return Fp();
    unsigned __int128 prod = static_cast<unsigned __int128>(a.v_) * b.v_;
    return Fp(static_cast<std::uint64_t>(prod % p), p);
  }
  Fp operator-() const {
    if (p_ == 0) return Fp();
    return Fp(v_ == 0 ? 0 : p_ - v_, p_);
  }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  Fp inv() const {
    if (p_ == 0 || v_ == 0)
      throw std::domain_error("Fp::inv: zero is not invertible");
    // extended Euclid on (v, p)
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p_),
                 nr = static_cast<std::int64_t>(v_);
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return Fp(static_cast<std::uint64_t>(t), p_);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inv(); }

  friend bool operator==(const Fp& a, const Fp& b) {
    reconcile(a, b);
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

 private:
  static std::uint64_t reconcile(const Fp& a, const Fp& b) {
    if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_)
      throw std::invalid_argument("Fp: mixed moduli " + std::to_string(a.p_) +
                                  " and " + std::to_string(b.p_));
    return a.p_ != 0 ? a.p_ : b.p_;
  }

  std::uint64_t v_ = 0;
  std::uint64_t p_ = 0;
};

using Rat = mpq_class;

// deterministic Miller-Rabin, valid for all 64-bit inputs with this base set
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n == q) return true;
    if (n % q == 0) return false;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % n);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    a %= n;
    while (e) {
      if (e & 1) r = mulmod(r, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return r;
  };
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL,
                          23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// ten 31-bit primes used for the default trial rotation
inline const std::vector<std::uint64_t>& default_primes() {
  static const std::vector<std::uint64_t> primes = {
      2147483647ULL, 2147483629ULL, 2147483587ULL, 2147483579ULL,
      2147483563ULL, 2147483549ULL, 2147483543ULL, 2147483497ULL,
      2147483489ULL, 2147483477ULL};
  return primes;
}

// Field descriptor for prime-field computations.  The modulus must be an odd
// prime above 2^20 so that Hessian and multiplicity computations at desk-scale
// degrees are never hit by small-characteristic artifacts.
struct PrimeField {
  using Scalar = Fp;

  explicit PrimeField(std::uint64_t prime) : p(prime) {
    if (p <= (1ULL << 20))
      throw std::invalid_argument("PrimeField: modulus must exceed 2^20");
    if (p % 2 == 0) throw std::invalid_argument("PrimeField: modulus is even");
    if (!is_prime_u64(p))
      throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) +
                                  " is not prime");
  }

  Fp zero() const { return Fp(0, p); }
  Fp one() const { return Fp(1, p); }
  Fp from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    if (r < 0) r += static_cast<std::int64_t>(p);
    return Fp(static_cast<std::uint64_t>(r), p);
  }
  Fp inv(const Fp& a) const { return a.inv(); }
  bool is_zero(const Fp& a) const { return a.value() % p == 0; }
  Fp random(Rng& rng) const { return Fp(rng.below(p), p); }
  Fp random_nonzero(Rng& rng) const { return Fp(1 + rng.below(p - 1), p); }
  std::string describe() const { return "p=" + std::to_string(p); }
  double size_hint() const { return static_cast<double>(p); }
  std::uint64_t characteristic() const { return p; }

  std::uint64_t p;
};

// Field descriptor for exact rational computations.  Random elements are
// small integers so that cleared-denominator matrices stay compact.
struct RationalField {
  using Scalar = Rat;

  static constexpr std::int64_t kCoordinateBound = 10000;

  Rat zero() const { return Rat(0); }
  Rat one() const { return Rat(1); }
  Rat from_int(std::int64_t v) const {
    return Rat(static_cast<long>(v));
  }
  Rat inv(const Rat& a) const {
    if (a == 0) throw std::domain_error("RationalField: zero inverse");
    return Rat(1) / a;
  }
  bool is_zero(const Rat& a) const { return a == 0; }
  Rat random(Rng& rng) const {
    return Rat(static_cast<long>(
        rng.in_range(-kCoordinateBound, kCoordinateBound)));
  }
  Rat random_nonzero(Rng& rng) const {
    std::int64_t v = 0;
    while (v == 0) v = rng.in_range(-kCoordinateBound, kCoordinateBound);
    return Rat(static_cast<long>(v));
  }
  std::string describe() const { return "rational"; }
  double size_hint() const { return 2.0 * kCoordinateBound; }
  std::uint64_t characteristic() const { return 0; }
};

// differentiation and multiplicity bookkeeping need characteristic zero
// behavior, so the field characteristic must exceed the working degree
template <class Field>
void check_characteristic(const Field& k, long d) {
  std::uint64_t c = k.characteristic();
  if (c != 0 && c <= static_cast<std::uint64_t>(d))
    throw std::invalid_argument(
        "field characteristic must exceed the working degree");
}

inline Rat rat_ratio(long num, long den) {
  if (den == 0) throw std::invalid_argument("rat_ratio: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace nodal

namespace Eigen {

template <>
struct NumTraits<nodal::Fp> {
  using Real = nodal::Fp;
  using NonInteger = nodal::Fp;
  using Nested = nodal::Fp;
  using Literal = nodal::Fp;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 0,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
  static inline int digits10() { return 10; }
};

template <>
struct NumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = mpq_class;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 30,
    MulCost = 30
  };
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
